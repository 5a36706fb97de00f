#include "pih/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace pih {

std::string Rng::serialize() const {
  std::ostringstream os;
  os << gen_;
  return os.str();
}

void Rng::deserialize(const std::string& s) {
  std::istringstream is(s);
  is >> gen_;
  if (is.fail()) throw std::runtime_error("Rng::deserialize: malformed state string");
}

}  // namespace pih
