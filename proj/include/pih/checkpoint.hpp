#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pih/nn.hpp"

namespace pih {

/// One serialized tensor: name, shape and 64-bit payload.
struct NamedTensor {
  std::string name;
  std::vector<int64_t> shape;
  std::vector<double> data;
};

/// Binary container: magic "PIHCKPT1", u32 format version, then per block
/// name, shape and little-endian 64-bit floats. Round-trips bit-exactly.
void save_tensors(const std::string& path, const std::vector<NamedTensor>& tensors);
std::vector<NamedTensor> load_tensors(const std::string& path);

template <class S>
NamedTensor to_named_tensor(const nn::ParamRef<S>& p) {
  NamedTensor t;
  t.name = p.name;
  t.shape = {p.value->rows(), p.value->cols()};
  t.data.resize(static_cast<size_t>(p.value->size()));
  for (Eigen::Index i = 0; i < p.value->size(); ++i)
    t.data[static_cast<size_t>(i)] = static_cast<double>((*p.value)(i));
  return t;
}

template <class S>
void assign_from_named_tensor(const NamedTensor& t, nn::ParamRef<S>& p) {
  if (t.shape.size() != 2 || t.shape[0] != p.value->rows() || t.shape[1] != p.value->cols())
    throw std::runtime_error("checkpoint: shape mismatch for " + t.name);
  for (Eigen::Index i = 0; i < p.value->size(); ++i)
    (*p.value)(i) = static_cast<S>(t.data[static_cast<size_t>(i)]);
}

}  // namespace pih
