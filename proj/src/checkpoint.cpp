#include "pih/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace pih {

namespace {

constexpr char kMagic[8] = {'P', 'I', 'H', 'C', 'K', 'P', 'T', '1'};
constexpr uint32_t kVersion = 1;

template <class T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint: truncated file");
  return v;
}

}  // namespace

void save_tensors(const std::string& path, const std::vector<NamedTensor>& tensors) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<uint64_t>(tensors.size()));
  for (const NamedTensor& t : tensors) {
    write_pod(out, static_cast<uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    write_pod(out, static_cast<uint32_t>(t.shape.size()));
    uint64_t count = 1;
    for (int64_t d : t.shape) {
      write_pod(out, static_cast<uint64_t>(d));
      count *= static_cast<uint64_t>(d);
    }
    if (count != t.data.size()) throw std::runtime_error("checkpoint: shape/data mismatch");
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

std::vector<NamedTensor> load_tensors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  const uint32_t version = read_pod<uint32_t>(in);
  if (version != kVersion)
    throw std::runtime_error("checkpoint: unsupported format version " +
                             std::to_string(version));
  const uint64_t n = read_pod<uint64_t>(in);
  std::vector<NamedTensor> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    NamedTensor t;
    const uint32_t name_len = read_pod<uint32_t>(in);
    t.name.resize(name_len);
    in.read(t.name.data(), name_len);
    const uint32_t ndim = read_pod<uint32_t>(in);
    uint64_t count = 1;
    for (uint32_t d = 0; d < ndim; ++d) {
      const uint64_t dim = read_pod<uint64_t>(in);
      t.shape.push_back(static_cast<int64_t>(dim));
      count *= dim;
    }
    t.data.resize(count);
    in.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint: truncated tensor " + t.name);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace pih
