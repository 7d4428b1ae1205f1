#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tablin {

// Seeded generator whose bounded draws and sampling are defined here rather
// than by the standard distributions, whose output differs between standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  // k distinct indices from [0, n), returned in increasing order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream from a base seed and a salt.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view salt, std::uint64_t extra = 0);

}  // namespace tablin
