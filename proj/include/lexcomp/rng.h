#ifndef LEXCOMP_RNG_H_
#define LEXCOMP_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace lexcomp {

// Seeded random source. Only the raw 64-bit engine output is used so that
// results are identical across standard library implementations (the
// std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal();

  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  // k distinct indices from [0, n), in selection order. k is clamped to n.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

  // Derives an independent seed from a master seed and a label, so that
  // sub-streams (per grid cell, per item) do not depend on processing order.
  static uint64_t derive(uint64_t seed, std::string_view label);

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a.
uint64_t fnv1a(std::string_view bytes, uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace lexcomp

#endif  // LEXCOMP_RNG_H_
