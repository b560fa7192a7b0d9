#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <utility>

namespace covert {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Combines an ordered list of words into one well-mixed seed. Used to derive
// independent per-trial/per-stream seeds from the experiment master seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t s = 0x243f6a8885a308d3ull;
  for (std::uint64_t w : words) {
    std::uint64_t t = s ^ (w + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2));
    s = splitmix64(t);
  }
  return s;
}

// xoshiro256++ with splitmix64 seeding. Self-contained so that identical
// seeds give identical streams on every platform and standard library;
// std::mt19937_64 would pin the engine but not the distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // +1 or -1 with equal probability.
  int sign() { return (next_u64() >> 63) ? 1 : -1; }

  // Pair of independent standard normals (Marsaglia polar method).
  std::pair<double, double> normal_pair() {
    for (;;) {
      const double u = 2.0 * uniform01() - 1.0;
      const double v = 2.0 * uniform01() - 1.0;
      const double r2 = u * u + v * v;
      if (r2 > 0.0 && r2 < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(r2) / r2);
        return {u * f, v * f};
      }
    }
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    auto [a, b] = normal_pair();
    spare_ = b;
    has_spare_ = true;
    return a;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace covert
