#pragma once

// xoshiro256** 1.0 (Blackman & Vigna) seeded through splitmix64. Normal
// variates use Box-Muller on our own uniforms so that seeded runs are
// reproducible across standard libraries.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace flatrange {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    for (auto& s : s_) s = splitmix64(seed);
  }

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Xoshiro256 for_trial(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t mix = seed;
    const std::uint64_t a = splitmix64(mix);
    mix = a ^ (index * 0xd1b54a32d192ed03ULL);
    return Xoshiro256(splitmix64(mix));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> unit_complex() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

  /// E|z|^2 = sigma^2.
  std::complex<double> complex_normal(double sigma) {
    const double x = normal();
    const double y = normal();
    return sigma * std::numbers::sqrt2 / 2.0 * std::complex<double>{x, y};
  }

  int below(int n) { return static_cast<int>(uniform() * n); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace flatrange
