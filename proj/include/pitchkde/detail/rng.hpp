#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace pitchkde::detail {

// Deterministic RNG built on the standardized mt19937_64 engine. All value
// derivations (uniforms, gaussians, bounded ints, shuffles) are spelled out
// here instead of going through std distributions, whose output is
// implementation-defined and would break the byte-identical-output contract
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound <= 1) return 0;
    for (;;) {
      std::uint64_t x = gen_();
      __uint128_t m = static_cast<__uint128_t>(x) * bound;
      auto low = static_cast<std::uint64_t>(m);
      if (low >= bound || low >= static_cast<std::uint64_t>(-bound) % bound)
        return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Standard normal via Box-Muller; the sine mate is cached.
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Fisher-Yates with the bounded-int draw above.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Mixes several integers into one sub-stream seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0, std::uint64_t d = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t s = mix(a);
  s = mix(s ^ mix(b + 1));
  s = mix(s ^ mix(c + 2));
  s = mix(s ^ mix(d + 3));
  return s;
}

}  // namespace pitchkde::detail
