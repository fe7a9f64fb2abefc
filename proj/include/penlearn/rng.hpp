#ifndef PENLEARN_RNG_HPP
#define PENLEARN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

namespace penlearn {

// Splitmix64 generator. Used everywhere a seeded stream is needed so that
// outputs are bit-identical across platforms and standard library versions
// (std::uniform_real_distribution and friends are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // rejection sampling to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Standard normal via Box-Muller (no caching, so the stream position is a
  // simple function of the number of calls).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::uint64_t state_;
};

// FNV-1a over raw bytes; stable across platforms.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t stable_hash(std::uint64_t h, std::uint64_t v) {
  return fnv1a64(&v, sizeof v, h);
}

inline std::uint64_t stable_hash(std::uint64_t h, std::string_view s) {
  return fnv1a64(s.data(), s.size(), h);
}

template <typename First, typename Second, typename... Rest>
std::uint64_t stable_hash(std::uint64_t h, First first, Second second, Rest... rest) {
  return stable_hash(stable_hash(h, first), second, rest...);
}

}  // namespace penlearn

#endif
