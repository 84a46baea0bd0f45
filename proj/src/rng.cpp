#include "mrperf/rng.hpp"

#include <cmath>

namespace mrperf {

namespace rng {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t key(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }
std::uint64_t key(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(key(a, b) ^ c);
}
std::uint64_t key(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return mix64(key(a, b, c) ^ d);
}

double uniform(std::uint64_t k) {
  // 53 random bits into (0, 1); never returns exactly 0.
  const std::uint64_t bits = mix64(k) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::uint64_t k) {
  const double u1 = uniform(key(k, 0x5bd1e995ULL));
  const double u2 = uniform(key(k, 0xc2b2ae35ULL));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace rng

}  // namespace mrperf
