#pragma once

#include <cstdint>

namespace mrperf::rng {

// Deterministic counter-based random stream. Draws are keyed by a chain of
// 64-bit words, so adding streams never perturbs existing ones.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t key(std::uint64_t a, std::uint64_t b);
std::uint64_t key(std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t key(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);
// Uniform in (0, 1).
double uniform(std::uint64_t k);
// Standard normal via Box-Muller on two decorrelated uniforms.
double standard_normal(std::uint64_t k);

}  // namespace mrperf::rng
