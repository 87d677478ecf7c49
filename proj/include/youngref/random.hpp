#pragma once

// Platform-stable random draws. std::mt19937_64 and std::seed_seq have fully
// specified output, the standard distributions do not, so the mapping from
// raw words to doubles is done here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace youngref {

using Rng = std::mt19937_64;

/// Generator for the substream `stream` of a run seeded with `seed`.
/// `tag` separates unrelated families of substreams within one run.
inline Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint32_t tag = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    tag};
  return Rng(seq);
}

inline Rng seeded_rng(std::uint64_t seed) { return substream(seed, 0, 0); }

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1].
inline double uniform01_open_low(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// exp of a uniform draw on [log lo, log hi], clamped into [lo, hi].
inline double log_uniform(Rng& rng, double lo, double hi) {
  const double v = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  return std::fmin(std::fmax(v, lo), hi);
}

/// Box-Muller; one of the pair is discarded so each call consumes two words.
inline double standard_normal(Rng& rng) {
  const double u1 = uniform01_open_low(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Standard exponential draw.
inline double standard_exponential(Rng& rng) {
  return -std::log(uniform01_open_low(rng));
}

} // namespace youngref
