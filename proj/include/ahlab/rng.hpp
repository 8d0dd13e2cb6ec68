#pragma once

#include <cmath>
#include <cstdint>

#include "ahlab/jet.hpp"

namespace ah {

/// Counter-based deterministic generator. Every drawn value is a pure
/// function of (seed, stream, counter), so per-sample streams can be
/// evaluated in any order and still reproduce bit-identically:
///
///   u(seed, stream, ctr) = finalize(finalize(finalize(seed) ^ stream) ^ ctr)
///
/// with finalize the SplitMix64 output mix. Streams are sample indices.
class SampleRng {
 public:
  SampleRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Uniform in [0, 1).
  double uniform() {
    return double(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; consumes two counters.
  double gaussian() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  cplx cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  static uint64_t mix(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  uint64_t next() { return mix(mix(mix(seed_) ^ stream_) ^ ctr_++); }

  uint64_t seed_, stream_;
  uint64_t ctr_ = 0;
};

}  // namespace ah
