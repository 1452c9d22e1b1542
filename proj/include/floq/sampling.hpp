#pragma once

// Deterministic splittable random streams and shot-noise emulation.
//
// RngStream wraps mt19937_64 with a hand-rolled uniform(0,1) so every result
// is bit-reproducible across platforms for a given seed. Streams fork via
// splitmix64 so parallel consumers never share state. Paired evaluations in
// optimizers clone one stream to get common random numbers: shot noise then
// cancels in differences instead of swamping them.
//
// shots = 0 is the exact-expectation sentinel throughout the library.

#include <cstdint>
#include <random>

#include "floq/operators.hpp"
#include "floq/register.hpp"
#include "floq/state.hpp"

namespace floq {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(mix_(seed)), seed_(seed) {}

  // Uniform in [0,1) with 53-bit resolution, identical on every platform.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t raw() { return eng_(); }

  // Independent child stream; advances this stream by one draw.
  RngStream fork() { return RngStream(eng_()); }

  // Independent child stream derived from a tag; this stream is unchanged
  // and the same tag always yields the same child.
  RngStream child(std::uint64_t tag) const {
    return RngStream(seed_ ^ mix_(tag));
  }

  // Exact copy: both streams produce the same draws (common random numbers).
  RngStream clone() const { return *this; }

 private:
  static std::uint64_t mix_(std::uint64_t x) {
    // splitmix64 finalizer: decorrelates sequential seeds/tags.
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

struct SampleResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Bernoulli estimate of |amps[flat_index]|^2 from `shots` draws.
// std_error = sqrt(p_hat (1 - p_hat) / shots). shots must be >= 1.
SampleResult sample_projector(const StateVector& state, int flat_index,
                              int shots, RngStream& rng);

// Spectral sampling of a hermitian observable: eigendecompose once (cached by
// matrix content), draw eigenvalues with Born probabilities, return the sample
// mean and its standard error. shots = 0 returns expectation() exactly.
SampleResult sample_observable(const StateVector& state,
                               const DenseOperator& obs, int shots,
                               RngStream& rng);

}  // namespace floq
