#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <boost/random/mersenne_twister.hpp>

namespace dspsrl {

/// Deterministic random stream.
///
/// The engine is the 64-bit Mersenne Twister and every derived variate is
/// produced by Boost.Random or by explicit bit manipulation here, never by the
/// implementation-defined <random> distributions, so a stream is a pure
/// function of its seed.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  double normal();
  /// Gamma(shape, 1).
  double gamma(double shape);

 private:
  boost::random::mt19937_64 engine_;
};

/// Mixes a 64-bit value (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

/// Stable 64-bit hash of a purpose label (FNV-1a).
std::uint64_t purpose_hash(std::string_view purpose);

Rng seeded_rng(std::uint64_t seed);

/// Independent sub-stream keyed by (seed, run_index, purpose). Streams for
/// different purposes never share state, so adding a consumer of randomness
/// does not shift anybody else's draws.
Rng substream(std::uint64_t seed, std::uint64_t run_index, std::string_view purpose);

/// Draws index i with probability probs[i]. Throws ValidationError on a
/// negative entry or a row whose sum is off by more than kInputTol.
std::size_t categorical_sample(std::span<const double> probs, Rng& rng);

}  // namespace dspsrl
