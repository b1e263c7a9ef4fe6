#include "dspsrl/core/rng.hpp"

#include <cmath>
#include <string>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/core/types.hpp"

namespace dspsrl {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

double Rng::gamma(double shape) {
  boost::random::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t purpose_hash(std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

Rng substream(std::uint64_t seed, std::uint64_t run_index, std::string_view purpose) {
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ mix64(run_index + 0x632be59bd9b4e019ULL));
  key = mix64(key ^ purpose_hash(purpose));
  return Rng(key);
}

std::size_t categorical_sample(std::span<const double> probs, Rng& rng) {
  if (probs.empty()) throw ValidationError("categorical_sample: empty probability row");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      throw ValidationError("categorical_sample: invalid entry " + std::to_string(probs[i]) +
                            " at index " + std::to_string(i));
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > kInputTol) {
    throw ValidationError("categorical_sample: row sums to " + std::to_string(total));
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  // u landed in the rounding gap above the accumulated sum.
  return last_positive;
}

}  // namespace dspsrl
