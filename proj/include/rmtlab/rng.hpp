#pragma once

#include <array>
#include <cstdint>

namespace rmtlab {

/// Stateless 64-bit finalizer (splitmix64 step). Good avalanche, cheap.
std::uint64_t mix64(std::uint64_t z);

/// Seed for replicate `index` of a run keyed by `master`. Pure function, so
/// Monte Carlo loops may hand out replicates in any order or across threads
/// and still reproduce the sequential run exactly.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

/// xoshiro256++ with splitmix64 seeding plus the variate generators the
/// samplers need. Everything is deterministic given the seed; no global
/// state, one instance per replicate stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform01();
  /// Uniform on (0, 1).
  double uniform_open01();

  /// Standard normal (Marsaglia polar, second variate cached).
  double normal();

  /// Gamma(shape, scale 1) by Marsaglia-Tsang squeeze; shape < 1 handled by
  /// the boost Gamma(shape+1) * U^(1/shape).
  double gamma(double shape);

  /// chi-distributed with `dof` degrees of freedom (dof > 0, not necessarily
  /// integer): sqrt(2 * Gamma(dof/2)).
  double chi(double dof);

 private:
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace rmtlab
