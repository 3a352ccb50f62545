#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hqs/eigensolver.hpp"
#include "hqs/fock.hpp"

namespace hqs {

struct EmulatorConfig {
  double t_step = 1.0;        // spacing between measurement rounds (a.u.)
  int n_steps = 10;           // rounds at t = 0, t_step, ..., n_steps * t_step
  int shots_per_step = 4096;  // projective measurements per round
  std::uint64_t seed = 0;
  long n_samples = 1000000;   // Born-sampled configurations from |psi_A|^2

  void validate() const;  // throws std::invalid_argument
};

// Counter-based RNG: a pure hash of (seed, key words, counter) to a uniform
// double in [0,1).  Streams are independent of evaluation order, so sampling
// is reproducible under any parallel schedule and prefix-stable in the
// counter (adding shots never changes earlier draws).
double counter_uniform(std::uint64_t seed, std::uint64_t k0, std::uint64_t k1,
                       std::uint64_t k2, std::uint64_t counter);

struct BornCounts {
  std::vector<Determinant> configs;  // unique, in sector order
  std::vector<long> counts;          // empirical counts, same order
  long n_samples = 0;
};

// n_samples i.i.d. draws from |psi_A(x)|^2 via inverse CDF over the sector
// ordering; deterministic given seed, prefix-stable in the draw index.
BornCounts born_sample(const SectorWaveFunction& psi_a, long n_samples,
                       std::uint64_t seed);

struct SubspaceSample {
  Determinant x;
  std::vector<Determinant> members;  // deduplicated, sector order, contains x
  std::unordered_map<Determinant, double, DeterminantHash> first_hit;  // time
};

// Algorithm: for each round time t_j = j * t_step, evolve |x> under the
// full-sector propagator and draw shots_per_step projective measurements in
// the computational basis; S_x is the union over rounds (plus x itself).
SubspaceSample measure_evolved(const Determinant& x, const Sector& sector,
                               const Propagator& prop, const EmulatorConfig& cfg);

// Noise-free idealization used as a test oracle: every y with
// |<y|U(t)|x>|^2 > eps at some requested time.
std::vector<Determinant> exact_support(const Determinant& x, const Sector& sector,
                                       const Propagator& prop,
                                       const std::vector<double>& times,
                                       double eps = 1e-12);

}  // namespace hqs
