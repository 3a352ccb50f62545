#include "hqs/emulator.hpp"

#include <algorithm>
#include <stdexcept>

namespace hqs {

void EmulatorConfig::validate() const {
  if (t_step <= 0.0) throw std::invalid_argument("emulator: t-step must be > 0");
  if (n_steps < 0) throw std::invalid_argument("emulator: n-steps must be >= 0");
  if (shots_per_step < 1) throw std::invalid_argument("emulator: shots must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("emulator: n-samples must be >= 1");
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Index into a cumulative distribution: smallest i with u * total < cdf[i].
std::size_t inverse_cdf(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t k0, std::uint64_t k1,
                       std::uint64_t k2, std::uint64_t counter) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ k0);
  h = mix64(h ^ k1);
  h = mix64(h ^ k2);
  h = mix64(h ^ counter);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

BornCounts born_sample(const SectorWaveFunction& psi_a, long n_samples,
                       std::uint64_t seed) {
  const auto& dets = psi_a.sector->dets;
  const auto n = static_cast<std::size_t>(psi_a.amps.size());
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::norm(psi_a.amps[static_cast<Eigen::Index>(i)]);
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw std::invalid_argument("born_sample: zero wavefunction");

  // Domain tag 1 separates Born draws from measurement-shot streams.
  std::vector<long> counts(n, 0);
  for (long s = 0; s < n_samples; ++s) {
    const double u = counter_uniform(seed, 1, 0, 0, static_cast<std::uint64_t>(s));
    ++counts[inverse_cdf(cdf, u)];
  }

  BornCounts out;
  out.n_samples = n_samples;
  for (std::size_t i = 0; i < n; ++i)
    if (counts[i] > 0) {
      out.configs.push_back(dets[i]);
      out.counts.push_back(counts[i]);
    }
  return out;
}

SubspaceSample measure_evolved(const Determinant& x, const Sector& sector,
                               const Propagator& prop, const EmulatorConfig& cfg) {
  cfg.validate();
  const auto ix = sector.find(x);
  if (!ix) throw std::invalid_argument("measure_evolved: x not in sector");
  const auto n = static_cast<Eigen::Index>(sector.dets.size());

  std::unordered_map<Determinant, double, DeterminantHash> first_hit;
  first_hit.emplace(x, 0.0);

  VectorXc e_x = VectorXc::Zero(n);
  e_x[*ix] = {1.0, 0.0};
  std::vector<double> cdf(static_cast<std::size_t>(n));
  for (int j = 0; j <= cfg.n_steps; ++j) {
    const double t = j * cfg.t_step;
    const VectorXc phi = (j == 0) ? e_x : prop.evolve(e_x, t);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += std::norm(phi[i]);
      cdf[static_cast<std::size_t>(i)] = acc;
    }
    for (int s = 0; s < cfg.shots_per_step; ++s) {
      const double u = counter_uniform(cfg.seed, x.w0 ^ 0x2ULL, x.w1,
                                       static_cast<std::uint64_t>(j),
                                       static_cast<std::uint64_t>(s));
      const auto hit = sector.dets[inverse_cdf(cdf, u)];
      auto [it, inserted] = first_hit.emplace(hit, t);
      if (!inserted && t < it->second) it->second = t;
    }
  }

  SubspaceSample out;
  out.x = x;
  out.first_hit = std::move(first_hit);
  out.members.reserve(out.first_hit.size());
  for (const auto& d : sector.dets)
    if (out.first_hit.contains(d)) out.members.push_back(d);
  return out;
}

std::vector<Determinant> exact_support(const Determinant& x, const Sector& sector,
                                       const Propagator& prop,
                                       const std::vector<double>& times,
                                       double eps) {
  const auto ix = sector.find(x);
  if (!ix) throw std::invalid_argument("exact_support: x not in sector");
  const auto n = static_cast<Eigen::Index>(sector.dets.size());
  VectorXc e_x = VectorXc::Zero(n);
  e_x[*ix] = {1.0, 0.0};

  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (double t : times) {
    const VectorXc phi = prop.evolve(e_x, t);
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::norm(phi[i]) > eps) in[static_cast<std::size_t>(i)] = true;
  }
  std::vector<Determinant> out;
  for (Eigen::Index i = 0; i < n; ++i)
    if (in[static_cast<std::size_t>(i)]) out.push_back(sector.dets[i]);
  return out;
}

}  // namespace hqs
