#include "hqs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqs {

SpectrumResult fourier_spectrum(const CorrelatorSeries& series, double omega_max) {
  const auto& times = series.grid.times;
  const std::size_t nt = times.size();
  if (nt == 0 || series.g_a.size() != nt)
    throw std::invalid_argument("fourier_spectrum: incomplete series");
  if (nt % 2 == 0 || std::abs(times.front() + times.back()) > 1e-9)
    throw std::invalid_argument("fourier_spectrum: grid must be symmetric about 0");

  const double t = series.grid.t_max_long;
  const double dt = series.grid.dt_long;
  const double dw = std::numbers::pi / t;

  SpectrumResult out;
  out.resolution = dw;
  const auto nbins = static_cast<std::size_t>(std::floor(omega_max / dw)) + 1;
  out.omega.resize(nbins);
  out.magnitude.resize(nbins);
  const std::complex<double> im(0.0, 1.0);
  for (std::size_t m = 0; m < nbins; ++m) {
    const double w = static_cast<double>(m) * dw;
    // Phase recurrence along the grid: e^{i w t_k}, t_k = t_0 + k dt.
    std::complex<double> ph = std::exp(im * w * times.front());
    const std::complex<double> step = std::exp(im * w * dt);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < nt; ++k) {
      acc += ph * series.g_a[k];
      ph *= step;
    }
    out.omega[m] = w;
    out.magnitude[m] = std::abs(acc) * dt / (2.0 * t);
  }
  return out;
}

SpectrumResult extract_peaks(SpectrumResult spec, double threshold) {
  spec.threshold = threshold;
  spec.peaks.clear();
  const auto& mag = spec.magnitude;
  const std::size_t n = mag.size();
  const double dw = spec.resolution;
  for (std::size_t i = 0; i < n; ++i) {
    if (mag[i] <= threshold) continue;
    const bool left_ok = (i == 0) || mag[i] >= mag[i - 1];
    const bool right_ok = (i + 1 == n) || mag[i] >= mag[i + 1];
    if (!left_ok || !right_ok) continue;
    // Skip flat-plateau duplicates: only the first grid point of a plateau.
    if (i > 0 && mag[i] == mag[i - 1]) continue;

    Peak p;
    p.omega = spec.omega[i];
    p.height = mag[i];
    if (i > 0 && i + 1 < n && mag[i - 1] > 0 && mag[i + 1] > 0) {
      const double lm = std::log(mag[i - 1]);
      const double l0 = std::log(mag[i]);
      const double lp = std::log(mag[i + 1]);
      const double denom = lm - 2.0 * l0 + lp;
      if (denom < -1e-12) {
        const double delta = 0.5 * (lm - lp) / denom;
        if (std::abs(delta) <= 1.0) {
          p.omega += delta * dw;
          p.height = std::exp(l0 - 0.25 * (lm - lp) * delta);
          p.interp_refined = true;
        }
      }
    }
    spec.peaks.push_back(p);
  }
  std::sort(spec.peaks.begin(), spec.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.omega < b.omega; });
  return spec;
}

ComparisonReport compare_to_reference(const SpectrumResult& spec,
                                      const SpectrumReference& ref,
                                      const VectorXc& a_psi0, double e0,
                                      double match_tol, double weight_threshold) {
  if (ref.vectors.rows() != a_psi0.size())
    throw std::invalid_argument("compare_to_reference: dimension mismatch");

  // Transition weight per eigenstate, then coalesce degenerate levels.
  struct Gap {
    double gap;
    double weight;
  };
  // Levels closer than one frequency bin cannot produce separate peaks on
  // the omega grid, so they form a single spectral feature: coalesce such
  // clusters, summing weights and reporting the weighted centroid.
  const double coalesce_tol = std::max(1e-8, spec.resolution);
  std::vector<Gap> gaps;
  double last_level = 0.0;  // last raw level of the open cluster
  double wg_acc = 0.0;      // sum of weight * gap over the open cluster
  for (Eigen::Index n = 0; n < ref.energies.size(); ++n) {
    const double g = ref.energies[n] - e0;
    const double w = std::norm(ref.vectors.col(n).cast<std::complex<double>>().dot(a_psi0));
    if (!gaps.empty() && g - last_level < coalesce_tol) {
      auto& back = gaps.back();
      back.weight += w;
      wg_acc += w * g;
      if (back.weight > 0.0) back.gap = wg_acc / back.weight;
    } else {
      gaps.push_back({g, w});
      wg_acc = w * g;
    }
    last_level = g;
  }

  ComparisonReport rep;
  std::vector<bool> peak_used(spec.peaks.size(), false);
  for (const auto& [gap, weight] : gaps) {
    if (weight > weight_threshold / 2.0 && weight < weight_threshold * 2.0)
      rep.straddling_gaps.push_back(gap);
    if (weight <= weight_threshold) continue;
    // Greedy nearest unused peak.
    std::size_t best = spec.peaks.size();
    double best_d = match_tol;
    for (std::size_t i = 0; i < spec.peaks.size(); ++i) {
      if (peak_used[i]) continue;
      const double d = std::abs(spec.peaks[i].omega - gap);
      if (d <= best_d) {
        best = i;
        best_d = d;
      }
    }
    if (best == spec.peaks.size()) {
      rep.missed_gaps.push_back(gap);
    } else {
      peak_used[best] = true;
      rep.matched.push_back({spec.peaks[best].omega, spec.peaks[best].height, gap,
                             weight, best_d});
    }
  }
  for (std::size_t i = 0; i < spec.peaks.size(); ++i)
    if (!peak_used[i]) rep.spurious.push_back(spec.peaks[i]);
  return rep;
}

}  // namespace hqs
