#pragma once

#include <string>
#include <vector>

#include "hqs/eigensolver.hpp"
#include "hqs/subspace_dynamics.hpp"

namespace hqs {

struct Peak {
  double omega = 0.0;   // Hartree
  double height = 0.0;  // normalized |G~| at the refined position
  bool interp_refined = false;
};

struct SpectrumResult {
  std::vector<double> omega;      // m * pi/T, m = 0..M
  std::vector<double> magnitude;  // |G~(omega_m)|
  std::vector<Peak> peaks;
  double threshold = 5e-3;
  double resolution = 0.0;  // pi/T
};

// Discrete Fourier transform G~(w_m) = (dt/2T) * sum_k e^{i w_m t_k} G(t_k)
// on w_m = m*pi/T over [0, omega_max]; rectangular window.  With this
// normalization an isolated mode of weight p gives a peak height -> p.
SpectrumResult fourier_spectrum(const CorrelatorSeries& series,
                                double omega_max = 4.0);

// Local maxima above threshold, refined by 3-point parabolic interpolation
// in log-magnitude.
SpectrumResult extract_peaks(SpectrumResult spec, double threshold = 5e-3);

struct PeakMatch {
  double omega_peak = 0.0;
  double height = 0.0;
  double reference_gap = 0.0;  // E_n - E0
  double reference_weight = 0.0;
  double abs_error = 0.0;
};

struct ComparisonReport {
  std::vector<PeakMatch> matched;
  std::vector<double> missed_gaps;      // weighted reference gaps with no peak
  std::vector<Peak> spurious;           // peaks with no reference partner
  std::vector<double> straddling_gaps;  // weight within a factor 2 of threshold
};

// Reference gaps E_n - e0 with summed transition weight |<E_n|A|psi0>|^2
// (grouped over degenerate levels) above `weight_threshold`, matched greedily
// to extracted peaks by nearest frequency within `match_tol`.  `e0` is the
// ground-state energy of the unperturbed sector (which may differ from
// ref.energies[0] when the excitation changes sector).
ComparisonReport compare_to_reference(const SpectrumResult& spec,
                                      const SpectrumReference& ref,
                                      const VectorXc& a_psi0, double e0,
                                      double match_tol,
                                      double weight_threshold = 5e-3);

}  // namespace hqs
