#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hqs/eigensolver.hpp"

namespace hqs {

struct VarianceReport {
  double t = 0.0;
  long n_draws = 0;
  double empirical_var = 0.0;  // exhaustive enumeration (or MC when n_draws > 0)
  double predicted_var = 0.0;  // closed form
  double bound = 0.0;          // 1 - |L_A|^2 sampling-strategy bound
  std::vector<std::size_t> support_profile;  // dim S_y per basis index
  std::complex<double> l_a_exact;
};

// Sampling-strategy estimator l(x) = <psi_A|U(t)|x> / <psi_A|x>: enumerates
// the exact variance over x ~ |psi_A(x)|^2 and checks it against the closed
// form 1 - |L_A|^2.  Dense-oracle path only.
VarianceReport sampling_strategy_variance(const VectorXc& psi_a, const SpMat& h,
                                          double t);

// Alternative estimator f(y,x) = psi_A*(y) / (psi_A*(x) <y|U(t)|x>*),
// unbiased under x ~ |psi_A(x)|^2, y ~ |<y|U(t)|x>|^2.
std::complex<double> alt_estimator_value(std::complex<double> psi_y,
                                         std::complex<double> psi_x,
                                         std::complex<double> amp_yx);

// Exact variance of f by enumeration over (x, y) pairs, the closed form
// sum_y p(y) dim S_y - |L_A|^2 with support indicator threshold eps_supp,
// and (when n_draws > 0) an empirical Monte-Carlo variance.
VarianceReport alt_estimator_variance(const VectorXc& psi_a, const SpMat& h,
                                      double t, long n_draws = 0,
                                      std::uint64_t seed = 0,
                                      double eps_supp = 1e-12);

}  // namespace hqs
