#include "hqs/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "hqs/emulator.hpp"

namespace hqs {

namespace {

Eigen::MatrixXcd dense_unitary(const SpMat& h, double t) {
  const SpectrumReference sr = full_spectrum(h);
  Eigen::VectorXcd phases(sr.energies.size());
  const std::complex<double> im(0.0, 1.0);
  for (Eigen::Index j = 0; j < sr.energies.size(); ++j)
    phases[j] = std::exp(-im * sr.energies[j] * t);
  return sr.vectors.cast<std::complex<double>>() * phases.asDiagonal() *
         sr.vectors.transpose().cast<std::complex<double>>();
}

}  // namespace

VarianceReport sampling_strategy_variance(const VectorXc& psi_a, const SpMat& h,
                                          double t) {
  if (psi_a.size() != h.rows())
    throw std::invalid_argument("sampling_strategy_variance: size mismatch");
  const Eigen::MatrixXcd u = dense_unitary(h, t);
  const VectorXc u_psi = u.adjoint() * psi_a;  // conj(u_psi[x]) = <psi_A|U|x>

  VarianceReport rep;
  rep.t = t;
  std::complex<double> l_a(0.0, 0.0);
  double second = 0.0;
  for (Eigen::Index x = 0; x < psi_a.size(); ++x) {
    const double px = std::norm(psi_a[x]);
    if (px < 1e-14) continue;
    const std::complex<double> ell = std::conj(u_psi[x]) / std::conj(psi_a[x]);
    l_a += px * ell;
    second += px * std::norm(ell);
  }
  rep.l_a_exact = l_a;
  rep.empirical_var = second - std::norm(l_a);
  rep.bound = 1.0 - std::norm(l_a);
  rep.predicted_var = rep.bound;
  return rep;
}

std::complex<double> alt_estimator_value(std::complex<double> psi_y,
                                         std::complex<double> psi_x,
                                         std::complex<double> amp_yx) {
  if (std::abs(amp_yx) < 1e-300 || std::abs(psi_x) < 1e-300)
    throw std::invalid_argument("alt_estimator_value: vanishing denominator");
  return std::conj(psi_y) / (std::conj(psi_x) * std::conj(amp_yx));
}

VarianceReport alt_estimator_variance(const VectorXc& psi_a, const SpMat& h,
                                      double t, long n_draws, std::uint64_t seed,
                                      double eps_supp) {
  const Eigen::Index n = psi_a.size();
  if (n != h.rows())
    throw std::invalid_argument("alt_estimator_variance: size mismatch");
  const Eigen::MatrixXcd u = dense_unitary(h, t);

  VarianceReport rep;
  rep.t = t;
  rep.support_profile.resize(static_cast<std::size_t>(n));
  for (Eigen::Index y = 0; y < n; ++y) {
    std::size_t dim = 0;
    for (Eigen::Index x = 0; x < n; ++x)
      if (std::norm(u(x, y)) > eps_supp) ++dim;
    rep.support_profile[static_cast<std::size_t>(y)] = dim;
  }

  // Exact enumeration over (x, y) ~ p(x) p(y|x).
  std::complex<double> mean(0.0, 0.0);
  double second = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    const double px = std::norm(psi_a[x]);
    if (px < 1e-14) continue;
    for (Eigen::Index y = 0; y < n; ++y) {
      const double pyx = std::norm(u(y, x));
      if (pyx <= eps_supp) continue;
      const std::complex<double> f =
          alt_estimator_value(psi_a[y], psi_a[x], u(y, x));
      mean += px * pyx * f;
      second += px * pyx * std::norm(f);
    }
  }
  rep.l_a_exact = mean;
  rep.empirical_var = second - std::norm(mean);
  rep.bound = 1.0 - std::norm(mean);

  // Closed form sum_y p(y) dim S_y - |L_A|^2.
  double closed = 0.0;
  for (Eigen::Index y = 0; y < n; ++y)
    closed += std::norm(psi_a[y]) *
              static_cast<double>(rep.support_profile[static_cast<std::size_t>(y)]);
  rep.predicted_var = closed - std::norm(mean);

  if (n_draws > 0) {
    rep.n_draws = n_draws;
    std::vector<double> cdf_x(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) {
      acc += std::norm(psi_a[x]);
      cdf_x[static_cast<std::size_t>(x)] = acc;
    }
    std::complex<double> s1(0.0, 0.0);
    double s2 = 0.0;
    std::vector<double> cdf_y(static_cast<std::size_t>(n));
    for (long d = 0; d < n_draws; ++d) {
      const double ux = counter_uniform(seed, 3, 0, 0, static_cast<std::uint64_t>(d));
      Eigen::Index x = 0;
      while (cdf_x[static_cast<std::size_t>(x)] < ux * acc && x + 1 < n) ++x;
      double accy = 0.0;
      for (Eigen::Index y = 0; y < n; ++y) {
        accy += std::norm(u(y, x));
        cdf_y[static_cast<std::size_t>(y)] = accy;
      }
      const double uy = counter_uniform(seed, 4, 0, 0, static_cast<std::uint64_t>(d));
      Eigen::Index y = 0;
      while (cdf_y[static_cast<std::size_t>(y)] < uy * accy && y + 1 < n) ++y;
      const std::complex<double> f =
          alt_estimator_value(psi_a[y], psi_a[x], u(y, x));
      s1 += f;
      s2 += std::norm(f);
    }
    const std::complex<double> m = s1 / static_cast<double>(n_draws);
    rep.empirical_var = s2 / static_cast<double>(n_draws) - std::norm(m);
  }
  return rep;
}

}  // namespace hqs
