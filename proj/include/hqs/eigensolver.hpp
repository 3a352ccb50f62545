#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hqs/slater_condon.hpp"

namespace hqs {

using VectorXc = Eigen::VectorXcd;

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;  // real, phase-fixed: largest-|.| entry positive
};

struct EigensolverOptions {
  Eigen::Index dense_threshold = 2000;  // dense path at or below this dimension
  double lanczos_tol = 1e-8;            // residual tolerance on the lowest Ritz pair
  int lanczos_max_iter = 500;
};

// Lowest eigenpair of a real symmetric sparse matrix.  Dense eigendecomposition
// up to `dense_threshold`, Lanczos with full reorthogonalization above it.
GroundState ground_state(const SpMat& H, const EigensolverOptions& opts = {});

struct SpectrumReference {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // columns match energies
};

// Complete eigendecomposition (dense).  Throws std::invalid_argument above
// `max_dim` rows.
SpectrumReference full_spectrum(const SpMat& H, Eigen::Index max_dim = 20000);

// Time evolution psi(t) = exp(-i H t) psi(0) for real symmetric sparse H.
// Small systems cache a dense eigendecomposition; large systems use adaptive
// short-step Krylov (Lanczos) propagation.
class Propagator {
 public:
  explicit Propagator(const SpMat& H, Eigen::Index dense_threshold = 2000);

  // Evolve from psi0 by time t (t may be negative).
  VectorXc evolve(const VectorXc& psi0, double t) const;

  bool dense() const { return dense_; }

 private:
  VectorXc krylov_step(const VectorXc& psi, double t) const;

  SpMat H_;
  bool dense_ = false;
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
  double hnorm_ = 1.0;  // crude scale estimate for step-size control
};

// Eigendecomposition-based evaluator for many time points on one subspace:
// given V, lambda and two vectors u, v it returns f(t) = u^dag e^{-i H t} v
// cheaply per time point.
struct SpectralSeries {
  Eigen::VectorXd lambda;
  VectorXc coef;  // conj(V^dag u)_j * (V^dag v)_j, so f(t) = sum_j coef_j e^{-i lambda_j t}

  std::complex<double> at(double t) const;
};

SpectralSeries make_spectral_series(const Eigen::VectorXd& lambda,
                                    const Eigen::MatrixXd& V, const VectorXc& u,
                                    const VectorXc& v);

}  // namespace hqs
