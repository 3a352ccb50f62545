#include "hqs/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace hqs {

namespace {

void fix_phase(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0) v = -v;
}

GroundState lanczos_ground_state(const SpMat& H, const EigensolverOptions& opts) {
  const Eigen::Index n = H.rows();
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;  // beta[k] couples basis[k] and basis[k+1]

  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  // Deterministic start: unit vector at the smallest diagonal element, which
  // has good overlap with the ground state for diagonally dominant H.
  Eigen::Index i0 = 0;
  Eigen::VectorXd diag = H.diagonal();
  diag.minCoeff(&i0);
  v[i0] = 1.0;
  basis.push_back(v);

  GroundState gs;
  for (int k = 0; k < opts.lanczos_max_iter; ++k) {
    Eigen::VectorXd w = H * basis.back();
    alpha.push_back(basis.back().dot(w));
    // Full reorthogonalization (twice) against every stored vector.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    gs.energy = es.eigenvalues()[0];
    // Residual estimate ||H x - E x|| = |beta_m * y_m| for the Ritz pair.
    const double resid = std::abs(b * y[m - 1]);
    if (resid < opts.lanczos_tol || b < 1e-14 || k + 1 == opts.lanczos_max_iter) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < m; ++i) x += y[i] * basis[i];
      x.normalize();
      fix_phase(x);
      gs.vector = std::move(x);
      return gs;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw std::runtime_error("lanczos_ground_state: did not converge");
}

}  // namespace

GroundState ground_state(const SpMat& H, const EigensolverOptions& opts) {
  if (H.rows() != H.cols() || H.rows() == 0)
    throw std::invalid_argument("ground_state: matrix must be square and nonempty");
  if (H.rows() <= opts.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(H)};
    GroundState gs;
    gs.energy = es.eigenvalues()[0];
    gs.vector = es.eigenvectors().col(0);
    fix_phase(gs.vector);
    return gs;
  }
  return lanczos_ground_state(H, opts);
}

SpectrumReference full_spectrum(const SpMat& H, Eigen::Index max_dim) {
  if (H.rows() != H.cols() || H.rows() == 0)
    throw std::invalid_argument("full_spectrum: matrix must be square and nonempty");
  if (H.rows() > max_dim)
    throw std::invalid_argument("full_spectrum: dimension exceeds dense limit");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(H)};
  return {es.eigenvalues(), es.eigenvectors()};
}

Propagator::Propagator(const SpMat& H, Eigen::Index dense_threshold) : H_(H) {
  if (H.rows() != H.cols() || H.rows() == 0)
    throw std::invalid_argument("Propagator: matrix must be square and nonempty");
  if (H.rows() <= dense_threshold) {
    dense_ = true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(H)};
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
  } else {
    hnorm_ = std::max(1.0, H_.coeffs().cwiseAbs().maxCoeff() * 4.0);
  }
}

VectorXc Propagator::krylov_step(const VectorXc& psi, double t) const {
  // One Lanczos-Krylov exponential step; caller keeps |t| * hnorm_ modest.
  constexpr int kMaxDim = 40;
  constexpr double kTol = 1e-12;
  const double nrm = psi.norm();
  if (nrm < 1e-300) return psi;

  std::vector<VectorXc> basis{psi / nrm};
  std::vector<double> alpha, beta;
  VectorXc result;
  for (int k = 0; k < kMaxDim; ++k) {
    VectorXc w = H_ * basis.back();
    alpha.push_back(basis.back().dot(w).real());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    VectorXc y = VectorXc::Zero(m);
    const std::complex<double> im(0.0, 1.0);
    for (Eigen::Index j = 0; j < m; ++j) {
      const std::complex<double> ph = std::exp(-im * es.eigenvalues()[j] * t);
      y += ph * es.eigenvectors().col(j)[0] * es.eigenvectors().col(j).cast<std::complex<double>>();
    }
    // Error estimate: weight leaking into the next Krylov vector.
    const double err = std::abs(b * y[m - 1] * t);
    if (err < kTol || b < 1e-14 || k + 1 == kMaxDim) {
      result = VectorXc::Zero(psi.size());
      for (Eigen::Index i = 0; i < m; ++i) result += y[i] * basis[i];
      return result * nrm;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return result;
}

VectorXc Propagator::evolve(const VectorXc& psi0, double t) const {
  if (psi0.size() != H_.rows())
    throw std::invalid_argument("Propagator::evolve: size mismatch");
  if (dense_) {
    VectorXc c = evecs_.transpose() * psi0;
    const std::complex<double> im(0.0, 1.0);
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::exp(-im * evals_[j] * t);
    return evecs_ * c;
  }
  if (t == 0.0) return psi0;
  // Split into steps with |dt| * hnorm_ <= ~25 so a <=40-dim Krylov space
  // reaches the 1e-12 per-step target.
  const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * hnorm_ / 25.0)));
  const double dt = t / nsteps;
  VectorXc psi = psi0;
  for (int s = 0; s < nsteps; ++s) psi = krylov_step(psi, dt);
  return psi;
}

std::complex<double> SpectralSeries::at(double t) const {
  std::complex<double> acc(0.0, 0.0);
  const std::complex<double> im(0.0, 1.0);
  for (Eigen::Index j = 0; j < lambda.size(); ++j)
    acc += coef[j] * std::exp(-im * lambda[j] * t);
  return acc;
}

SpectralSeries make_spectral_series(const Eigen::VectorXd& lambda,
                                    const Eigen::MatrixXd& V, const VectorXc& u,
                                    const VectorXc& v) {
  SpectralSeries s;
  s.lambda = lambda;
  VectorXc a = V.transpose() * u;
  VectorXc b = V.transpose() * v;
  s.coef = a.conjugate().cwiseProduct(b);
  return s;
}

}  // namespace hqs
