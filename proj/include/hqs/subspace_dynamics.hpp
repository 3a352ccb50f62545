#pragma once

#include <complex>
#include <vector>

#include "hqs/eigensolver.hpp"
#include "hqs/emulator.hpp"
#include "hqs/fock.hpp"

namespace hqs {

struct TimeGrid {
  double t_max_long = 1000.0;
  double dt_long = 0.1;
  std::vector<double> times;  // t_k = k * dt_long, k = -N..N

  static TimeGrid make(double t_max_long, double dt_long);
};

enum class AccumulationMode { stochastic, exhaustive };

struct CorrelatorSeries {
  TimeGrid grid;
  std::vector<std::complex<double>> loschmidt;
  std::vector<std::complex<double>> g_a;
  std::vector<double> std_error;  // per-time standard error (stochastic mode)
  double e0 = 0.0;
  double a_norm2 = 0.0;
  AccumulationMode mode = AccumulationMode::stochastic;
};

// Hamiltonian restricted to a subspace S, diagonalized once; evaluates the
// restricted evolution phi_x^proj(t) = exp(-i H_proj t)|x> and the local
// estimator series for any x in S, cheaply per time point.
class ProjectedDynamics {
 public:
  ProjectedDynamics(const std::vector<Determinant>& members,
                    const IntegralTable& table);

  // Restricted state at time t, coefficients in members() order.
  VectorXc state(const Determinant& x, double t) const;

  // l(x, t) = sum_y psi_A*(y) <y|phi_x^proj(t)> / psi_A*(x) for each time,
  // evaluated in the eigenbasis with direct phases at every grid point.
  std::vector<std::complex<double>> estimator_series(
      const Determinant& x, const SectorWaveFunction& psi_a,
      const std::vector<double>& times) const;

  const std::vector<Determinant>& members() const { return members_; }

 private:
  Eigen::Index index_of(const Determinant& x) const;

  std::vector<Determinant> members_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd v_;
};

// Single-time local estimator from an explicit restricted state.
std::complex<double> local_estimator(const Determinant& x,
                                     const std::vector<Determinant>& members,
                                     const VectorXc& phi,
                                     const SectorWaveFunction& psi_a);

struct LocalSeries {
  Determinant x;
  std::vector<std::complex<double>> values;  // l(x, t_k) on the grid
};

// Stochastic mode: L_A(t) = sum_x w_x l(x,t), w_x = empirical frequency
// (weights = counts, n_total = sample count); reports per-time standard
// error.  Exhaustive mode: w_x = |psi_A(x)|^2 over the full support
// (weights = probabilities, n_total ignored).
CorrelatorSeries accumulate_loschmidt(const TimeGrid& grid,
                                      const std::vector<LocalSeries>& estimators,
                                      const std::vector<double>& weights,
                                      AccumulationMode mode, long n_total);

// G_A(t_k) = e^{i E0 t_k} * <A^dag A>_0 * L_A(t_k).
void assemble_correlator(CorrelatorSeries& series, double e0, double a_norm2);

}  // namespace hqs
