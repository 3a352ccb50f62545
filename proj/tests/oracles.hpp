// Independent reference implementations used to cross-check the library.
// These deliberately avoid the production code paths: the Hamiltonian is
// assembled operator-by-operator from ladder actions instead of the
// Slater-Condon rules, and propagation goes through a Taylor expansion of
// exp(-iHt) instead of the eigendecomposition/Krylov code.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hqs/fcidump.hpp"
#include "hqs/fock.hpp"

namespace oracle {

using hqs::Determinant;
using hqs::IntegralTable;
using hqs::LadderKind;

// <a| c+_p c_q |b> accumulated over a full determinant list: returns the
// dense matrix of the number-conserving one-body operator.
inline Eigen::MatrixXd one_body_matrix(const std::vector<Determinant>& dets,
                                       int p, int q) {
  const auto n = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    auto r1 = hqs::apply_ladder(dets[b], LadderKind::annihilate, q);
    if (!r1) continue;
    auto r2 = hqs::apply_ladder(r1->det, LadderKind::create, p);
    if (!r2) continue;
    for (Eigen::Index a = 0; a < n; ++a)
      if (dets[a] == r2->det) m(a, b) += r1->sign * r2->sign;
  }
  return m;
}

// Dense Hamiltonian built term by term from the second-quantized form
// H = E_c + sum h1(p,q) c+_ps c_qs + 1/2 sum (pq|rs) c+_ps c+_rt c_st c_qs.
inline Eigen::MatrixXd hamiltonian(const IntegralTable& t,
                                   const std::vector<Determinant>& dets) {
  const auto n = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * t.e_core;
  auto find = [&](const Determinant& d) -> Eigen::Index {
    for (Eigen::Index a = 0; a < n; ++a)
      if (dets[a] == d) return a;
    return -1;
  };
  for (int p = 0; p < t.norb; ++p)
    for (int q = 0; q < t.norb; ++q) {
      if (t.one(p, q) == 0.0) continue;
      for (int s = 0; s < 2; ++s)
        for (Eigen::Index b = 0; b < n; ++b) {
          auto r1 = hqs::apply_ladder(dets[b], LadderKind::annihilate, 2 * q + s);
          if (!r1) continue;
          auto r2 = hqs::apply_ladder(r1->det, LadderKind::create, 2 * p + s);
          if (!r2) continue;
          const Eigen::Index a = find(r2->det);
          if (a >= 0) h(a, b) += t.one(p, q) * r1->sign * r2->sign;
        }
    }
  for (int p = 0; p < t.norb; ++p)
    for (int q = 0; q < t.norb; ++q)
      for (int r = 0; r < t.norb; ++r)
        for (int s = 0; s < t.norb; ++s) {
          const double v = t.two(p, q, r, s);
          if (v == 0.0) continue;
          for (int sig = 0; sig < 2; ++sig)
            for (int tau = 0; tau < 2; ++tau)
              for (Eigen::Index b = 0; b < n; ++b) {
                auto r1 =
                    hqs::apply_ladder(dets[b], LadderKind::annihilate, 2 * q + sig);
                if (!r1) continue;
                auto r2 =
                    hqs::apply_ladder(r1->det, LadderKind::annihilate, 2 * s + tau);
                if (!r2) continue;
                auto r3 = hqs::apply_ladder(r2->det, LadderKind::create, 2 * r + tau);
                if (!r3) continue;
                auto r4 = hqs::apply_ladder(r3->det, LadderKind::create, 2 * p + sig);
                if (!r4) continue;
                const Eigen::Index a = find(r4->det);
                if (a >= 0)
                  h(a, b) +=
                      0.5 * v * r1->sign * r2->sign * r3->sign * r4->sign;
              }
        }
  return h;
}

// exp(-iHt) by scaling-and-squaring Taylor summation on the dense matrix.
inline Eigen::MatrixXcd expih(const Eigen::MatrixXd& h, double t) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXcd a = std::complex<double>(0.0, -t) * h.cast<std::complex<double>>();
  int squarings = 0;
  double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.5) {
    a *= 0.5;
    nrm *= 0.5;
    ++squarings;
  }
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// Deterministic pseudo-random integral table with the full 8-fold
// permutation symmetry; `scale` controls off-diagonal strength.
inline IntegralTable random_table(int norb, int nelec, unsigned seed,
                                  double scale = 0.2) {
  IntegralTable t;
  t.norb = norb;
  t.nelec = nelec;
  t.ms2 = nelec % 2;
  t.h1.assign(static_cast<std::size_t>(norb) * norb, 0.0);
  t.h2.assign(static_cast<std::size_t>(norb) * norb * norb * norb, 0.0);
  unsigned state = seed * 2654435761u + 12345u;
  auto rnd = [&]() {
    state = state * 1664525u + 1013904223u;
    return (static_cast<double>(state >> 8) / 16777216.0) - 0.5;
  };
  for (int p = 0; p < norb; ++p)
    for (int q = 0; q <= p; ++q)
      t.set_one(p, q, p == q ? -1.0 + 0.3 * rnd() : scale * rnd());
  for (int p = 0; p < norb; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= (r == p ? q : r); ++s)
          t.set_two(p, q, r, s, scale * rnd());
  t.e_core = 0.5 + rnd();
  return t;
}

}  // namespace oracle
