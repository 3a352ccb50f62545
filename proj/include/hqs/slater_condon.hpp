#pragma once

#include <Eigen/SparseCore>

#include "hqs/fcidump.hpp"
#include "hqs/fock.hpp"

namespace hqs {

using SpMat = Eigen::SparseMatrix<double>;

/// <a|H|b> for determinants in the same sector, including e_core on the
/// diagonal. Zero beyond double excitations.
double slater_condon_element(const IntegralTable& t, const Determinant& a,
                             const Determinant& b);

/// Hamiltonian on an ordered, duplicate-free determinant list (full sector
/// or a projected subspace). Entries below 1e-14 are dropped.
SpMat build_hamiltonian(const IntegralTable& t, const std::vector<Determinant>& dets);

}  // namespace hqs
