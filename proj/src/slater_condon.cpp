#include "hqs/slater_condon.hpp"

#include <stdexcept>
#include <vector>

namespace hqs {

namespace {

// Spin-orbitals occupied in d, ascending.
void occupied_list(const Determinant& d, int n_so, std::vector<int>& out) {
  out.clear();
  for (int p = 0; p < n_so; ++p)
    if (d.occupied(p)) out.push_back(p);
}

// Spin-orbitals set in mask = a XOR b that are occupied in `which`.
void diff_list(const Determinant& a, const Determinant& b, const Determinant& which,
               int n_so, std::vector<int>& out) {
  out.clear();
  for (int p = 0; p < n_so; ++p)
    if (a.occupied(p) != b.occupied(p) && which.occupied(p)) out.push_back(p);
}

int ladder_chain_sign(Determinant d, std::initializer_list<std::pair<LadderKind, int>> ops) {
  int sign = 1;
  for (auto [kind, p] : ops) {
    auto r = apply_ladder(d, kind, p);
    if (!r) throw std::logic_error("invalid ladder chain in Slater-Condon sign");
    sign *= r->sign;
    d = r->det;
  }
  return sign;
}

}  // namespace

double slater_condon_element(const IntegralTable& t, const Determinant& a,
                             const Determinant& b) {
  const int n_so = 2 * t.norb;
  if (a.count_up() != b.count_up() || a.count_down() != b.count_down())
    throw std::invalid_argument("slater_condon_element: determinants in different sectors");

  thread_local std::vector<int> occ, holes, parts;
  const int ndiff = [&] {
    int n = std::popcount(a.w0 ^ b.w0) + std::popcount(a.w1 ^ b.w1);
    return n;
  }();
  if (ndiff > 4) return 0.0;

  auto spat = [](int p) { return p >> 1; };
  auto spin = [](int p) { return p & 1; };

  if (ndiff == 0) {
    occupied_list(a, n_so, occ);
    double e = t.e_core;
    for (int p : occ) e += t.one(spat(p), spat(p));
    for (int p : occ)
      for (int q : occ) {
        e += 0.5 * t.two(spat(p), spat(p), spat(q), spat(q));
        if (spin(p) == spin(q)) e -= 0.5 * t.two(spat(p), spat(q), spat(q), spat(p));
      }
    return e;
  }

  if (ndiff == 2) {
    diff_list(a, b, b, n_so, holes);   // occupied in b only
    diff_list(a, b, a, n_so, parts);   // occupied in a only
    const int i = holes[0], k = parts[0];
    if (spin(i) != spin(k)) return 0.0;
    double v = t.one(spat(i), spat(k));
    occupied_list(b, n_so, occ);
    for (int q : occ) {
      if (q == i) continue;
      v += t.two(spat(i), spat(k), spat(q), spat(q));
      if (spin(q) == spin(i)) v -= t.two(spat(i), spat(q), spat(q), spat(k));
    }
    const int sign = ladder_chain_sign(
        b, {{LadderKind::annihilate, i}, {LadderKind::create, k}});
    return sign * v;
  }

  // ndiff == 4: double excitation (i,j) -> (k,l), all ascending.
  diff_list(a, b, b, n_so, holes);
  diff_list(a, b, a, n_so, parts);
  const int i = holes[0], j = holes[1], k = parts[0], l = parts[1];
  double v = 0.0;
  if (spin(i) == spin(k) && spin(j) == spin(l))
    v += t.two(spat(i), spat(k), spat(j), spat(l));
  if (spin(i) == spin(l) && spin(j) == spin(k))
    v -= t.two(spat(i), spat(l), spat(j), spat(k));
  if (v == 0.0) return 0.0;
  const int sign = ladder_chain_sign(b, {{LadderKind::annihilate, i},
                                         {LadderKind::annihilate, j},
                                         {LadderKind::create, l},
                                         {LadderKind::create, k}});
  return sign * v;
}

SpMat build_hamiltonian(const IntegralTable& t, const std::vector<Determinant>& dets) {
  const auto n = static_cast<Eigen::Index>(dets.size());
  if (n == 0) throw std::invalid_argument("build_hamiltonian: empty determinant list");
  const int n_so = 2 * t.norb;

  std::unordered_map<Determinant, Eigen::Index, DeterminantHash> index;
  index.reserve(dets.size() * 2);
  const int nu = dets[0].count_up(), nd = dets[0].count_down();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dets[i].count_up() != nu || dets[i].count_down() != nd)
      throw std::invalid_argument("build_hamiltonian: determinants span multiple sectors");
    if (!index.emplace(dets[i], i).second)
      throw std::invalid_argument("build_hamiltonian: duplicate determinant");
  }

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<int> occ, vir;
  for (Eigen::Index ib = 0; ib < n; ++ib) {
    const Determinant& d = dets[ib];
    double diag = slater_condon_element(t, d, d);
    trip.emplace_back(ib, ib, diag);

    occ.clear();
    vir.clear();
    for (int p = 0; p < n_so; ++p) (d.occupied(p) ? occ : vir).push_back(p);

    auto visit = [&](Determinant ex) {
      auto it = index.find(ex);
      if (it == index.end() || it->second <= ib) return;
      double v = slater_condon_element(t, ex, d);
      if (std::abs(v) >= 1e-14) {
        trip.emplace_back(it->second, ib, v);
        trip.emplace_back(ib, it->second, v);
      }
    };

    for (int p : occ)
      for (int q : vir) {
        if ((p & 1) != (q & 1)) continue;
        Determinant ex = d;
        ex.flip(p);
        ex.flip(q);
        visit(ex);
      }
    for (size_t ip = 0; ip < occ.size(); ++ip)
      for (size_t jp = ip + 1; jp < occ.size(); ++jp)
        for (size_t kp = 0; kp < vir.size(); ++kp)
          for (size_t lp = kp + 1; lp < vir.size(); ++lp) {
            const int p = occ[ip], q = occ[jp], r = vir[kp], s = vir[lp];
            if ((p & 1) + (q & 1) != (r & 1) + (s & 1)) continue;
            Determinant ex = d;
            ex.flip(p);
            ex.flip(q);
            ex.flip(r);
            ex.flip(s);
            visit(ex);
          }
  }
  SpMat H(n, n);
  H.setFromTriplets(trip.begin(), trip.end());
  H.makeCompressed();
  return H;
}

}  // namespace hqs
