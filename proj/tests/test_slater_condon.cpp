#include <doctest.h>

#include <cstdlib>

#include "hqs/fcidump.hpp"
#include "hqs/fock.hpp"
#include "hqs/slater_condon.hpp"
#include "oracles.hpp"

using namespace hqs;

namespace {

std::string fixture(const char* name) {
  const char* root = std::getenv("HQS_DATA_DIR");
  return std::string(root ? root : "data") + "/" + name;
}

Determinant det_of(std::initializer_list<int> spin_orbitals) {
  Determinant d{};
  for (int p : spin_orbitals) d.flip(p);
  return d;
}

}  // namespace

TEST_CASE("slater-condon: H2/STO-3G matrix elements") {
  const IntegralTable t = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const Determinant d20 = det_of({0, 1});  // both electrons in orbital 0
  const Determinant d02 = det_of({2, 3});  // both electrons in orbital 1
  const Determinant dud = det_of({0, 3});  // orbital-0 up, orbital-1 down
  const Determinant ddu = det_of({1, 2});

  // Frozen values cross-checked against an independent reference solver.
  CHECK(slater_condon_element(t, d20, d20) ==
        doctest::Approx(-1.1169989967540230).epsilon(1e-13));
  CHECK(slater_condon_element(t, dud, dud) ==
        doctest::Approx(-0.34368435558015931).epsilon(1e-13));
  CHECK(slater_condon_element(t, d20, d02) ==
        doctest::Approx(0.18093119978423383).epsilon(1e-13));
  // Spin-flip singles vanish; same-spatial doubles with opposite spins do
  // not.  Under the canonical (ascending spin-orbital) phase convention this
  // open-shell exchange element carries a minus sign: the surviving
  // contraction is -(01|10) and every ladder phase in the chain is +1.
  CHECK(slater_condon_element(t, dud, ddu) ==
        doctest::Approx(-0.18093119978423383).epsilon(1e-13));
  CHECK(slater_condon_element(t, d20, dud) ==
        doctest::Approx(t.one(0, 1) + t.two(0, 1, 0, 0)).epsilon(1e-13));
}

TEST_CASE("slater-condon: matches the operator-by-operator oracle") {
  // Random symmetric tables over several sector shapes; the oracle assembles
  // H term-by-term from ladder operators, never through the rules.
  for (auto [norb, nu, nd, seed] :
       {std::tuple{3, 2, 1, 11u}, {4, 2, 2, 23u}, {3, 1, 1, 37u}, {4, 3, 1, 41u}}) {
    const IntegralTable t = oracle::random_table(norb, nu + nd, seed);
    SectorPtr s = enumerate_sector(norb, nu, nd);
    const Eigen::MatrixXd ref = oracle::hamiltonian(t, s->dets);
    const Eigen::MatrixXd got = Eigen::MatrixXd(build_hamiltonian(t, s->dets));
    CAPTURE(norb);
    CAPTURE(nu);
    CAPTURE(nd);
    CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("slater-condon: rank screening and sector guard") {
  const IntegralTable t = oracle::random_table(4, 4, 7u);
  SUBCASE("excitation rank above two couples to zero") {
    const Determinant a = det_of({0, 2, 4});   // three up electrons
    const Determinant b = det_of({1, 3, 5});   // three down: different sector
    CHECK_THROWS(slater_condon_element(t, a, b));
    const Determinant c = det_of({0, 2, 4, 1});
    const Determinant d = det_of({6, 2, 0, 1});  // single: symmetric element
    CHECK(slater_condon_element(t, c, d) ==
          doctest::Approx(slater_condon_element(t, d, c)).epsilon(1e-14));
  }
  SUBCASE("triple excitation is exactly zero") {
    // 6 spatial orbitals: move all three up electrons at once.
    const IntegralTable t6 = oracle::random_table(6, 3, 9u);
    const Determinant a = det_of({0, 2, 4});
    const Determinant b = det_of({6, 8, 10});
    CHECK(slater_condon_element(t6, a, b) == 0.0);
    CHECK(slater_condon_element(t6, b, a) == 0.0);
  }
  SUBCASE("hermiticity on a full sector") {
    SectorPtr s = enumerate_sector(3, 2, 1);
    const Eigen::MatrixXd h = Eigen::MatrixXd(build_hamiltonian(t, s->dets));
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("slater-condon: build_hamiltonian input validation") {
  const IntegralTable t = oracle::random_table(3, 3, 5u);
  SectorPtr s = enumerate_sector(3, 2, 1);
  SUBCASE("duplicate determinant") {
    std::vector<Determinant> dets = s->dets;
    dets.push_back(dets.front());
    CHECK_THROWS(build_hamiltonian(t, dets));
  }
  SUBCASE("mixed sectors") {
    std::vector<Determinant> dets = {det_of({0, 1, 2}), det_of({0, 1, 3})};
    CHECK_THROWS(build_hamiltonian(t, dets));
  }
  SUBCASE("empty list") { CHECK_THROWS(build_hamiltonian(t, {})); }
  SUBCASE("subspace restriction agrees with the full matrix") {
    const Eigen::MatrixXd full = Eigen::MatrixXd(build_hamiltonian(t, s->dets));
    std::vector<Determinant> sub{s->dets[0], s->dets[2], s->dets[5]};
    const Eigen::MatrixXd got = Eigen::MatrixXd(build_hamiltonian(t, sub));
    const int idx[3] = {0, 2, 5};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(got(a, b) == doctest::Approx(full(idx[a], idx[b])).epsilon(1e-14));
  }
}
