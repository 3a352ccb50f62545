#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "hqs/fcidump.hpp"
#include "hqs/slater_condon.hpp"
#include "hqs/spectrum.hpp"

using namespace hqs;
using std::complex;

namespace {

std::string fixture(const char* name) {
  const char* root = std::getenv("HQS_DATA_DIR");
  return std::string(root ? root : "data") + "/" + name;
}

// Synthetic correlator G(t) = sum_j p_j e^{-i w_j t} on a symmetric grid.
CorrelatorSeries synth(const std::vector<double>& omegas,
                       const std::vector<double>& weights, double t_max,
                       double dt) {
  CorrelatorSeries s;
  s.grid = TimeGrid::make(t_max, dt);
  s.mode = AccumulationMode::exhaustive;
  double norm = 0.0;
  for (double p : weights) norm += p;
  s.a_norm2 = norm;
  for (double t : s.grid.times) {
    complex<double> g{0.0, 0.0};
    for (std::size_t j = 0; j < omegas.size(); ++j)
      g += weights[j] * std::exp(complex<double>{0.0, -omegas[j] * t});
    s.g_a.push_back(g);
    s.loschmidt.push_back(g / norm);
  }
  return s;
}

}  // namespace

TEST_CASE("spectrum: single mode recovers position and weight") {
  const double w0 = 0.7321;
  const SpectrumResult spec =
      extract_peaks(fourier_spectrum(synth({w0}, {0.9}, 400.0, 0.1)));
  CHECK(spec.resolution == doctest::Approx(std::numbers::pi / 400.0).epsilon(1e-12));
  REQUIRE(spec.peaks.size() == 1);
  // Position within the resolution; height is a leakage-biased estimate of
  // the mode weight (rectangular window), so only a loose band applies.
  CHECK(std::abs(spec.peaks[0].omega - w0) < spec.resolution);
  CHECK(spec.peaks[0].height == doctest::Approx(0.9).epsilon(0.1));
  CHECK(spec.peaks[0].interp_refined);
}

TEST_CASE("spectrum: well-separated modes are all resolved") {
  const std::vector<double> omegas{0.31, 0.95, 1.62, 2.4};
  const std::vector<double> weights{0.4, 0.25, 0.2, 0.15};
  const SpectrumResult spec =
      extract_peaks(fourier_spectrum(synth(omegas, weights, 500.0, 0.1)));
  REQUIRE(spec.peaks.size() == 4);
  for (std::size_t j = 0; j < omegas.size(); ++j) {
    CHECK(std::abs(spec.peaks[j].omega - omegas[j]) < spec.resolution / 2.0);
    CHECK(spec.peaks[j].height == doctest::Approx(weights[j]).epsilon(0.2));
  }
}

TEST_CASE("spectrum: modes closer than the resolution merge into one peak") {
  const double res = std::numbers::pi / 100.0;  // T = 100
  const SpectrumResult spec = extract_peaks(
      fourier_spectrum(synth({1.0, 1.0 + 0.2 * res}, {0.5, 0.5}, 100.0, 0.1)));
  REQUIRE(spec.peaks.size() == 1);
  CHECK(spec.peaks[0].omega == doctest::Approx(1.0 + 0.1 * res).epsilon(1e-2));
  CHECK(spec.peaks[0].height == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("spectrum: weak modes below threshold are not reported") {
  const SpectrumResult spec = extract_peaks(
      fourier_spectrum(synth({0.8, 2.1}, {0.95, 1e-4}, 400.0, 0.1)), 5e-3);
  REQUIRE(spec.peaks.size() == 1);
  CHECK(std::abs(spec.peaks[0].omega - 0.8) < spec.resolution);
}

TEST_CASE("spectrum: grid validation") {
  CorrelatorSeries s = synth({1.0}, {1.0}, 10.0, 0.1);
  s.g_a.pop_back();  // break the odd symmetric grid
  s.grid.times.pop_back();
  CHECK_THROWS(fourier_spectrum(s));
}

TEST_CASE("spectrum: H2 peak heights match transition weights") {
  const IntegralTable t = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  SectorPtr sector = enumerate_sector(t.norb, 1, 1);
  const SpMat h = build_hamiltonian(t, sector->dets);
  const GroundState gs = ground_state(h);
  const SectorWaveFunction psi0{sector, gs.vector};
  auto [psi_a, a_norm2] =
      apply_excitation(ExcitationOperator::parse("+1.u -0.u"), psi0);

  // Exact exhaustive correlator via the spectral decomposition.
  const SpectrumReference ref = full_spectrum(h);
  CorrelatorSeries series;
  series.grid = TimeGrid::make(1000.0, 0.1);
  series.mode = AccumulationMode::exhaustive;
  series.e0 = gs.energy;
  series.a_norm2 = a_norm2;
  // A|psi0> unnormalized: amplitudes sqrt(a_norm2) * psi_a.
  VectorXc a_psi0 = std::sqrt(a_norm2) * psi_a.amps;
  std::vector<double> weight(static_cast<std::size_t>(ref.energies.size()));
  for (Eigen::Index n = 0; n < ref.energies.size(); ++n) {
    const complex<double> ov = ref.vectors.col(n).cast<complex<double>>().dot(a_psi0);
    weight[static_cast<std::size_t>(n)] = std::norm(ov);
  }
  for (double tt : series.grid.times) {
    complex<double> g{0.0, 0.0};
    for (Eigen::Index n = 0; n < ref.energies.size(); ++n)
      g += weight[static_cast<std::size_t>(n)] *
           std::exp(complex<double>{0.0, -(ref.energies[n] - gs.energy) * tt});
    series.g_a.push_back(g);
    series.loschmidt.push_back(g / a_norm2);
  }

  const SpectrumResult spec = extract_peaks(fourier_spectrum(series));
  const ComparisonReport rep = compare_to_reference(
      spec, ref, a_psi0, gs.energy, 1.5 * spec.resolution);
  CHECK(rep.missed_gaps.empty());
  CHECK(rep.spurious.empty());
  REQUIRE(!rep.matched.empty());
  for (const PeakMatch& m : rep.matched) {
    CHECK(m.abs_error < 1.5 * spec.resolution);
    // Heights carry rectangular-window leakage bias; positions are the
    // contract-bearing quantity.
    CHECK(std::abs(m.height - m.reference_weight) < 0.05);
  }
}

TEST_CASE("spectrum: comparison bookkeeping on synthetic peaks") {
  // Reference: three levels above a ground level at -1.0.
  SpectrumReference ref;
  ref.energies = Eigen::VectorXd(4);
  ref.energies << -1.0, -0.2, 0.4, 1.3;
  ref.vectors = Eigen::MatrixXd::Identity(4, 4);
  VectorXc a_psi0(4);
  a_psi0 << cplx{0.0, 0.0}, cplx{0.8, 0.0}, cplx{0.07, 0.0}, cplx{0.5, 0.0};
  // weights: 0.64, 0.0049 (just below 5e-3 -> straddling), 0.25

  SpectrumResult spec;
  spec.resolution = 1e-3;
  spec.threshold = 5e-3;
  // One matching peak at 0.8, one spurious at 3.0, nothing near 2.3.
  spec.peaks = {{0.8001, 0.63, true}, {3.0, 0.1, true}};
  const ComparisonReport rep =
      compare_to_reference(spec, ref, a_psi0, -1.0, 1.5e-3);
  REQUIRE(rep.matched.size() == 1);
  CHECK(rep.matched[0].reference_gap == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(rep.matched[0].reference_weight == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(rep.matched[0].abs_error == doctest::Approx(1e-4).epsilon(1e-6));
  REQUIRE(rep.missed_gaps.size() == 1);
  CHECK(rep.missed_gaps[0] == doctest::Approx(2.3).epsilon(1e-12));
  REQUIRE(rep.spurious.size() == 1);
  CHECK(rep.spurious[0].omega == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(rep.straddling_gaps.size() == 1);
  CHECK(rep.straddling_gaps[0] == doctest::Approx(1.4).epsilon(1e-12));
}
