#include "hqs/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>

namespace hqs {

namespace {

using json = nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double stage_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void RunConfig::validate() const {
  if (fcidump_path.empty()) throw ConfigError("config: fcidump path required");
  if (!std::filesystem::exists(fcidump_path))
    throw ConfigError("config: fcidump path does not exist: " + fcidump_path);
  if (excitation.empty()) throw ConfigError("config: excitation operator required");
  try {
    emulator.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (t_max_long <= 0.0 || dt_long <= 0.0 || dt_long > t_max_long)
    throw ConfigError("config: need 0 < dt-long <= t-max-long");
  if (threshold <= 0.0) throw ConfigError("config: threshold must be > 0");
  if (omega_max <= 0.0) throw ConfigError("config: omega-max must be > 0");
  if (merged_dim_cap < 1) throw ConfigError("config: merged-dim-cap must be >= 1");
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    c.fcidump_path = j.at("fcidump").get<std::string>();
    c.excitation = j.at("excitation").get<std::string>();
    if (j.contains("emulator")) {
      const auto& e = j.at("emulator");
      c.emulator.t_step = e.value("t-step", c.emulator.t_step);
      c.emulator.n_steps = e.value("n-steps", c.emulator.n_steps);
      c.emulator.shots_per_step = e.value("shots", c.emulator.shots_per_step);
      c.emulator.seed = e.value("seed", c.emulator.seed);
      c.emulator.n_samples = e.value("n-samples", c.emulator.n_samples);
    }
    if (j.contains("dynamics")) {
      const auto& d = j.at("dynamics");
      c.t_max_long = d.value("t-max-long", c.t_max_long);
      c.dt_long = d.value("dt-long", c.dt_long);
      const std::string mode = d.value("mode", std::string("stochastic"));
      if (mode == "stochastic")
        c.mode = AccumulationMode::stochastic;
      else if (mode == "exhaustive")
        c.mode = AccumulationMode::exhaustive;
      else
        throw ConfigError("config: mode must be stochastic|exhaustive");
      c.merge_subspaces = d.value("merge-subspaces", c.merge_subspaces);
      c.full_sector_subspaces =
          d.value("full-sector-subspaces", c.full_sector_subspaces);
      c.merged_dim_cap = d.value("merged-dim-cap", c.merged_dim_cap);
    }
    if (j.contains("spectrum")) {
      const auto& s = j.at("spectrum");
      c.threshold = s.value("threshold", c.threshold);
      c.omega_max = s.value("omega-max", c.omega_max);
    }
    const std::string ref = j.value("reference", std::string("none"));
    if (ref == "dense")
      c.reference_dense = true;
    else if (ref != "none")
      throw ConfigError("config: reference must be none|dense");
    c.output_dir = j.value("output-dir", std::string());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  return json{
      {"fcidump", fcidump_path},
      {"excitation", excitation},
      {"emulator",
       {{"t-step", emulator.t_step},
        {"n-steps", emulator.n_steps},
        {"shots", emulator.shots_per_step},
        {"seed", emulator.seed},
        {"n-samples", emulator.n_samples}}},
      {"dynamics",
       {{"t-max-long", t_max_long},
        {"dt-long", dt_long},
        {"mode", mode == AccumulationMode::stochastic ? "stochastic" : "exhaustive"},
        {"merge-subspaces", merge_subspaces},
        {"full-sector-subspaces", full_sector_subspaces},
        {"merged-dim-cap", merged_dim_cap}}},
      {"spectrum", {{"threshold", threshold}, {"omega-max", omega_max}}},
      {"reference", reference_dense ? "dense" : "none"},
      {"output-dir", output_dir}};
}

std::string det_string(const Determinant& d, int norb) {
  std::string s(static_cast<std::size_t>(norb), '0');
  for (int p = 0; p < norb; ++p) {
    const bool up = d.occupied(2 * p);
    const bool dn = d.occupied(2 * p + 1);
    s[static_cast<std::size_t>(p)] = up ? (dn ? '2' : 'u') : (dn ? 'd' : '0');
  }
  return s;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  PipelineResult r;
  r.config = cfg;
  json timings;
  auto t0 = std::chrono::steady_clock::now();

  // parse
  const IntegralTable table = parse_fcidump_file(cfg.fcidump_path);
  r.checksum = table_checksum(table);
  timings["parse"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // ground-state sector
  if ((table.nelec + table.ms2) % 2 != 0)
    throw ConfigError("config: nelec/ms2 parity mismatch");
  const int n_up = (table.nelec + table.ms2) / 2;
  const int n_down = table.nelec - n_up;
  SectorPtr sector0 = enumerate_sector(table.norb, n_up, n_down);
  const SpMat h0 = build_hamiltonian(table, sector0->dets);
  const GroundState gs = ground_state(h0);
  r.e0 = gs.energy;
  r.psi0 = SectorWaveFunction{sector0, gs.vector.cast<cplx>()};
  timings["ground-state"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // perturbed state
  const ExcitationOperator op = [&] {
    try {
      return ExcitationOperator::parse(cfg.excitation);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: bad excitation: ") + e.what());
    }
  }();
  auto [psi_a, a_norm2] = apply_excitation(op, r.psi0);
  r.psi_a = std::move(psi_a);
  r.a_norm2 = a_norm2;
  const SectorPtr sector = r.psi_a.sector;
  const bool same_sector = sector->n_up == sector0->n_up &&
                           sector->n_down == sector0->n_down;
  const SpMat h = same_sector ? h0 : build_hamiltonian(table, sector->dets);
  timings["perturbation"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // Born sampling + per-x weights
  const BornCounts born = born_sample(r.psi_a, cfg.emulator.n_samples,
                                      cfg.emulator.seed);
  std::vector<Determinant> xs;
  std::vector<double> weights;
  std::vector<long> counts;
  if (cfg.mode == AccumulationMode::stochastic) {
    xs = born.configs;
    for (long c : born.counts) {
      weights.push_back(static_cast<double>(c));
      counts.push_back(c);
    }
  } else {
    for (Eigen::Index i = 0; i < r.psi_a.amps.size(); ++i) {
      const double p = std::norm(r.psi_a.amps[i]);
      // Keep every x the local estimator can handle (|psi_A(x)| >= 1e-14);
      // each excluded x removes conj(psi_x) * <psi_A|U|x> from the aggregate,
      // so the cutoff must sit well below the accuracy target.
      if (p > 1e-28) {
        xs.push_back(sector->dets[static_cast<std::size_t>(i)]);
        weights.push_back(p);
        auto it = std::find(born.configs.begin(), born.configs.end(), xs.back());
        counts.push_back(it == born.configs.end()
                             ? 0
                             : born.counts[static_cast<std::size_t>(
                                   it - born.configs.begin())]);
      }
    }
  }
  timings["born-sample"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // short-time measurement subspaces
  const Propagator prop(h);
  std::vector<std::vector<Determinant>> subspaces(xs.size());
  if (cfg.full_sector_subspaces) {
    for (auto& s : subspaces) s = sector->dets;
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i)
      subspaces[i] = measure_evolved(xs[i], *sector, prop, cfg.emulator).members;
  }
  if (cfg.merge_subspaces) {
    std::vector<bool> in(sector->dets.size(), false);
    for (const auto& s : subspaces)
      for (const auto& d : s) in[*sector->find(d)] = true;
    std::vector<Determinant> merged;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i]) merged.push_back(sector->dets[i]);
    if (merged.size() > cfg.merged_dim_cap)
      throw SizeCapError("merged subspace dimension " +
                         std::to_string(merged.size()) + " exceeds cap " +
                         std::to_string(cfg.merged_dim_cap));
    for (auto& s : subspaces) s = merged;
  }
  r.max_subspace_dim = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.subspaces.push_back({xs[i], counts[i], subspaces[i].size()});
    r.max_subspace_dim = std::max(r.max_subspace_dim, subspaces[i].size());
  }
  timings["measure"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // projected long-time dynamics; identical member sets share one
  // diagonalization
  const TimeGrid grid = TimeGrid::make(cfg.t_max_long, cfg.dt_long);
  std::map<std::vector<Determinant>, std::shared_ptr<ProjectedDynamics>> cache;
  std::vector<LocalSeries> estimators;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto& slot = cache[subspaces[i]];
    if (!slot) slot = std::make_shared<ProjectedDynamics>(subspaces[i], table);
    estimators.push_back({xs[i], slot->estimator_series(xs[i], r.psi_a, grid.times)});
  }
  timings["project-propagate"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // accumulate + assemble
  r.series = accumulate_loschmidt(grid, estimators, weights, cfg.mode,
                                  born.n_samples);
  assemble_correlator(r.series, r.e0, r.a_norm2);
  timings["accumulate"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // spectrum + peaks
  r.spectrum = extract_peaks(fourier_spectrum(r.series, cfg.omega_max),
                             cfg.threshold);
  timings["spectrum"] = stage_ms(t0);
  t0 = std::chrono::steady_clock::now();

  // optional dense reference
  if (cfg.reference_dense) {
    const SpectrumReference ref = full_spectrum(h);
    const VectorXc a_psi0 = std::sqrt(r.a_norm2) * r.psi_a.amps;
    r.comparison = compare_to_reference(r.spectrum, ref, a_psi0, r.e0,
                                        1.5 * r.spectrum.resolution,
                                        cfg.threshold);
    timings["reference"] = stage_ms(t0);
  }

  // manifest
  json subs = json::array();
  for (const auto& s : r.subspaces)
    subs.push_back({{"x", det_string(s.x, table.norb)},
                    {"count", s.count},
                    {"dim", s.dim}});
  json peaks = json::array();
  for (const auto& p : r.spectrum.peaks)
    peaks.push_back({{"omega", p.omega},
                     {"height", p.height},
                     {"interp-refined", p.interp_refined}});
  r.manifest = json{{"config", cfg.to_json()},
                    {"fcidump-checksum", r.checksum},
                    {"sector-dim", sector->dets.size()},
                    {"e0", r.e0},
                    {"a-norm2", r.a_norm2},
                    {"n-unique-x", xs.size()},
                    {"max-subspace-dim", r.max_subspace_dim},
                    {"subspaces", subs},
                    {"peaks", peaks},
                    {"resolution", r.spectrum.resolution},
                    {"wall-clock-ms", timings}};
  if (r.comparison) {
    json matched = json::array();
    for (const auto& m : r.comparison->matched)
      matched.push_back({{"omega-peak", m.omega_peak},
                         {"reference-gap", m.reference_gap},
                         {"weight", m.reference_weight},
                         {"abs-error", m.abs_error}});
    r.manifest["comparison"] = {{"matched", matched},
                                {"missed", r.comparison->missed_gaps.size()},
                                {"spurious", r.comparison->spurious.size()},
                                {"straddling", r.comparison->straddling_gaps.size()}};
  }

  if (!cfg.output_dir.empty()) write_outputs(r);
  return r;
}

std::vector<SweepRow> run_scaling_sweep(RunConfig cfg,
                                        const std::vector<int>& shot_list) {
  if (shot_list.empty()) throw ConfigError("config: empty shot list");
  for (std::size_t i = 1; i < shot_list.size(); ++i)
    if (shot_list[i] <= shot_list[i - 1])
      throw ConfigError("config: shot list must be strictly ascending");
  cfg.reference_dense = true;
  const std::string base_dir = cfg.output_dir;
  std::vector<SweepRow> rows;
  std::string checksum;
  for (int shots : shot_list) {
    RunConfig c = cfg;
    c.emulator.shots_per_step = shots;
    c.output_dir = base_dir.empty()
                       ? std::string()
                       : base_dir + "/shots-" + std::to_string(shots);
    const PipelineResult r = run_pipeline(c);
    checksum = r.checksum;
    SweepRow row;
    row.shots = shots;
    row.max_dim = r.max_subspace_dim;
    row.resolution = r.spectrum.resolution;
    row.n_matched = r.comparison->matched.size();
    row.n_missed = r.comparison->missed_gaps.size();
    row.n_spurious = r.comparison->spurious.size();
    double sum = 0.0;
    for (const auto& m : r.comparison->matched) {
      row.max_abs_error = std::max(row.max_abs_error, m.abs_error);
      sum += m.abs_error;
    }
    // A missed reference line counts as an error at the matching cutoff so
    // the sweep metric stays monotone-meaningful at very low shot counts.
    for (std::size_t i = 0; i < row.n_missed; ++i) {
      row.max_abs_error = std::max(row.max_abs_error, 1.5 * row.resolution);
      sum += 1.5 * row.resolution;
    }
    const std::size_t n = row.n_matched + row.n_missed;
    row.mean_abs_error = n ? sum / static_cast<double>(n) : 0.0;
    rows.push_back(row);
  }
  if (!base_dir.empty())
    write_sweep_csv(base_dir + "/sweep.csv", rows, cfg, checksum);
  return rows;
}

namespace {

void write_provenance(std::ofstream& out, const RunConfig& cfg,
                      const std::string& checksum) {
  out << "# fcidump-checksum=" << checksum << "\n";
  // The output location is not part of the run identity: the same config and
  // seed must produce byte-identical data files wherever they are written.
  json j = cfg.to_json();
  j.erase("output-dir");
  out << "# config=" << j.dump() << "\n";
}

}  // namespace

void write_outputs(const PipelineResult& r) {
  namespace fs = std::filesystem;
  const fs::path dir(r.config.output_dir);
  fs::create_directories(dir);

  {
    std::ofstream out(dir / "gat.csv");
    write_provenance(out, r.config, r.checksum);
    out << "t,re_g_a,im_g_a\n";
    for (std::size_t k = 0; k < r.series.grid.times.size(); ++k)
      out << fmt_double(r.series.grid.times[k]) << ','
          << fmt_double(r.series.g_a[k].real()) << ','
          << fmt_double(r.series.g_a[k].imag()) << '\n';
  }
  {
    std::ofstream out(dir / "spectrum.csv");
    write_provenance(out, r.config, r.checksum);
    out << "omega,magnitude\n";
    for (std::size_t m = 0; m < r.spectrum.omega.size(); ++m)
      out << fmt_double(r.spectrum.omega[m]) << ','
          << fmt_double(r.spectrum.magnitude[m]) << '\n';
  }
  {
    json peaks = json::array();
    for (const auto& p : r.spectrum.peaks) {
      json jp = {{"omega", p.omega},
                 {"height", p.height},
                 {"interp-refined", p.interp_refined},
                 {"matched-reference", nullptr},
                 {"abs-error", nullptr}};
      if (r.comparison)
        for (const auto& m : r.comparison->matched)
          if (m.omega_peak == p.omega) {
            jp["matched-reference"] = m.reference_gap;
            jp["abs-error"] = m.abs_error;
          }
      peaks.push_back(jp);
    }
    json cfg_id = r.config.to_json();
    cfg_id.erase("output-dir");
    json doc = {{"fcidump-checksum", r.checksum},
                {"config", cfg_id},
                {"resolution", r.spectrum.resolution},
                {"threshold", r.spectrum.threshold},
                {"height-note",
                 "peak heights depend on the transform normalization; "
                 "positions are the contract-bearing quantity in stochastic mode"},
                {"peaks", peaks}};
    std::ofstream out(dir / "peaks.json");
    out << doc.dump(2) << '\n';
  }
  {
    std::ofstream out(dir / "manifest.json");
    out << r.manifest.dump(2) << '\n';
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const RunConfig& cfg, const std::string& checksum) {
  std::ofstream out(path);
  write_provenance(out, cfg, checksum);
  out << "shots,max_dim,max_abs_error,mean_abs_error,n_matched,n_missed,"
         "n_spurious,resolution\n";
  for (const auto& r : rows)
    out << r.shots << ',' << r.max_dim << ',' << fmt_double(r.max_abs_error)
        << ',' << fmt_double(r.mean_abs_error) << ',' << r.n_matched << ','
        << r.n_missed << ',' << r.n_spurious << ',' << fmt_double(r.resolution)
        << '\n';
}

void write_variance_csv(const std::string& path,
                        const std::vector<std::pair<std::string, VarianceReport>>& rows,
                        const RunConfig& cfg, const std::string& checksum) {
  std::ofstream out(path);
  write_provenance(out, cfg, checksum);
  out << "t,estimator,empirical,predicted,bound\n";
  for (const auto& [name, rep] : rows)
    out << fmt_double(rep.t) << ',' << name << ','
        << fmt_double(rep.empirical_var) << ',' << fmt_double(rep.predicted_var)
        << ',' << fmt_double(rep.bound) << '\n';
}

}  // namespace hqs
