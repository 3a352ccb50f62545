#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hqs/pipeline.hpp"

namespace {

using namespace hqs;

struct CommonFlags {
  std::string config_path;
  std::string fcidump;
  std::string excitation;
  std::string mode;
  std::string reference;
  std::string output_dir;
  double t_step = -1, dt_long = -1, t_max_long = -1, threshold = -1, omega_max = -1;
  int n_steps = -1, shots = -1;
  long n_samples = -1;
  long long seed = -1;
  bool merge = false, full_sector = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--fcidump", f.fcidump, "FCIDUMP integral file");
  cmd->add_option("--excitation", f.excitation,
                  "excitation operator, e.g. \"+9.u -7.u\"");
  cmd->add_option("--t-step", f.t_step, "spacing between measurement rounds (a.u.)");
  cmd->add_option("--n-steps", f.n_steps, "number of measurement rounds after t=0");
  cmd->add_option("--shots", f.shots, "projective measurements per round");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--n-samples", f.n_samples, "Born-sampled configurations");
  cmd->add_option("--t-max-long", f.t_max_long, "long-time half window T (a.u.)");
  cmd->add_option("--dt-long", f.dt_long, "long-time grid spacing (a.u.)");
  cmd->add_option("--mode", f.mode, "stochastic|exhaustive");
  cmd->add_flag("--merge-subspaces", f.merge, "use the union of all S_x");
  cmd->add_flag("--full-sector-subspaces", f.full_sector,
                "exactness switch: force S_x to the full sector");
  cmd->add_option("--threshold", f.threshold, "peak extraction threshold");
  cmd->add_option("--omega-max", f.omega_max, "spectrum frequency cutoff (Ha)");
  cmd->add_option("--reference", f.reference, "none|dense");
  cmd->add_option("--output-dir", f.output_dir, "directory for output files");
}

RunConfig build_config(const CommonFlags& f) {
  RunConfig c;
  if (!f.config_path.empty()) c = RunConfig::from_file(f.config_path);
  if (!f.fcidump.empty()) c.fcidump_path = f.fcidump;
  if (!f.excitation.empty()) c.excitation = f.excitation;
  if (f.t_step > 0) c.emulator.t_step = f.t_step;
  if (f.n_steps >= 0) c.emulator.n_steps = f.n_steps;
  if (f.shots > 0) c.emulator.shots_per_step = f.shots;
  if (f.seed >= 0) c.emulator.seed = static_cast<std::uint64_t>(f.seed);
  if (f.n_samples > 0) c.emulator.n_samples = f.n_samples;
  if (f.t_max_long > 0) c.t_max_long = f.t_max_long;
  if (f.dt_long > 0) c.dt_long = f.dt_long;
  if (!f.mode.empty()) {
    if (f.mode == "stochastic")
      c.mode = AccumulationMode::stochastic;
    else if (f.mode == "exhaustive")
      c.mode = AccumulationMode::exhaustive;
    else
      throw ConfigError("config: mode must be stochastic|exhaustive");
  }
  if (f.merge) c.merge_subspaces = true;
  if (f.full_sector) c.full_sector_subspaces = true;
  if (f.threshold > 0) c.threshold = f.threshold;
  if (f.omega_max > 0) c.omega_max = f.omega_max;
  if (!f.reference.empty()) {
    if (f.reference == "dense")
      c.reference_dense = true;
    else if (f.reference == "none")
      c.reference_dense = false;
    else
      throw ConfigError("config: reference must be none|dense");
  }
  if (!f.output_dir.empty()) c.output_dir = f.output_dir;
  return c;
}

void print_run_summary(const PipelineResult& r) {
  std::cout << "fcidump checksum  " << r.checksum << "\n"
            << "E0                " << r.e0 << "\n"
            << "<A+A>_0           " << r.a_norm2 << "\n"
            << "unique x          " << r.subspaces.size() << "\n"
            << "max dim S_x       " << r.max_subspace_dim << "\n"
            << "peaks             " << r.spectrum.peaks.size() << "\n";
  for (const auto& p : r.spectrum.peaks)
    std::cout << "  omega " << p.omega << "  height " << p.height << "\n";
  if (r.comparison)
    std::cout << "reference match   " << r.comparison->matched.size()
              << " matched, " << r.comparison->missed_gaps.size() << " missed, "
              << r.comparison->spurious.size() << " spurious\n";
  if (!r.config.output_dir.empty())
    std::cout << "outputs           " << r.config.output_dir << "\n";
}

int cmd_run(const CommonFlags& f) {
  const PipelineResult r = run_pipeline(build_config(f));
  print_run_summary(r);
  return 0;
}

int cmd_sweep(const CommonFlags& f, const std::vector<int>& shot_list) {
  const auto rows = run_scaling_sweep(build_config(f), shot_list);
  std::cout << "shots  max_dim  max_abs_error  n_missed  n_spurious\n";
  for (const auto& r : rows)
    std::cout << r.shots << "  " << r.max_dim << "  " << r.max_abs_error << "  "
              << r.n_missed << "  " << r.n_spurious << "\n";
  std::cout << "resolution floor " << rows.back().resolution << "\n";
  return 0;
}

int cmd_variance(const CommonFlags& f, const std::vector<double>& times,
                 long n_draws) {
  RunConfig cfg = build_config(f);
  cfg.validate();
  const IntegralTable table = parse_fcidump_file(cfg.fcidump_path);
  const int n_up = (table.nelec + table.ms2) / 2;
  SectorPtr sector0 = enumerate_sector(table.norb, n_up, table.nelec - n_up);
  const SpMat h0 = build_hamiltonian(table, sector0->dets);
  const GroundState gs = ground_state(h0);
  const SectorWaveFunction psi0{sector0, gs.vector.cast<cplx>()};
  auto [psi_a, a_norm2] =
      apply_excitation(ExcitationOperator::parse(cfg.excitation), psi0);
  const SectorPtr sector = psi_a.sector;
  const SpMat h = (sector->n_up == sector0->n_up && sector->n_down == sector0->n_down)
                      ? h0
                      : build_hamiltonian(table, sector->dets);

  std::vector<std::pair<std::string, VarianceReport>> rows;
  for (double t : times) {
    rows.emplace_back("sampling", sampling_strategy_variance(psi_a.amps, h, t));
    rows.emplace_back("alt", alt_estimator_variance(psi_a.amps, h, t, n_draws,
                                                    cfg.emulator.seed));
  }
  std::cout << "t  estimator  empirical  predicted  bound\n";
  for (const auto& [name, rep] : rows)
    std::cout << rep.t << "  " << name << "  " << rep.empirical_var << "  "
              << rep.predicted_var << "  " << rep.bound << "\n";
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    write_variance_csv(cfg.output_dir + "/variance.csv", rows, cfg,
                       table_checksum(table));
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  const IntegralTable t = parse_fcidump_file(path);
  std::cout << "valid FCIDUMP\n"
            << "norb      " << t.norb << "\n"
            << "nelec     " << t.nelec << "\n"
            << "ms2       " << t.ms2 << "\n"
            << "e_core    " << t.e_core << "\n"
            << "checksum  " << table_checksum(t) << "\n";
  return 0;
}

int cmd_reference(const CommonFlags& f) {
  RunConfig cfg = build_config(f);
  if (cfg.fcidump_path.empty()) throw ConfigError("config: fcidump path required");
  const IntegralTable table = parse_fcidump_file(cfg.fcidump_path);
  const int n_up = (table.nelec + table.ms2) / 2;
  SectorPtr sector0 = enumerate_sector(table.norb, n_up, table.nelec - n_up);
  const SpMat h0 = build_hamiltonian(table, sector0->dets);
  const GroundState gs = ground_state(h0);

  SectorPtr sector = sector0;
  SpMat h = h0;
  VectorXc a_psi0;
  if (!cfg.excitation.empty()) {
    const SectorWaveFunction psi0{sector0, gs.vector.cast<cplx>()};
    auto [psi_a, a_norm2] =
        apply_excitation(ExcitationOperator::parse(cfg.excitation), psi0);
    sector = psi_a.sector;
    if (sector->n_up != sector0->n_up || sector->n_down != sector0->n_down)
      h = build_hamiltonian(table, sector->dets);
    a_psi0 = std::sqrt(a_norm2) * psi_a.amps;
  }
  const SpectrumReference ref = full_spectrum(h);

  std::ostringstream body;
  body << "n,energy,gap,weight\n";
  for (Eigen::Index n = 0; n < ref.energies.size(); ++n) {
    const double w = a_psi0.size()
                         ? std::norm(ref.vectors.col(n)
                                         .cast<std::complex<double>>()
                                         .dot(a_psi0))
                         : 0.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(n), ref.energies[n],
                  ref.energies[n] - gs.energy, w);
    body << buf;
  }
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream out(cfg.output_dir + "/reference.csv");
    out << "# fcidump-checksum=" << table_checksum(table) << "\n";
    out << body.str();
    std::cout << "wrote " << cfg.output_dir << "/reference.csv\n";
  } else {
    std::cout << body.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid subspace spectroscopy pipeline"};
  app.require_subcommand(1);

  CommonFlags rf, sf, vf, xf;
  auto* run = app.add_subcommand("run", "execute the full pipeline");
  add_common(run, rf);

  auto* sweep = app.add_subcommand("scaling-sweep",
                                   "repeat the pipeline over shot counts");
  add_common(sweep, sf);
  std::vector<int> shot_list;
  sweep->add_option("--shot-list", shot_list, "ascending shots-per-round list")
      ->required()
      ->delimiter(',');

  auto* var = app.add_subcommand("variance-study",
                                 "estimator variance diagnostics");
  add_common(var, vf);
  std::vector<double> times{0.0, 1.0, 2.0, 5.0, 10.0};
  long n_draws = 0;
  var->add_option("--times", times, "evaluation times (a.u.)")->delimiter(',');
  var->add_option("--n-draws", n_draws, "Monte-Carlo draws (0 = exact only)");

  auto* val = app.add_subcommand("validate-fcidump", "parse and summarize");
  std::string val_path;
  val->add_option("path", val_path, "FCIDUMP file")->required();

  auto* ref = app.add_subcommand("reference-spectrum",
                                 "dense eigenspectrum and transition weights");
  add_common(ref, xf);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(rf);
    if (sweep->parsed()) return cmd_sweep(sf, shot_list);
    if (var->parsed()) return cmd_variance(vf, times, n_draws);
    if (val->parsed()) return cmd_validate(val_path);
    if (ref->parsed()) return cmd_reference(xf);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "fcidump error: " << e.what() << "\n";
    return 2;
  } catch (const SizeCapError& e) {
    std::cerr << "size-cap abort: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
