#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hqs/diagnostics.hpp"
#include "hqs/emulator.hpp"
#include "hqs/fcidump.hpp"
#include "hqs/spectrum.hpp"
#include "hqs/subspace_dynamics.hpp"

namespace hqs {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Merged-subspace (or any size-capped) abort; maps to exit code 4.
struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string fcidump_path;
  std::string excitation;
  EmulatorConfig emulator;

  double t_max_long = 1000.0;
  double dt_long = 0.1;
  AccumulationMode mode = AccumulationMode::stochastic;
  bool merge_subspaces = false;
  bool full_sector_subspaces = false;  // exactness switch: S_x = full sector
  std::size_t merged_dim_cap = std::size_t{1} << 20;

  double threshold = 5e-3;
  double omega_max = 4.0;
  bool reference_dense = false;

  std::string output_dir;  // empty: no files written

  void validate() const;  // throws ConfigError
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

struct SubspaceInfo {
  Determinant x;
  long count = 0;  // Born-sample count (0 in exhaustive-only entries)
  std::size_t dim = 0;
};

struct PipelineResult {
  RunConfig config;
  std::string checksum;
  double e0 = 0.0;
  double a_norm2 = 0.0;
  SectorWaveFunction psi0;
  SectorWaveFunction psi_a;
  CorrelatorSeries series;
  SpectrumResult spectrum;
  std::optional<ComparisonReport> comparison;
  std::vector<SubspaceInfo> subspaces;
  std::size_t max_subspace_dim = 0;
  nlohmann::json manifest;
};

// Full end-to-end pipeline: parse -> sector -> ground state -> perturbation
// -> Born sampling -> short-time measurement subspaces -> projected long-time
// dynamics -> correlator -> spectrum -> peaks -> optional dense-reference
// comparison.  Writes output files when cfg.output_dir is set.
PipelineResult run_pipeline(const RunConfig& cfg);

struct SweepRow {
  int shots = 0;
  std::size_t max_dim = 0;
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  std::size_t n_matched = 0;
  std::size_t n_missed = 0;
  std::size_t n_spurious = 0;
  double resolution = 0.0;
};

// Repeats the pipeline per shot count with prefix-stable RNG streams and
// reports peak errors against the dense reference.
std::vector<SweepRow> run_scaling_sweep(RunConfig cfg,
                                        const std::vector<int>& shot_list);

// Occupation string over spatial orbitals: '0' empty, 'u'/'d' single, '2' paired.
std::string det_string(const Determinant& d, int norb);

void write_outputs(const PipelineResult& r);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const RunConfig& cfg, const std::string& checksum);
void write_variance_csv(const std::string& path,
                        const std::vector<std::pair<std::string, VarianceReport>>& rows,
                        const RunConfig& cfg, const std::string& checksum);

}  // namespace hqs
