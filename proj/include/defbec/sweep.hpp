#pragma once

#include <optional>
#include <string>
#include <vector>

#include "defbec/dispersion.hpp"
#include "defbec/presets.hpp"
#include "defbec/susceptibility.hpp"

namespace defbec {

struct RunConfig {
  std::string preset = "sodium";
  std::vector<double> kappas{0.0};
  std::vector<double> n_atoms{1e14};
  bool eta_zero = false;
  double delta_min = -angular_from_hz(20e6);
  double delta_max = angular_from_hz(20e6);
  int points = 400;
  std::optional<double> photons;      // overrides intensity when set
  std::optional<double> intensity;    // W/m^2
  int n_e = 1;
  std::string out_dir = ".";
  std::vector<std::string> formats{"csv"};
  bool printed_path = false;
  bool subtract_offset = false;
  bool timestamp = true;
  int threads = 0;  // 0 -> hardware default, capped by DEFBEC_THREADS

  void validate() const;  // throws std::invalid_argument with diagnostics
  double resolved_photons(const Preset& p) const;
};

/// Flat key=value configuration file mirroring the CLI flags. Unknown keys
/// are rejected with a line diagnostic.
RunConfig load_config(const std::string& path);

struct SweepRecord {
  double kappa = 0.0;
  double n_atoms = 0.0;
  double delta = 0.0;  // rad/s
  cplx chi1, chi_nl, chi_total;
  double n_group = 0.0;
};

struct SweepResult {
  RunConfig config;
  std::vector<SweepRecord> records;  // kappa outer, N middle, Delta inner
  std::vector<ZeroCrossingReport> ng_reports;  // one per (kappa, N) family
};

SweepResult run_sweep(const RunConfig& config);

/// CSV with the fixed header
/// kappa,n_atoms,delta_hz,chi1_re,chi1_im,chinl_re,chinl_im,chi_re,chi_im,n_group
/// at full double precision (17 significant digits).
void emit_csv(const SweepResult& result, const std::string& path);
std::string csv_string(const SweepResult& result);

/// JSON mirror of the CSV with a metadata block (config snapshot, code
/// version, chi-path flag).
void emit_json(const SweepResult& result, const std::string& path);

/// One SVG line chart per quantity; series styles follow the
/// solid / dashed / dash-dot family convention.
void emit_svg(const SweepResult& result, const std::string& out_dir);

/// Writes every requested format into config.out_dir; returns written paths.
std::vector<std::string> emit(const SweepResult& result);

std::vector<SweepRecord> parse_csv(const std::string& text);

}  // namespace defbec
