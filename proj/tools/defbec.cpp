#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "defbec/dispersion.hpp"
#include "defbec/lambda_core.hpp"
#include "defbec/presets.hpp"
#include "defbec/pulse.hpp"
#include "defbec/sector_hamiltonian.hpp"
#include "defbec/susceptibility.hpp"
#include "defbec/sweep.hpp"

namespace {

using namespace defbec;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t used = 0;
    out.push_back(std::stod(text.substr(pos), &used));
    pos += used;
    if (pos < text.size()) {
      if (text[pos] != ',') throw CLI::ValidationError("bad number list: " + text);
      ++pos;
    }
  }
  if (out.empty()) throw CLI::ValidationError("empty number list: " + text);
  return out;
}

void parse_range(const std::string& text, double& lo, double& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("expected min:max, got: " + text);
  lo = std::stod(text.substr(0, colon));
  hi = std::stod(text.substr(colon + 1));
}

struct SweepFlags {
  std::string preset = "sodium";
  std::string kappa = "0";
  std::string natoms = "1e14";
  bool eta_zero = false;
  std::string delta_range;
  int points = 400;
  double photons = -1.0;
  double intensity = -1.0;
  int n_e = 1;
  std::string out_dir = ".";
  std::string format = "csv";
  bool printed_path = false;
  bool subtract_offset = false;
  bool no_timestamp = false;
  int threads = 0;
  std::string config_file;
};

std::vector<std::string> split_strings(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(text.substr(
        pos, comma == std::string::npos ? comma : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// flags the user actually passed win over the config file; everything else
// keeps the file (or built-in) value
RunConfig build_config(const CLI::App* cmd, const SweepFlags& flags) {
  RunConfig config;
  if (!flags.config_file.empty()) config = load_config(flags.config_file);
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--preset")) config.preset = flags.preset;
  if (given("--kappa")) config.kappas = parse_list(flags.kappa);
  if (given("--natoms")) config.n_atoms = parse_list(flags.natoms);
  if (given("--eta-zero")) config.eta_zero = flags.eta_zero;
  if (given("--delta-range"))
    parse_range(flags.delta_range, config.delta_min, config.delta_max);
  if (given("--points")) config.points = flags.points;
  if (given("--photons")) config.photons = flags.photons;
  if (given("--intensity")) config.intensity = flags.intensity;
  if (given("--n-e")) config.n_e = flags.n_e;
  if (cmd->get_option_no_throw("--out") && given("--out"))
    config.out_dir = flags.out_dir;
  if (cmd->get_option_no_throw("--format") && given("--format"))
    config.formats = split_strings(flags.format);
  if (given("--printed-path")) config.printed_path = flags.printed_path;
  if (given("--subtract-offset"))
    config.subtract_offset = flags.subtract_offset;
  if (cmd->get_option_no_throw("--no-timestamp") && given("--no-timestamp"))
    config.timestamp = !flags.no_timestamp;
  if (given("--threads")) config.threads = flags.threads;
  config.validate();
  return config;
}

void report_crossings(const SweepResult& result) {
  size_t f = 0;
  for (double kappa : result.config.kappas) {
    for (double n : result.config.n_atoms) {
      const ZeroCrossingReport& report = result.ng_reports[f++];
      std::printf("family kappa=%g N=%g: %zu zero crossing(s) of n_g",
                  kappa, n, report.crossings.size());
      for (double d : report.crossings)
        std::printf(" at delta/2pi = %.6g Hz", hz_from_angular(d));
      std::printf("; %s\n",
                  report.has_positive && report.has_negative
                      ? "both signs of n_g occur in the window"
                      : (report.has_positive ? "n_g stays positive"
                                             : "n_g stays negative"));
    }
  }
}

int cmd_sweep(const CLI::App* cmd, const SweepFlags& flags) {
  const RunConfig config = build_config(cmd, flags);
  const SweepResult result = run_sweep(config);
  const auto written = emit(result);
  for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
  report_crossings(result);
  return 0;
}

struct PulseFlags {
  SweepFlags sweep;  // medium selection reuses the sweep flags
  double slab_length = 1e-4;  // m
  double fwhm = 1e-6;         // s
  int samples = 4096;
  double window = 0.0;        // s; 0 -> 16 fwhm
};

int cmd_pulse(const CLI::App* cmd, const PulseFlags& flags) {
  RunConfig config = build_config(cmd, flags.sweep);
  if (config.kappas.size() != 1 || config.n_atoms.size() != 1)
    throw CLI::ValidationError("pulse: exactly one kappa and one natoms value");

  const Preset preset = preset_by_name(config.preset);
  MediumModel model = preset.medium(
      config.kappas[0], config.n_atoms[0], config.eta_zero,
      config.printed_path ? ChiPath::printed : ChiPath::derived);
  model.n_e = config.n_e;
  model.n_photons = config.resolved_photons(preset);
  model.subtract_offset = config.subtract_offset;

  std::vector<double> delta_grid(config.points);
  for (int i = 0; i < config.points; ++i)
    delta_grid[i] = config.delta_min +
                    (config.delta_max - config.delta_min) * i /
                        double(config.points - 1);
  const SusceptibilitySpectrum spectrum =
      chi_total(delta_grid, model.n_photons, model);

  ChiSpectrum chi;
  chi.omega_grid.resize(delta_grid.size());
  for (size_t i = 0; i < delta_grid.size(); ++i)
    chi.omega_grid[i] = model.omega_p + delta_grid[i];
  chi.chi = spectrum.chi_total;

  const double window = flags.window > 0.0 ? flags.window : 16.0 * flags.fwhm;
  const double dt = window / flags.samples;
  const auto envelope =
      gaussian_envelope(flags.samples, dt, flags.fwhm, 0.5 * window);
  const PulseRun run =
      propagate_pulse(chi, model.omega_p, envelope, dt, flags.slab_length);

  std::printf("slab length          %.6g m\n", run.slab_length);
  std::printf("vacuum transit       %.6g s\n", run.vacuum_transit);
  std::printf("measured transit     %.6g s\n", run.measured_total_transit);
  std::printf("measured delay       %.6g s\n", run.measured_delay);
  std::printf("predicted delay      %.6g s\n", run.predicted_delay);
  std::printf("group index          %.9g\n", run.group_index_carrier);
  std::printf("classification       %s\n",
              to_string(run.classification).c_str());

  const std::vector<double> ng =
      group_index(chi.omega_grid, refractive_index(chi.chi));
  const ZeroCrossingReport report =
      group_index_zero_crossings(delta_grid, ng);
  std::printf("n_g zero crossings   %zu", report.crossings.size());
  for (double d : report.crossings)
    std::printf(" at delta/2pi = %.6g Hz", hz_from_angular(d));
  std::printf("\n%s\n",
              report.has_positive && report.has_negative
                  ? "both signs of n_g occur in the window"
                  : (report.has_positive ? "n_g stays positive in the window"
                                         : "n_g stays negative in the window"));
  return 0;
}

int check(bool ok, const char* what, int& failures) {
  std::printf("%-60s %s\n", what, ok ? "PASS" : "FAIL");
  if (!ok) ++failures;
  return ok ? 0 : 1;
}

int cmd_validate() {
  int failures = 0;

  // analytic matrix element against the rotated diagonal
  {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      HamiltonianParams params;
      params.omega_p = 1.0 + 0.5 * unit(rng);
      params.delta = 0.3 * unit(rng);
      params.K1 = cplx(unit(rng), unit(rng));
      params.K2 = 0.1 * cplx(unit(rng), unit(rng));
      params.kappa = 0.05 * unit(rng);
      params.eta = 0.02 * std::abs(unit(rng));
      for (int n_exc : {1, 2, 5, 9}) {
        auto [sector, ops] = sector_with_ops(n_exc);
        const Eigen::VectorXcd corr = rotated_corrections(sector, params);
        for (int i = 0; i < sector.dim; ++i) {
          const cplx analytic = matrix_element_analytic(
              sector.j, sector.m_of_index(i), params);
          const double scale = std::max(std::abs(corr(i)), 1e-30);
          worst = std::max(worst, std::abs(analytic - corr(i)) / scale);
        }
      }
    }
    check(worst < 1e-9, "sector energy: closed form vs rotated diagonal",
          failures);
  }

  // steady state of the master equation against the closed-form coherence
  {
    const Preset preset = sodium_preset();
    const DerivedRates rates = derived_rates(preset.atoms);
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i) {
      FieldParams fields;
      fields.g1 = preset.g1;
      fields.g2 = 1e-4 * rates.gamma_opt;
      fields.delta = angular_from_hz(-20e6 + 5e6 * i);
      const Eigen::Matrix3cd rho =
          liouville_steady_state(preset.atoms, fields);
      const cplx expected =
          1.0 / gamma_factor(fields.delta, fields.g1, rates);
      const cplx got = rho(2, 1) / fields.g2;
      worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
    check(worst < 1e-3, "master-equation steady state vs closed form",
          failures);
  }

  // undeformed limits
  {
    const Preset preset = sodium_preset();
    const MediumModel model = preset.medium(0.0, 1e14, true);
    const ChiCoefficients chi = susceptibilities(
        model.hamiltonian_params(0.0), model.quantization(), 1, 25.0);
    check(std::abs(chi.chi5) == 0.0, "kappa = 0, 1/N = 0 removes chi^(5)",
          failures);
  }

  // polarization from the cubic against finite differences
  {
    const Preset preset = sodium_preset();
    const MediumModel model = preset.medium(0.005, 1e14, true);
    const HamiltonianParams params = model.hamiltonian_params(0.0);
    const FieldQuantization quant = model.quantization();
    const EnergyPolynomial poly = energy_excess_polynomial(1, params);
    const double s = 5.0;  // sqrt(25)
    const double h = 1e-3;
    const cplx dE =
        (poly.eval((s + h) * (s + h)) - poly.eval((s - h) * (s - h))) /
        (2.0 * h);
    const cplx expected = -dE / quant.epsilon_per_photon();
    const cplx got = polarization(25.0, poly, quant);
    check(std::abs(got - expected) <= 1e-6 * std::abs(expected),
          "polarization vs finite-difference energy derivative", failures);
  }

  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f-deformed BEC susceptibility and pulse propagation toolkit"};
  app.require_subcommand(1);

  SweepFlags sweep_flags;
  PulseFlags pulse_flags;

  auto add_medium_flags = [](CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--preset", f.preset, "medium preset name");
    cmd->add_option("--kappa", f.kappa, "collision rates, comma list (1/s)");
    cmd->add_option("--natoms", f.natoms, "atom numbers, comma list");
    cmd->add_flag("--eta-zero", f.eta_zero, "set 1/N = 0 exactly");
    cmd->add_option("--delta-range", f.delta_range,
                    "detuning window min:max (rad/s)");
    cmd->add_option("--points", f.points, "detuning grid size");
    cmd->add_option("--photons", f.photons, "mean photon number");
    cmd->add_option("--intensity", f.intensity, "probe intensity (W/m^2)");
    cmd->add_option("--n-e", f.n_e, "fixed exciton number");
    cmd->add_flag("--printed-path", f.printed_path,
                  "use the closed susceptibility formulas verbatim");
    cmd->add_flag("--subtract-offset", f.subtract_offset,
                  "subtract the detuning-independent chi1 offset");
    cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
    cmd->add_option("--config", f.config_file, "key=value config file");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "susceptibility sweeps");
  add_medium_flags(sweep, sweep_flags);
  sweep->add_option("--out", sweep_flags.out_dir, "output directory");
  sweep->add_option("--format", sweep_flags.format,
                    "output formats, comma list of csv,json,svg");
  sweep->add_flag("--no-timestamp", sweep_flags.no_timestamp,
                  "omit timestamps for byte-identical reruns");

  CLI::App* pulse = app.add_subcommand("pulse", "slab pulse propagation");
  add_medium_flags(pulse, pulse_flags.sweep);
  pulse->add_option("--slab-length", pulse_flags.slab_length,
                    "medium length (m)");
  pulse->add_option("--fwhm", pulse_flags.fwhm,
                    "Gaussian intensity FWHM (s)");
  pulse->add_option("--samples", pulse_flags.samples, "time samples");
  pulse->add_option("--window", pulse_flags.window,
                    "time window (s, 0 = 16 fwhm)");

  CLI::App* validate =
      app.add_subcommand("validate", "run the built-in consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(sweep, sweep_flags);
    if (pulse->parsed()) return cmd_pulse(pulse, pulse_flags);
    if (validate->parsed()) return cmd_validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
