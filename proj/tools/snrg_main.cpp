// snrg: spin-qubit gate simulator CLI.
//
// Subcommands: gate, scan, waveform, fit. Configuration comes from a preset
// name or a config file (see configs/ and the README for the schema); --seed,
// --shots and --threads override it, as do the SNRG_SEED / SNRG_THREADS
// environment variables (flag > environment > config).
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "snrg/config.hpp"
#include "snrg/engine.hpp"
#include "snrg/report_io.hpp"
#include "snrg/units.hpp"
#include "snrg/version.hpp"
#include "snrg/waveform.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  std::optional<int> threads;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool out_required) {
  cmd->add_option("--config", args->config, "preset name or config file path")->required();
  cmd->add_option("--seed", args->seed, "override run seed");
  cmd->add_option("--shots", args->shots, "override shot counts (report, scan cell, fit point)");
  cmd->add_option("--threads", args->threads, "override worker count (0 = hardware)");
  auto* out = cmd->add_option("--out", args->out, "output file path");
  if (out_required) out->required();
}

snrg::RunConfig resolve_config(const CommonArgs& args) {
  snrg::RunConfig cfg = snrg::load_config(args.config);
  if (const char* env = std::getenv("SNRG_SEED"); env != nullptr && env[0] != '\0') {
    cfg.seed = std::stoull(env);
  }
  if (const char* env = std::getenv("SNRG_THREADS"); env != nullptr && env[0] != '\0') {
    cfg.threads = std::stoi(env);
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.shots) {
    cfg.shots = *args.shots;
    cfg.shots_per_cell = *args.shots;
    cfg.fit_shots = *args.shots;
  }
  if (args.threads) cfg.threads = *args.threads;
  return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || dot == 0) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int cmd_gate(const CommonArgs& args) {
  const snrg::RunConfig cfg = resolve_config(args);
  const auto kernel = snrg::select_kernel(snrg::KernelKind::Auto);
  const snrg::SchemeReport report =
      snrg::scheme_report(cfg.scheme_spec(), cfg.shot_config(), cfg.report_options());

  std::cout << "scheme = " << snrg::scheme_name(cfg.scheme)
            << "  omega_khz = " << cfg.omega_khz << "  cycles = " << report.cycles
            << "  shots = " << cfg.shots << "  kernel = " << kernel.name << "\n";
  std::cout << "fidelity (" << snrg::convention_name(report.convention)
            << ") = " << report.fidelity() << " +- " << report.fidelity_err()
            << "   [P1 = " << report.p1 << " +- " << report.p1_err << "]\n";
  if (report.bw_status == snrg::BwStatus::Measured) {
    std::cout << "bandwidth_khz = " << snrg::units::rad_s_to_khz(report.bw) << " +- "
              << snrg::units::rad_s_to_khz(report.bw_err) << "  (threshold "
              << cfg.bw_threshold << " on f_paper)\n";
  } else {
    std::cout << "bandwidth = " << snrg::bw_status_name(report.bw_status) << "\n";
  }

  const std::string json = snrg::gate_report_json(report, cfg, kernel.name);
  if (!args.out.empty()) {
    write_text_file(args.out, json);
  } else {
    std::cout << "\n" << json;
  }
  return 0;
}

int cmd_scan(const CommonArgs& args) {
  const snrg::RunConfig cfg = resolve_config(args);
  snrg::ShotConfig shot_cfg = cfg.shot_config();
  shot_cfg.shots = cfg.shots_per_cell;

  if (cfg.scan_kind == snrg::ScanKind::Enhancement) {
    snrg::ReportOptions opts = cfg.report_options();
    opts.min_fidelity_for_bw = 0.2;
    opts.bw_shots = cfg.shots_per_cell;
    snrg::ShotConfig rep_cfg = cfg.shot_config();
    std::vector<double> omegas;
    for (double khz : cfg.scan_omega_khz.values()) {
      omegas.push_back(snrg::units::khz_to_rad_s(khz));
    }
    snrg::SchemeSpec snrg_spec = cfg.scheme_spec();
    const auto rows = snrg::enhancement_scan(omegas, snrg_spec, rep_cfg, opts);
    std::ostringstream os;
    snrg::write_enhancement_csv(os, rows, cfg);
    write_text_file(args.out, os.str());
    std::cout << "wrote " << rows.size() << " rows to " << args.out << "\n";
    return 0;
  }

  std::vector<double> det;
  for (double khz : cfg.scan_detuning_khz.values()) {
    det.push_back(snrg::units::khz_to_rad_s(khz));
  }
  std::vector<double> axis2;
  const bool omega_axis = cfg.scan_kind == snrg::ScanKind::DetuningOmega;
  if (omega_axis) {
    for (double khz : cfg.scan_omega_khz.values()) {
      axis2.push_back(snrg::units::khz_to_rad_s(khz));
    }
  } else {
    for (double us : cfg.scan_duration_us.values()) {
      axis2.push_back(snrg::units::us_to_s(us));
    }
  }

  std::vector<snrg::Scheme> schemes = cfg.scan_schemes;
  if (schemes.empty()) schemes.push_back(cfg.scheme);
  for (const snrg::Scheme scheme : schemes) {
    snrg::SchemeSpec spec = cfg.scheme_spec();
    spec.scheme = scheme;
    const snrg::ScanResult result =
        omega_axis ? snrg::scan_detuning_omega(spec, det, axis2, shot_cfg)
                   : snrg::scan_detuning_time(spec, det, axis2, shot_cfg);
    std::ostringstream os;
    snrg::write_scan_csv(os, result, cfg, scheme);
    const std::string path =
        schemes.size() == 1 ? args.out
                            : with_suffix(args.out, std::string("_") + snrg::scheme_name(scheme));
    write_text_file(path, os.str());
    std::cout << "wrote " << result.detunings.size() << "x" << result.axis2.size()
              << " grid to " << path << "\n";
  }
  return 0;
}

int cmd_waveform(const CommonArgs& args) {
  const snrg::RunConfig cfg = resolve_config(args);
  const snrg::Sequence seq = snrg::build_scheme(cfg.scheme_spec(), cfg.delta_z());
  const double gamma = snrg::units::nv_gamma_hz_per_gauss;
  const double f0 = gamma * cfg.b0_gauss;
  const snrg::Waveform wf =
      snrg::render_waveform(seq, cfg.sample_rate_mhz * 1e6, gamma, cfg.carrier, f0);
  std::ostringstream os;
  snrg::write_config_comments(os, cfg);
  snrg::write_waveform_csv(os, wf);
  if (!args.out.empty()) {
    write_text_file(args.out, os.str());
    std::cout << "wrote " << wf.t.size() << " samples to " << args.out << "\n";
  } else {
    std::cout << os.str();
  }
  return 0;
}

int cmd_fit(const CommonArgs& args, const std::string& data_path) {
  const snrg::RunConfig cfg = resolve_config(args);
  std::ifstream is(data_path);
  if (!is) throw std::runtime_error("fit: cannot read data file " + data_path);
  const snrg::DecayCurve observed = snrg::read_decay_csv(is);

  snrg::FitConfig fc;
  fc.omega = cfg.omega();
  fc.eps = cfg.eps();
  fc.spacing = cfg.spacing();
  fc.ou = snrg::OuParams{snrg::units::khz_to_rad_s(cfg.b_khz), snrg::units::us_to_s(cfg.tau_c_us)};
  fc.shots = cfg.fit_shots;
  fc.seed = cfg.seed;
  fc.threads = cfg.threads;

  std::ostringstream os;
  if (cfg.fit_kind == snrg::FitKind::Ou) {
    std::vector<double> b_grid, tau_grid;
    for (double khz : cfg.fit_b_khz.values()) b_grid.push_back(snrg::units::khz_to_rad_s(khz));
    for (double us : cfg.fit_tau_c_us.values()) tau_grid.push_back(snrg::units::us_to_s(us));
    const snrg::OuFitResult fit = snrg::fit_ou(observed, b_grid, tau_grid, fc);
    std::cout << "fitted b_khz = " << snrg::units::rad_s_to_khz(fit.params.b)
              << "  tau_c_us = " << snrg::units::s_to_us(fit.params.tau_c)
              << "  ssr = " << fit.ssr << "\n";
    snrg::write_ou_fit_csv(os, fit, cfg);
  } else {
    const std::vector<double> sigma_grid = cfg.fit_sigma_dd.values();
    const snrg::DdFitResult fit = snrg::fit_dd_imperfection(observed, sigma_grid, fc);
    std::cout << "fitted sigma_dd = " << fit.imp.sigma << "  ssr = " << fit.ssr << "\n";
    snrg::write_dd_fit_csv(os, fit, cfg);
  }
  if (!args.out.empty()) {
    write_text_file(args.out, os.str());
  } else {
    std::cout << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-qubit gate simulator (Rabi / DPG / SNRG)", "snrg"};
  app.set_version_flag("--version", snrg::kVersion);
  app.require_subcommand(1);

  CommonArgs gate_args, scan_args, wf_args, fit_args;
  std::string fit_data;

  auto* gate = app.add_subcommand("gate", "on-resonance fidelity and spectral bandwidth report");
  add_common(gate, &gate_args, /*out_required=*/false);
  auto* scan = app.add_subcommand("scan", "2-D ensemble scans (detuning x duration / omega)");
  add_common(scan, &scan_args, /*out_required=*/true);
  auto* waveform = app.add_subcommand("waveform", "export the drive/gradient waveform");
  add_common(waveform, &wf_args, /*out_required=*/false);
  auto* fit = app.add_subcommand("fit", "grid-search noise or pulse-imperfection fits");
  add_common(fit, &fit_args, /*out_required=*/false);
  fit->add_option("--data", fit_data, "decay curve CSV (t_us, mean_sz)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gate->parsed()) return cmd_gate(gate_args);
    if (scan->parsed()) return cmd_scan(scan_args);
    if (waveform->parsed()) return cmd_waveform(wf_args);
    if (fit->parsed()) return cmd_fit(fit_args, fit_data);
  } catch (const snrg::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
