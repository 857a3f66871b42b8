#pragma once

// Run configuration: flat "[section] key = value" text in lab units
// (kHz, us, ns, Gauss). Parsing converts to internal angular rad/s and
// seconds exactly once; format() emits a canonical text whose re-parse
// reproduces the configuration bit-for-bit.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "snrg/engine.hpp"
#include "snrg/waveform.hpp"

namespace snrg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Either an explicit comma list ("1,2,5") or a linspace ("lo:hi:count").
struct GridSpec {
  std::string spec;

  bool empty() const { return spec.empty(); }
  std::vector<double> values() const;  // throws ConfigError on malformed specs
  static GridSpec parse(const std::string& text);
};

enum class ScanKind : std::uint8_t { DetuningTime, DetuningOmega, Enhancement };
enum class FitKind : std::uint8_t { Ou, Dd };

struct RunConfig {
  // [scheme]
  Scheme scheme = Scheme::Rabi;
  double omega_khz = 54.0;
  double theta_pi = 1.0;
  double phi_deg = 0.0;
  double delta_z_khz = 0.0;
  int cycles = 0;  // 0 = derive from spacing
  double pulse_ns = 20.0;
  double spacing_ns = 125.0;

  // [noise]
  NoiseMode noise_mode = NoiseMode::None;
  double b_khz = 42.0;
  double tau_c_us = 230.0;
  double sigma_dd = 0.0;

  // [run]
  int shots = 20000;
  std::uint64_t seed = 20260808;
  int threads = 0;

  // [report]
  double det_max_over_omega = 5.0;
  double bw_threshold = 0.1;
  int bw_shots = 2000;
  Convention convention = Convention::FPaper;

  // [scan]
  ScanKind scan_kind = ScanKind::DetuningTime;
  GridSpec scan_detuning_khz{"-150:150:61"};
  GridSpec scan_duration_us{"0.25:20:80"};
  GridSpec scan_omega_khz{"10,20,54,150,500"};
  int shots_per_cell = 2000;
  std::vector<Scheme> scan_schemes;  // empty = [scheme].kind only

  // [fit]
  FitKind fit_kind = FitKind::Ou;
  GridSpec fit_b_khz{"30:54:7"};
  GridSpec fit_tau_c_us{"110:350:5"};
  GridSpec fit_sigma_dd{"0,0.03,0.05,0.065,0.075,0.085,0.095,0.11,0.13"};
  int fit_shots = 2000;
  double fit_t_max_us = 20.0;
  int fit_t_points = 26;

  // [waveform]
  double sample_rate_mhz = 20.0;
  CarrierModel carrier = CarrierModel::Baseband;
  double b0_gauss = 0.0;

  // Derived views (internal units).
  double omega() const;           // angular rad/s
  double theta() const;           // rad
  double phi() const;             // rad
  double delta_z() const;         // angular rad/s
  double eps() const;             // s
  double spacing() const;         // s
  SchemeSpec scheme_spec() const;
  ShotConfig shot_config() const;
  ReportOptions report_options() const;

  // Canonical text; parse(format()) reproduces every field exactly.
  std::string format() const;

  // format() with the worker count normalized to 0: thread count never
  // affects results, so it is excluded from output provenance.
  std::string provenance_text() const;
};

Scheme parse_scheme(const std::string& name);

// Parses configuration text. Unknown or malformed keys raise ConfigError
// naming the offending "section.key".
RunConfig parse_config(const std::string& text);

// Bundled configurations (paper parameter sets and ideal baselines).
const std::map<std::string, std::string>& config_presets();

// Loads a preset by name or a file by path, preset names first.
RunConfig load_config(const std::string& name_or_path);

}  // namespace snrg
