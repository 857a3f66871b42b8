#include "snrg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "snrg/units.hpp"

namespace snrg {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has malformed number '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has malformed integer '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has malformed seed '" + value + "'");
  }
}

std::string format_g17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (spec.empty()) return {};
  const auto linparts = split(spec, ':');
  if (linparts.size() == 3) {
    const double lo = parse_double("grid", trim(linparts[0]));
    const double hi = parse_double("grid", trim(linparts[1]));
    const long long n = parse_int("grid", trim(linparts[2]));
    if (n < 1 || n > 100000) throw ConfigError("config: grid count out of range in '" + spec + "'");
    if (n == 1) return {lo};
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return v;
  }
  std::vector<double> v;
  for (const auto& part : split(spec, ',')) {
    const std::string item = trim(part);
    if (item.empty()) throw ConfigError("config: empty grid element in '" + spec + "'");
    v.push_back(parse_double("grid", item));
  }
  return v;
}

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g{trim(text)};
  g.values();  // validate eagerly
  return g;
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rabi") return Scheme::Rabi;
  if (name == "dpg_cpmg") return Scheme::DpgCpmg;
  if (name == "dpg_xy8") return Scheme::DpgXy8;
  if (name == "snrg") return Scheme::SnrgXy8;
  throw ConfigError("config: unknown scheme '" + name + "'");
}

double RunConfig::omega() const { return units::khz_to_rad_s(omega_khz); }
double RunConfig::theta() const { return theta_pi * kPi; }
double RunConfig::phi() const { return phi_deg * kPi / 180.0; }
double RunConfig::delta_z() const { return units::khz_to_rad_s(delta_z_khz); }
double RunConfig::eps() const { return units::ns_to_s(pulse_ns); }
double RunConfig::spacing() const { return units::ns_to_s(spacing_ns); }

SchemeSpec RunConfig::scheme_spec() const {
  SchemeSpec spec;
  spec.scheme = scheme;
  spec.omega = omega();
  spec.theta = theta();
  spec.phi = phi();
  spec.eps = eps();
  spec.spacing = spacing();
  spec.cycles = cycles;
  return spec;
}

ShotConfig RunConfig::shot_config() const {
  ShotConfig cfg;
  cfg.noise_mode = noise_mode;
  cfg.ou = OuParams{units::khz_to_rad_s(b_khz), units::us_to_s(tau_c_us)};
  cfg.dd_imp = DdImperfection{sigma_dd};
  cfg.seed = seed;
  cfg.shots = shots;
  cfg.threads = threads;
  return cfg;
}

ReportOptions RunConfig::report_options() const {
  ReportOptions opts;
  opts.det_max_over_omega = det_max_over_omega;
  opts.bw_threshold = bw_threshold;
  opts.bw_shots = bw_shots;
  opts.convention = convention;
  return opts;
}

std::string RunConfig::format() const {
  std::ostringstream os;
  os << "[scheme]\n";
  os << "kind = " << scheme_name(scheme) << "\n";
  os << "omega_khz = " << format_g17(omega_khz) << "\n";
  os << "theta_pi = " << format_g17(theta_pi) << "\n";
  os << "phi_deg = " << format_g17(phi_deg) << "\n";
  os << "delta_z_khz = " << format_g17(delta_z_khz) << "\n";
  os << "cycles = " << cycles << "\n";
  os << "pulse_ns = " << format_g17(pulse_ns) << "\n";
  os << "spacing_ns = " << format_g17(spacing_ns) << "\n";
  os << "\n[noise]\n";
  os << "mode = " << noise_mode_name(noise_mode) << "\n";
  os << "b_khz = " << format_g17(b_khz) << "\n";
  os << "tau_c_us = " << format_g17(tau_c_us) << "\n";
  os << "sigma_dd = " << format_g17(sigma_dd) << "\n";
  os << "\n[run]\n";
  os << "shots = " << shots << "\n";
  os << "seed = " << seed << "\n";
  os << "threads = " << threads << "\n";
  os << "\n[report]\n";
  os << "det_max_over_omega = " << format_g17(det_max_over_omega) << "\n";
  os << "bw_threshold = " << format_g17(bw_threshold) << "\n";
  os << "bw_shots = " << bw_shots << "\n";
  os << "convention = " << convention_name(convention) << "\n";
  os << "\n[scan]\n";
  os << "kind = "
     << (scan_kind == ScanKind::DetuningTime
             ? "detuning_time"
             : scan_kind == ScanKind::DetuningOmega ? "detuning_omega" : "enhancement")
     << "\n";
  os << "detuning_khz = " << scan_detuning_khz.spec << "\n";
  os << "duration_us = " << scan_duration_us.spec << "\n";
  os << "omega_khz = " << scan_omega_khz.spec << "\n";
  os << "shots_per_cell = " << shots_per_cell << "\n";
  if (!scan_schemes.empty()) {
    os << "schemes = ";
    for (std::size_t i = 0; i < scan_schemes.size(); ++i) {
      os << (i > 0 ? "," : "") << scheme_name(scan_schemes[i]);
    }
    os << "\n";
  }
  os << "\n[fit]\n";
  os << "kind = " << (fit_kind == FitKind::Ou ? "ou" : "dd") << "\n";
  os << "b_khz = " << fit_b_khz.spec << "\n";
  os << "tau_c_us = " << fit_tau_c_us.spec << "\n";
  os << "sigma_dd = " << fit_sigma_dd.spec << "\n";
  os << "shots_per_point = " << fit_shots << "\n";
  os << "t_max_us = " << format_g17(fit_t_max_us) << "\n";
  os << "t_points = " << fit_t_points << "\n";
  os << "\n[waveform]\n";
  os << "sample_rate_mhz = " << format_g17(sample_rate_mhz) << "\n";
  os << "carrier = " << (carrier == CarrierModel::Rf ? "rf" : "baseband") << "\n";
  os << "b0_gauss = " << format_g17(b0_gauss) << "\n";
  return os.str();
}

std::string RunConfig::provenance_text() const {
  RunConfig normalized = *this;
  normalized.threads = 0;
  return normalized.format();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int line_no = 0;

  const auto fail_unknown = [](const std::string& key) {
    throw ConfigError("config: unknown key '" + key + "'");
  };

  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config: malformed section header at line " + std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected 'key = value' at line " + std::to_string(line_no));
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "scheme.kind") cfg.scheme = parse_scheme(value);
    else if (key == "scheme.omega_khz") cfg.omega_khz = parse_double(key, value);
    else if (key == "scheme.theta_pi") cfg.theta_pi = parse_double(key, value);
    else if (key == "scheme.phi_deg") cfg.phi_deg = parse_double(key, value);
    else if (key == "scheme.delta_z_khz") cfg.delta_z_khz = parse_double(key, value);
    else if (key == "scheme.cycles") cfg.cycles = static_cast<int>(parse_int(key, value));
    else if (key == "scheme.pulse_ns") cfg.pulse_ns = parse_double(key, value);
    else if (key == "scheme.spacing_ns") cfg.spacing_ns = parse_double(key, value);
    else if (key == "noise.mode") {
      if (value == "none") cfg.noise_mode = NoiseMode::None;
      else if (value == "quasi_static") cfg.noise_mode = NoiseMode::QuasiStatic;
      else if (value == "ou_segment") cfg.noise_mode = NoiseMode::OuSegment;
      else throw ConfigError("config: key 'noise.mode' has unknown value '" + value + "'");
    } else if (key == "noise.b_khz") cfg.b_khz = parse_double(key, value);
    else if (key == "noise.tau_c_us") cfg.tau_c_us = parse_double(key, value);
    else if (key == "noise.sigma_dd") cfg.sigma_dd = parse_double(key, value);
    else if (key == "run.shots") cfg.shots = static_cast<int>(parse_int(key, value));
    else if (key == "run.seed") cfg.seed = parse_u64(key, value);
    else if (key == "run.threads") cfg.threads = static_cast<int>(parse_int(key, value));
    else if (key == "report.det_max_over_omega") cfg.det_max_over_omega = parse_double(key, value);
    else if (key == "report.bw_threshold") cfg.bw_threshold = parse_double(key, value);
    else if (key == "report.bw_shots") cfg.bw_shots = static_cast<int>(parse_int(key, value));
    else if (key == "report.convention") {
      if (value == "f_paper") cfg.convention = Convention::FPaper;
      else if (value == "p1") cfg.convention = Convention::P1;
      else throw ConfigError("config: key 'report.convention' has unknown value '" + value + "'");
    } else if (key == "scan.kind") {
      if (value == "detuning_time") cfg.scan_kind = ScanKind::DetuningTime;
      else if (value == "detuning_omega") cfg.scan_kind = ScanKind::DetuningOmega;
      else if (value == "enhancement") cfg.scan_kind = ScanKind::Enhancement;
      else throw ConfigError("config: key 'scan.kind' has unknown value '" + value + "'");
    } else if (key == "scan.detuning_khz") cfg.scan_detuning_khz = GridSpec::parse(value);
    else if (key == "scan.duration_us") cfg.scan_duration_us = GridSpec::parse(value);
    else if (key == "scan.omega_khz") cfg.scan_omega_khz = GridSpec::parse(value);
    else if (key == "scan.shots_per_cell") cfg.shots_per_cell = static_cast<int>(parse_int(key, value));
    else if (key == "scan.schemes") {
      cfg.scan_schemes.clear();
      for (const auto& part : split(value, ',')) cfg.scan_schemes.push_back(parse_scheme(trim(part)));
    } else if (key == "fit.kind") {
      if (value == "ou") cfg.fit_kind = FitKind::Ou;
      else if (value == "dd") cfg.fit_kind = FitKind::Dd;
      else throw ConfigError("config: key 'fit.kind' has unknown value '" + value + "'");
    } else if (key == "fit.b_khz") cfg.fit_b_khz = GridSpec::parse(value);
    else if (key == "fit.tau_c_us") cfg.fit_tau_c_us = GridSpec::parse(value);
    else if (key == "fit.sigma_dd") cfg.fit_sigma_dd = GridSpec::parse(value);
    else if (key == "fit.shots_per_point") cfg.fit_shots = static_cast<int>(parse_int(key, value));
    else if (key == "fit.t_max_us") cfg.fit_t_max_us = parse_double(key, value);
    else if (key == "fit.t_points") cfg.fit_t_points = static_cast<int>(parse_int(key, value));
    else if (key == "waveform.sample_rate_mhz") cfg.sample_rate_mhz = parse_double(key, value);
    else if (key == "waveform.carrier") {
      if (value == "baseband") cfg.carrier = CarrierModel::Baseband;
      else if (value == "rf") cfg.carrier = CarrierModel::Rf;
      else throw ConfigError("config: key 'waveform.carrier' has unknown value '" + value + "'");
    } else if (key == "waveform.b0_gauss") cfg.b0_gauss = parse_double(key, value);
    else fail_unknown(key);
  }
  return cfg;
}

const std::map<std::string, std::string>& config_presets() {
  static const std::map<std::string, std::string> presets = {
      {"ideal_rabi",
       "[scheme]\n"
       "kind = rabi\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "[noise]\n"
       "mode = none\n"
       "[run]\n"
       "shots = 2000\n"
       "seed = 20260808\n"},
      {"paper_fig4_rabi",
       "[scheme]\n"
       "kind = rabi\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0\n"
       "[run]\n"
       "shots = 20000\n"
       "seed = 20260808\n"
       "[scan]\n"
       "kind = detuning_time\n"
       "detuning_khz = -150:150:31\n"
       "duration_us = 0:20:41\n"
       "shots_per_cell = 2000\n"},
      {"paper_fig4_dpg",
       "[scheme]\n"
       "kind = dpg_xy8\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "pulse_ns = 20\n"
       "spacing_ns = 125\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0.085\n"
       "[run]\n"
       "shots = 20000\n"
       "seed = 20260808\n"
       "[scan]\n"
       "kind = detuning_time\n"
       "detuning_khz = -150:150:31\n"
       "duration_us = 0:20:41\n"
       "shots_per_cell = 2000\n"},
      {"paper_fig4_snrg",
       "[scheme]\n"
       "kind = snrg\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "pulse_ns = 20\n"
       "spacing_ns = 125\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0.085\n"
       "[run]\n"
       "shots = 20000\n"
       "seed = 20260808\n"
       "[scan]\n"
       "kind = detuning_time\n"
       "detuning_khz = -150:150:31\n"
       "duration_us = 0:20:41\n"
       "shots_per_cell = 2000\n"},
      {"paper_snrg",
       "[scheme]\n"
       "kind = snrg\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "pulse_ns = 20\n"
       "spacing_ns = 125\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0.085\n"
       "[run]\n"
       "shots = 20000\n"
       "seed = 20260808\n"
       "[report]\n"
       "det_max_over_omega = 2\n"
       "bw_threshold = 0.1\n"
       "bw_shots = 2000\n"},
      {"paper_fig5",
       "[scheme]\n"
       "kind = snrg\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "pulse_ns = 20\n"
       "spacing_ns = 125\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0.085\n"
       "[run]\n"
       "shots = 20000\n"
       "seed = 20260808\n"
       "[scan]\n"
       "kind = enhancement\n"
       "omega_khz = 10,20,54,150,500\n"
       "shots_per_cell = 2000\n"},
      {"paper_fig12",
       "[scheme]\n"
       "kind = snrg\n"
       "omega_khz = 54\n"
       "theta_pi = 1\n"
       "pulse_ns = 20\n"
       "spacing_ns = 125\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0.085\n"
       "[run]\n"
       "shots = 20000\n"
       "seed = 20260808\n"
       "[scan]\n"
       "kind = detuning_omega\n"
       "detuning_khz = -150:150:31\n"
       "omega_khz = 10,20,54,150,500\n"
       "shots_per_cell = 2000\n"
       "schemes = rabi,snrg\n"},
      {"paper_fit_ou",
       "[scheme]\n"
       "kind = rabi\n"
       "omega_khz = 54\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "[run]\n"
       "seed = 20260808\n"
       "[fit]\n"
       "kind = ou\n"
       "b_khz = 30:54:7\n"
       "tau_c_us = 110:350:5\n"
       "shots_per_point = 2000\n"
       "t_max_us = 20\n"
       "t_points = 26\n"},
      {"paper_fit_dd",
       "[scheme]\n"
       "kind = snrg\n"
       "omega_khz = 54\n"
       "pulse_ns = 20\n"
       "spacing_ns = 125\n"
       "[noise]\n"
       "mode = ou_segment\n"
       "b_khz = 42\n"
       "tau_c_us = 230\n"
       "sigma_dd = 0.085\n"
       "[run]\n"
       "seed = 20260808\n"
       "[fit]\n"
       "kind = dd\n"
       "sigma_dd = 0,0.03,0.05,0.065,0.075,0.085,0.095,0.11,0.13\n"
       "shots_per_point = 2000\n"
       "t_max_us = 20\n"
       "t_points = 18\n"},
  };
  return presets;
}

RunConfig load_config(const std::string& name_or_path) {
  const auto& presets = config_presets();
  if (const auto it = presets.find(name_or_path); it != presets.end()) {
    return parse_config(it->second);
  }
  std::ifstream file(name_or_path);
  if (!file) {
    throw ConfigError("config: '" + name_or_path + "' is neither a preset nor a readable file");
  }
  std::ostringstream os;
  os << file.rdbuf();
  return parse_config(os.str());
}

}  // namespace snrg
