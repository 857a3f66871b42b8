#include "snrg/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "snrg/units.hpp"
#include "snrg/version.hpp"

namespace snrg {

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_config_comments(std::ostream& os, const RunConfig& cfg) {
  std::istringstream is(cfg.provenance_text());
  std::string line;
  std::string section;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    os << "# " << section << "." << line << "\n";
  }
}

void write_scan_csv(std::ostream& os, const ScanResult& result, const RunConfig& cfg,
                    Scheme scheme) {
  os << "# snrg scan v1\n";
  os << "# scheme = " << scheme_name(scheme) << "\n";
  write_config_comments(os, cfg);
  const char* axis2_name = result.axis2_is_omega ? "omega_khz" : "duration_us";
  os << "detuning_khz," << axis2_name << ",mean_sz,stderr_sz\n";
  for (std::size_t i = 0; i < result.detunings.size(); ++i) {
    for (std::size_t j = 0; j < result.axis2.size(); ++j) {
      const std::size_t idx = result.index(i, j);
      const double axis2 = result.axis2_is_omega ? units::rad_s_to_khz(result.axis2[j])
                                                 : units::s_to_us(result.axis2[j]);
      os << format_csv_double(units::rad_s_to_khz(result.detunings[i])) << ','
         << format_csv_double(axis2) << ',' << format_csv_double(result.mean_sz[idx]) << ','
         << format_csv_double(result.stderr_sz[idx]) << "\n";
    }
  }
}

void write_enhancement_csv(std::ostream& os, const std::vector<EnhancementRow>& rows,
                           const RunConfig& cfg) {
  os << "# snrg enhancement v1\n";
  write_config_comments(os, cfg);
  os << "omega_khz,f_rabi,f_rabi_err,f_snrg,f_snrg_err,fidelity_ratio,"
        "bw_rabi_khz,bw_rabi_status,bw_snrg_khz,bw_snrg_status\n";
  for (const auto& row : rows) {
    const double bw_rabi =
        row.rabi.bw_status == BwStatus::Measured ? units::rad_s_to_khz(row.rabi.bw) : NAN;
    const double bw_snrg =
        row.snrg.bw_status == BwStatus::Measured ? units::rad_s_to_khz(row.snrg.bw) : NAN;
    os << format_csv_double(units::rad_s_to_khz(row.omega)) << ','
       << format_csv_double(row.rabi.fidelity()) << ','
       << format_csv_double(row.rabi.fidelity_err()) << ','
       << format_csv_double(row.snrg.fidelity()) << ','
       << format_csv_double(row.snrg.fidelity_err()) << ','
       << format_csv_double(row.fidelity_ratio) << ',' << format_csv_double(bw_rabi) << ','
       << bw_status_name(row.rabi.bw_status) << ',' << format_csv_double(bw_snrg) << ','
       << bw_status_name(row.snrg.bw_status) << "\n";
  }
}

void write_decay_csv(std::ostream& os, const DecayCurve& curve, const RunConfig& cfg) {
  os << "# snrg decay v1\n";
  write_config_comments(os, cfg);
  os << "t_us,mean_sz\n";
  for (std::size_t j = 0; j < curve.t.size(); ++j) {
    os << format_csv_double(units::s_to_us(curve.t[j])) << ','
       << format_csv_double(curve.value[j]) << "\n";
  }
}

DecayCurve read_decay_csv(std::istream& is) {
  DecayCurve curve;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      const double t_us = std::stod(line.substr(0, comma));
      const double value = std::stod(line.substr(comma + 1));
      curve.t.push_back(units::us_to_s(t_us));
      curve.value.push_back(value);
    } catch (const std::exception&) {
      // header row or malformed line; skip
    }
  }
  return curve;
}

void write_ou_fit_csv(std::ostream& os, const OuFitResult& fit, const RunConfig& cfg) {
  os << "# snrg fit_ou v1\n";
  write_config_comments(os, cfg);
  os << "# fitted_b_khz = " << format_csv_double(units::rad_s_to_khz(fit.params.b)) << "\n";
  os << "# fitted_tau_c_us = " << format_csv_double(units::s_to_us(fit.params.tau_c)) << "\n";
  os << "# ssr = " << format_csv_double(fit.ssr) << "\n";
  os << "b_khz,tau_c_us,ssr\n";
  for (std::size_t ib = 0; ib < fit.b_grid.size(); ++ib) {
    for (std::size_t it = 0; it < fit.tau_grid.size(); ++it) {
      os << format_csv_double(units::rad_s_to_khz(fit.b_grid[ib])) << ','
         << format_csv_double(units::s_to_us(fit.tau_grid[it])) << ','
         << format_csv_double(fit.residual_map[ib * fit.tau_grid.size() + it]) << "\n";
    }
  }
}

void write_dd_fit_csv(std::ostream& os, const DdFitResult& fit, const RunConfig& cfg) {
  os << "# snrg fit_dd v1\n";
  write_config_comments(os, cfg);
  os << "# fitted_sigma_dd = " << format_csv_double(fit.imp.sigma) << "\n";
  os << "# ssr = " << format_csv_double(fit.ssr) << "\n";
  os << "sigma_dd,ssr\n";
  for (std::size_t is = 0; is < fit.sigma_grid.size(); ++is) {
    os << format_csv_double(fit.sigma_grid[is]) << ',' << format_csv_double(fit.residual_map[is])
       << "\n";
  }
}

std::string gate_report_json(const SchemeReport& report, const RunConfig& cfg,
                             const std::string& kernel_name) {
  nlohmann::ordered_json j;
  j["tool"] = "snrg";
  j["version"] = kVersion;
  j["command"] = "gate";
  j["kernel"] = kernel_name;
  j["config_text"] = cfg.provenance_text();

  nlohmann::ordered_json res;
  res["convention"] = convention_name(report.convention);
  res["fidelity"] = report.fidelity();
  res["fidelity_stderr"] = report.fidelity_err();
  res["f_paper"] = report.f_paper;
  res["f_paper_stderr"] = report.f_paper_err;
  res["p1"] = report.p1;
  res["p1_stderr"] = report.p1_err;
  res["bandwidth_status"] = bw_status_name(report.bw_status);
  if (report.bw_status == BwStatus::Measured) {
    res["bandwidth_khz"] = units::rad_s_to_khz(report.bw);
    res["bandwidth_stderr_khz"] = units::rad_s_to_khz(report.bw_err);
    res["bandwidth_rad_s"] = report.bw;
  }
  res["cycles"] = report.cycles;
  res["wall_time_us"] = units::s_to_us(report.wall_time);
  j["results"] = res;
  return j.dump(2) + "\n";
}

}  // namespace snrg
