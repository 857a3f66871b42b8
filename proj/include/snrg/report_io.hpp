#pragma once

// Deterministic result serialization: CSV for grids and curves (9 significant
// digits, config embedded as comment lines) and JSON provenance documents.

#include <iosfwd>
#include <string>
#include <vector>

#include "snrg/config.hpp"
#include "snrg/engine.hpp"

namespace snrg {

// Full resolved config as "# section.key = value" comment lines.
void write_config_comments(std::ostream& os, const RunConfig& cfg);

// Rows (detuning_khz, duration_us | omega_khz, mean_sz, stderr_sz).
// Infeasible cells serialize as nan.
void write_scan_csv(std::ostream& os, const ScanResult& result, const RunConfig& cfg,
                    Scheme scheme);

void write_enhancement_csv(std::ostream& os, const std::vector<EnhancementRow>& rows,
                           const RunConfig& cfg);

// (t_us, mean_sz) decay curve; the format cmd_fit consumes.
void write_decay_csv(std::ostream& os, const DecayCurve& curve, const RunConfig& cfg);
DecayCurve read_decay_csv(std::istream& is);  // ignores # comments and a header row

void write_ou_fit_csv(std::ostream& os, const OuFitResult& fit, const RunConfig& cfg);
void write_dd_fit_csv(std::ostream& os, const DdFitResult& fit, const RunConfig& cfg);

// Gate report with full provenance (resolved config, seed, version, kernel).
std::string gate_report_json(const SchemeReport& report, const RunConfig& cfg,
                             const std::string& kernel_name);

std::string format_csv_double(double v);  // %.9g

}  // namespace snrg
