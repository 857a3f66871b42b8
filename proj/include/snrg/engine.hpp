#pragma once

// Monte Carlo engine: per-shot simulation of a Sequence under noise and
// pulse imperfection, ensembles, 2-D scans, fidelity/bandwidth reports,
// enhancement curves, and noise-parameter fitting.
//
// Determinism: every shot owns a substream keyed by (seed, scope, shot
// index); per-shot results land in an array indexed by shot and are reduced
// sequentially, so ensemble statistics are bit-identical for any worker
// count. Bandwidth curves and fit grids reuse the same substreams across
// detuning points / grid cells (common random numbers), which keeps noisy
// curves smooth enough to bisect.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "snrg/kernels.hpp"
#include "snrg/noise.hpp"
#include "snrg/sequences.hpp"
#include "snrg/spincore.hpp"

namespace snrg {

struct UnidentifiableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NoiseMode : std::uint8_t { None, QuasiStatic, OuSegment };
const char* noise_mode_name(NoiseMode m);

struct ShotConfig {
  NoiseMode noise_mode = NoiseMode::None;
  OuParams ou{};
  DdImperfection dd_imp{};
  std::uint64_t seed = 0;
  int shots = 1;
  int threads = 1;  // <= 0 selects hardware concurrency
  KernelKind kernel = KernelKind::Auto;
};

struct EnsembleStats {
  double mean_sz = 0.0, stderr_sz = 0.0;
  double mean_p1 = 0.0, stderr_p1 = 0.0;
};

// One shot through the reference (scalar) kernel, starting from |0>.
SpinState simulate_shot(const Sequence& seq, const ShotConfig& cfg, std::uint64_t shot_index);

EnsembleStats run_ensemble(const Sequence& seq, const ShotConfig& cfg);

// Internal entry point with explicit substream scope words; exposed because
// reports, scans, and fits need distinct-but-reproducible stream families.
EnsembleStats run_ensemble_scoped(const Sequence& seq, const ShotConfig& cfg,
                                  std::uint64_t scope_a, std::uint64_t scope_b);

// Scheme recipe used by reports and scans.
struct SchemeSpec {
  Scheme scheme = Scheme::Rabi;
  double omega = 0.0;    // angular rad/s
  double theta = 3.14159265358979323846;
  double phi = 0.0;      // Rabi drive azimuth
  double eps = 0.0;      // DD pulse duration, s
  double spacing = 0.0;  // nominal drive-segment duration, s (DD schemes)
  int cycles = 0;        // 0 = derive from theta / (omega * spacing)
};

// Cycle count for an exact-theta build: the nearest whole-cycle count to the
// drive time at the nominal spacing (at least 1).
int resolve_cycles(const SchemeSpec& spec);

// Exact-theta sequence at detuning delta_z.
Sequence build_scheme(const SchemeSpec& spec, double delta_z);

// Whole DD cycles at the nominal spacing plus a plain-drive tail, filling
// `wall` seconds. Throws InfeasibleSequenceError for sub-cycle durations.
Sequence build_scheme_for_duration(const SchemeSpec& spec, double delta_z, double wall);

struct ScanResult {
  std::vector<double> detunings;  // angular rad/s
  std::vector<double> axis2;      // seconds, or angular rad/s when axis2_is_omega
  bool axis2_is_omega = false;
  // Row-major [detuning][axis2]; NaN marks infeasible cells.
  std::vector<double> mean_sz, stderr_sz, mean_p1, stderr_p1;

  std::size_t index(std::size_t i_det, std::size_t j) const {
    return i_det * axis2.size() + j;
  }
};

// <S_z> after the scheme as a function of (detuning, total duration).
// DD durations advance in whole cycles plus a plain-drive tail; cells
// shorter than one cycle are NaN.
ScanResult scan_detuning_time(const SchemeSpec& spec, const std::vector<double>& det_grid,
                              const std::vector<double>& time_grid, const ShotConfig& cfg);

// Exact-theta gate as a function of (detuning, Rabi frequency).
ScanResult scan_detuning_omega(const SchemeSpec& spec, const std::vector<double>& det_grid,
                               const std::vector<double>& omega_grid, const ShotConfig& cfg);

enum class BwStatus : std::uint8_t { Measured, NoCrossing, OnResonanceFailure, Skipped };
const char* bw_status_name(BwStatus s);

enum class Convention : std::uint8_t { FPaper, P1 };
const char* convention_name(Convention c);

struct SchemeReport {
  double p1 = 0.0, p1_err = 0.0;            // on-resonance transfer probability
  double f_paper = 0.0, f_paper_err = 0.0;  // (mean P1)^2
  Convention convention = Convention::FPaper;
  BwStatus bw_status = BwStatus::Skipped;
  double bw = 0.0, bw_err = 0.0;  // angular rad/s
  int cycles = 0;
  double wall_time = 0.0;

  double fidelity() const { return convention == Convention::FPaper ? f_paper : p1; }
  double fidelity_err() const { return convention == Convention::FPaper ? f_paper_err : p1_err; }
};

struct ReportOptions {
  double det_max = 0.0;  // bandwidth search limit, rad/s; <= 0 scales with omega
  double det_max_over_omega = 5.0;   // used when det_max <= 0
  double bw_threshold = 0.1;         // threshold on F_paper
  int bw_shots = 2000;
  double bw_rel_tol = 1e-3;
  double min_fidelity_for_bw = 0.0;  // skip the search when F_paper(0) is below this
  Convention convention = Convention::FPaper;
};

// On-resonance fidelity (both conventions) plus the Monte Carlo bandwidth:
// smallest detuning where the F_paper curve first drops below the threshold,
// bisected on a common-random-number curve.
SchemeReport scheme_report(const SchemeSpec& spec, const ShotConfig& cfg,
                           const ReportOptions& opts);

struct EnhancementRow {
  double omega = 0.0;
  SchemeReport rabi, snrg;
  double fidelity_ratio = 0.0;  // snrg / rabi in the selected convention
};

// Rabi-vs-SNRG reports across drive strengths; bandwidth is evaluated only
// where the on-resonance F_paper exceeds opts.min_fidelity_for_bw.
std::vector<EnhancementRow> enhancement_scan(const std::vector<double>& omega_grid,
                                             const SchemeSpec& snrg_template,
                                             const ShotConfig& cfg, const ReportOptions& opts);

struct DecayCurve {
  std::vector<double> t;      // seconds
  std::vector<double> value;  // <S_z>
};

struct FitConfig {
  double omega = 0.0;            // drive Rabi frequency, angular rad/s
  double eps = 0.0;              // SNRG pulse duration
  double spacing = 0.0;          // SNRG segment duration
  OuParams ou{};                 // fixed OU parameters for the DD fit
  int shots = 2000;
  std::uint64_t seed = 1;
  int threads = 1;
  KernelKind kernel = KernelKind::Auto;
  double max_segment = 2.5e-7;   // OU sampling resolution for Rabi curves, s
};

// On-resonance decay observables (used both to synthesize data and inside
// the fits; the fits reuse substreams across grid cells).
DecayCurve simulate_rabi_decay(const OuParams& p, const std::vector<double>& t_points,
                               const FitConfig& fc);
DecayCurve simulate_snrg_decay(const DdImperfection& imp, const std::vector<double>& t_points,
                               const FitConfig& fc);

struct OuFitResult {
  OuParams params;
  double ssr = 0.0;
  std::vector<double> b_grid, tau_grid;
  std::vector<double> residual_map;  // row-major [b][tau]
};

struct DdFitResult {
  DdImperfection imp;
  double ssr = 0.0;
  std::vector<double> sigma_grid, residual_map;
};

// Least-squares grid search of (b, tau_c) against a measured Rabi decay.
// Throws std::invalid_argument for curves with < 10 points and
// UnidentifiableError for flat data.
OuFitResult fit_ou(const DecayCurve& observed, const std::vector<double>& b_grid,
                   const std::vector<double>& tau_grid, const FitConfig& fc);

// Grid search of sigma_DD against an on-resonance SNRG decay slice.
DdFitResult fit_dd_imperfection(const DecayCurve& observed,
                                const std::vector<double>& sigma_grid, const FitConfig& fc);

int resolve_threads(int requested);

}  // namespace snrg
