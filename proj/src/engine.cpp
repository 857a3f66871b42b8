#include "snrg/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "snrg/analytic.hpp"
#include "snrg/rng.hpp"

namespace snrg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Substream scope tags. Shot streams are keyed (seed, scope_a, scope_b, shot);
// the bandwidth curve and the fit grids keep their scope fixed across
// detuning / parameter values to share random numbers.
constexpr std::uint64_t kScopeDefault = 0;
constexpr std::uint64_t kScopeReport = 10;
constexpr std::uint64_t kScopeBandwidth = 11;
constexpr std::uint64_t kScopeScan = 20;
constexpr std::uint64_t kScopeFit = 30;

constexpr int kShotBlock = 1024;  // fixed partitioning unit, independent of threads
constexpr int kBatch = 16;        // lanes per kernel invocation

void parallel_for_blocks(int n_blocks, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n_blocks <= 1) {
    for (int b = 0; b < n_blocks; ++b) body(b);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= n_blocks) return;
      body(b);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min(threads, n_blocks);
  pool.reserve(static_cast<std::size_t>(n_threads) - 1);
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

struct ShotBuffers {
  std::vector<double> deltas;
  std::vector<double> angles;

  void init(const SegmentProgram& prog) {
    const std::size_t nseg = std::max(1, prog.n_segments);
    const std::size_t npulse = std::max(1, prog.n_pulses);
    deltas.assign(nseg * kBatch, 0.0);
    angles.assign(npulse * kBatch, kPi);
  }
};

// Fills the noise and pulse-angle lanes for shots [shot0, shot0 + count).
// Draw order per shot: noise first (stationary value, then one transition
// per segment boundary), then one angle per DD pulse.
void fill_lanes(const SegmentProgram& prog, const ShotConfig& cfg, std::uint64_t scope_a,
                std::uint64_t scope_b, std::uint64_t shot0, int count, ShotBuffers& buf) {
  const int nseg = prog.n_segments;
  for (int lane = 0; lane < count; ++lane) {
    Rng rng(stream_key(cfg.seed, {scope_a, scope_b, shot0 + static_cast<std::uint64_t>(lane)}));
    switch (cfg.noise_mode) {
      case NoiseMode::None:
        break;
      case NoiseMode::QuasiStatic: {
        const double d = cfg.ou.b * rng.normal();
        for (int k = 0; k < nseg; ++k) {
          buf.deltas[static_cast<std::size_t>(k) * kBatch + static_cast<std::size_t>(lane)] = d;
        }
        break;
      }
      case NoiseMode::OuSegment: {
        double d = cfg.ou.b * rng.normal();
        for (int k = 0; k < nseg; ++k) {
          buf.deltas[static_cast<std::size_t>(k) * kBatch + static_cast<std::size_t>(lane)] = d;
          if (k + 1 < nseg) {
            d = d * prog.ou_decay[static_cast<std::size_t>(k)] +
                prog.ou_diffusion[static_cast<std::size_t>(k)] * rng.normal();
          }
        }
        break;
      }
    }
    if (cfg.dd_imp.sigma > 0.0) {
      for (int p = 0; p < prog.n_pulses; ++p) {
        buf.angles[static_cast<std::size_t>(p) * kBatch + static_cast<std::size_t>(lane)] =
            perturb_pi(cfg.dd_imp, rng);
      }
    }
  }
}

struct EnsembleRaw {
  std::vector<double> p1, sz;
};

EnsembleRaw run_shots(const Sequence& seq, const ShotConfig& cfg, std::uint64_t scope_a,
                      std::uint64_t scope_b) {
  if (cfg.shots < 1) throw std::invalid_argument("run_ensemble: shots must be >= 1");
  if (cfg.noise_mode != NoiseMode::None) cfg.ou.validate();
  cfg.dd_imp.validate();

  SegmentProgram prog = SegmentProgram::compile(seq);
  if (cfg.noise_mode == NoiseMode::OuSegment) prog.prepare_ou(cfg.ou);
  const KernelInfo kernel = select_kernel(cfg.kernel);

  EnsembleRaw raw;
  raw.p1.resize(static_cast<std::size_t>(cfg.shots));
  raw.sz.resize(static_cast<std::size_t>(cfg.shots));

  const int n_blocks = (cfg.shots + kShotBlock - 1) / kShotBlock;
  parallel_for_blocks(n_blocks, resolve_threads(cfg.threads), [&](int block) {
    ShotBuffers buf;
    buf.init(prog);
    const int begin = block * kShotBlock;
    const int end = std::min(cfg.shots, begin + kShotBlock);
    for (int shot0 = begin; shot0 < end; shot0 += kBatch) {
      const int count = std::min(kBatch, end - shot0);
      fill_lanes(prog, cfg, scope_a, scope_b, static_cast<std::uint64_t>(shot0), count, buf);
      ShotBatchView view;
      view.program = &prog;
      view.deltas = buf.deltas.data();
      view.pulse_angles = buf.angles.data();
      view.stride = kBatch;
      view.batch = count;
      view.out_p1 = raw.p1.data() + shot0;
      view.out_sz = raw.sz.data() + shot0;
      kernel.fn(view);
    }
  });
  return raw;
}

void mean_stderr(const std::vector<double>& x, double* mean, double* se) {
  const auto n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double m = sum / n;
  double ss = 0.0;
  for (double v : x) {
    const double d = v - m;
    ss += d * d;
  }
  *mean = m;
  *se = x.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

double f_paper_of(double mean_p1) { return mean_p1 * mean_p1; }

}  // namespace

const char* noise_mode_name(NoiseMode m) {
  switch (m) {
    case NoiseMode::None: return "none";
    case NoiseMode::QuasiStatic: return "quasi_static";
    case NoiseMode::OuSegment: return "ou_segment";
  }
  return "unknown";
}

const char* bw_status_name(BwStatus s) {
  switch (s) {
    case BwStatus::Measured: return "measured";
    case BwStatus::NoCrossing: return "no_crossing";
    case BwStatus::OnResonanceFailure: return "on_resonance_failure";
    case BwStatus::Skipped: return "skipped";
  }
  return "unknown";
}

const char* convention_name(Convention c) {
  return c == Convention::FPaper ? "f_paper" : "p1";
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SpinState simulate_shot(const Sequence& seq, const ShotConfig& cfg, std::uint64_t shot_index) {
  if (cfg.noise_mode != NoiseMode::None) cfg.ou.validate();
  cfg.dd_imp.validate();
  SegmentProgram prog = SegmentProgram::compile(seq);
  if (cfg.noise_mode == NoiseMode::OuSegment) prog.prepare_ou(cfg.ou);

  std::vector<double> deltas(static_cast<std::size_t>(std::max(1, prog.n_segments)), 0.0);
  std::vector<double> angles(static_cast<std::size_t>(std::max(1, prog.n_pulses)), kPi);
  Rng rng(stream_key(cfg.seed, {kScopeDefault, kScopeDefault, shot_index}));
  switch (cfg.noise_mode) {
    case NoiseMode::None:
      break;
    case NoiseMode::QuasiStatic: {
      const double d = cfg.ou.b * rng.normal();
      std::fill(deltas.begin(), deltas.end(), d);
      break;
    }
    case NoiseMode::OuSegment: {
      double d = cfg.ou.b * rng.normal();
      for (int k = 0; k < prog.n_segments; ++k) {
        deltas[static_cast<std::size_t>(k)] = d;
        if (k + 1 < prog.n_segments) {
          d = d * prog.ou_decay[static_cast<std::size_t>(k)] +
              prog.ou_diffusion[static_cast<std::size_t>(k)] * rng.normal();
        }
      }
      break;
    }
  }
  if (cfg.dd_imp.sigma > 0.0) {
    for (int p = 0; p < prog.n_pulses; ++p) {
      angles[static_cast<std::size_t>(p)] = perturb_pi(cfg.dd_imp, rng);
    }
  }

  double p1 = 0.0, sz = 0.0, state[4] = {0, 0, 0, 0};
  ShotBatchView view;
  view.program = &prog;
  view.deltas = deltas.data();
  view.pulse_angles = angles.data();
  view.stride = 1;
  view.batch = 1;
  view.out_p1 = &p1;
  view.out_sz = &sz;
  view.out_state = state;
  run_batch_scalar(view);
  return SpinState{cplx{state[0], state[1]}, cplx{state[2], state[3]}};
}

EnsembleStats run_ensemble(const Sequence& seq, const ShotConfig& cfg) {
  return run_ensemble_scoped(seq, cfg, kScopeDefault, kScopeDefault);
}

EnsembleStats run_ensemble_scoped(const Sequence& seq, const ShotConfig& cfg,
                                  std::uint64_t scope_a, std::uint64_t scope_b) {
  const EnsembleRaw raw = run_shots(seq, cfg, scope_a, scope_b);
  EnsembleStats stats;
  mean_stderr(raw.sz, &stats.mean_sz, &stats.stderr_sz);
  mean_stderr(raw.p1, &stats.mean_p1, &stats.stderr_p1);
  return stats;
}

int resolve_cycles(const SchemeSpec& spec) {
  if (spec.scheme == Scheme::Rabi) return 0;
  if (spec.cycles > 0) return spec.cycles;
  if (!(spec.spacing > 0.0)) {
    throw std::invalid_argument("resolve_cycles: spacing required to derive a cycle count");
  }
  const double drive_time = spec.theta / spec.omega;
  const int per_cycle = spec.scheme == Scheme::DpgCpmg ? 2 : 8;
  const auto n = static_cast<int>(std::llround(drive_time / (per_cycle * spec.spacing)));
  return std::max(1, n);
}

Sequence build_scheme(const SchemeSpec& spec, double delta_z) {
  switch (spec.scheme) {
    case Scheme::Rabi:
      return build_rabi(spec.omega, spec.theta, spec.phi).with_delta_z(delta_z);
    case Scheme::DpgCpmg:
      return build_dpg_cpmg(resolve_cycles(spec), spec.theta, spec.omega, spec.eps)
          .with_delta_z(delta_z);
    case Scheme::DpgXy8: {
      const int n = resolve_cycles(spec);
      const double tau_bar = spec.theta / (8.0 * n * spec.omega);
      return build_dpg_xy8(n, spec.theta, spec.omega, spec.eps, tau_bar).with_delta_z(delta_z);
    }
    case Scheme::SnrgXy8:
      return build_snrg(resolve_cycles(spec), spec.theta, spec.omega, spec.eps, delta_z);
  }
  throw std::invalid_argument("build_scheme: unknown scheme");
}

Sequence build_scheme_for_duration(const SchemeSpec& spec, double delta_z, double wall) {
  if (spec.scheme == Scheme::Rabi) {
    return build_rabi(spec.omega, spec.omega * wall, spec.phi).with_delta_z(delta_z);
  }
  if (spec.scheme == Scheme::DpgCpmg) {
    // CPMG cycle: 2 segments + 2 pulses.
    const double cycle_wall = 2.0 * (spec.spacing + spec.eps);
    const int n = static_cast<int>(std::floor(wall / cycle_wall + 1e-12));
    if (n < 1) {
      throw InfeasibleSequenceError("build_scheme_for_duration: shorter than one CPMG cycle");
    }
    const double theta = spec.omega * (2.0 * n * spec.spacing);
    Sequence seq = build_dpg_cpmg(n, theta, spec.omega, spec.eps).with_delta_z(delta_z);
    const double tail = wall - n * cycle_wall;
    if (tail > 0.0 && tail > 1e-15 * wall) {
      Segment s;
      s.kind = SegmentKind::Drive;
      s.omega = spec.omega;
      s.phi = 0.0;
      s.detuning_sign = 1;
      s.duration = tail;
      seq.segments.push_back(s);
      seq.total_theta += spec.omega * tail;
    }
    return seq;
  }
  return build_xy8_for_duration(spec.scheme, wall, spec.omega, spec.eps, spec.spacing, delta_z);
}

namespace {

ScanResult scan_common(const SchemeSpec& spec, const std::vector<double>& det_grid,
                       const std::vector<double>& axis2, bool axis2_is_omega,
                       const ShotConfig& cfg) {
  if (det_grid.empty() || axis2.empty()) throw std::invalid_argument("scan: empty grid");
  if (!std::is_sorted(det_grid.begin(), det_grid.end()) ||
      !std::is_sorted(axis2.begin(), axis2.end())) {
    throw std::invalid_argument("scan: grids must be sorted");
  }

  ScanResult result;
  result.detunings = det_grid;
  result.axis2 = axis2;
  result.axis2_is_omega = axis2_is_omega;
  const std::size_t n_cells = det_grid.size() * axis2.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.mean_sz.assign(n_cells, nan);
  result.stderr_sz.assign(n_cells, nan);
  result.mean_p1.assign(n_cells, nan);
  result.stderr_p1.assign(n_cells, nan);

  ShotConfig cell_cfg = cfg;
  cell_cfg.threads = 1;  // parallelism lives at the cell level

  parallel_for_blocks(static_cast<int>(n_cells), resolve_threads(cfg.threads), [&](int cell) {
    const std::size_t i = static_cast<std::size_t>(cell) / axis2.size();
    const std::size_t j = static_cast<std::size_t>(cell) % axis2.size();
    Sequence seq;
    try {
      if (axis2_is_omega) {
        SchemeSpec cell_spec = spec;
        cell_spec.omega = axis2[j];
        cell_spec.cycles = 0;
        seq = build_scheme(cell_spec, det_grid[i]);
      } else {
        const double wall = axis2[j];
        if (wall <= 0.0) {
          seq = Sequence{};  // identity evolution: stays in |0>
          seq.delta_z = det_grid[i];
        } else {
          seq = build_scheme_for_duration(spec, det_grid[i], wall);
        }
      }
    } catch (const InfeasibleSequenceError&) {
      return;  // cell stays NaN
    }
    const EnsembleStats stats =
        run_ensemble_scoped(seq, cell_cfg, kScopeScan, static_cast<std::uint64_t>(cell));
    const std::size_t idx = result.index(i, j);
    result.mean_sz[idx] = stats.mean_sz;
    result.stderr_sz[idx] = stats.stderr_sz;
    result.mean_p1[idx] = stats.mean_p1;
    result.stderr_p1[idx] = stats.stderr_p1;
  });
  return result;
}

}  // namespace

ScanResult scan_detuning_time(const SchemeSpec& spec, const std::vector<double>& det_grid,
                              const std::vector<double>& time_grid, const ShotConfig& cfg) {
  return scan_common(spec, det_grid, time_grid, /*axis2_is_omega=*/false, cfg);
}

ScanResult scan_detuning_omega(const SchemeSpec& spec, const std::vector<double>& det_grid,
                               const std::vector<double>& omega_grid, const ShotConfig& cfg) {
  return scan_common(spec, det_grid, omega_grid, /*axis2_is_omega=*/true, cfg);
}

SchemeReport scheme_report(const SchemeSpec& spec, const ShotConfig& cfg,
                           const ReportOptions& opts) {
  SchemeReport report;
  report.convention = opts.convention;

  const Sequence seq0 = build_scheme(spec, 0.0);
  report.cycles = seq0.n_cycles;
  report.wall_time = seq0.wall_time();

  const EnsembleStats stats = run_ensemble_scoped(seq0, cfg, kScopeReport, 0);
  report.p1 = stats.mean_p1;
  report.p1_err = stats.stderr_p1;
  report.f_paper = f_paper_of(stats.mean_p1);
  report.f_paper_err = 2.0 * stats.mean_p1 * stats.stderr_p1;

  if (opts.min_fidelity_for_bw > 0.0 && report.f_paper <= opts.min_fidelity_for_bw) {
    report.bw_status = BwStatus::Skipped;
    return report;
  }

  ShotConfig bw_cfg = cfg;
  bw_cfg.shots = opts.bw_shots;
  const double det_max =
      opts.det_max > 0.0 ? opts.det_max : opts.det_max_over_omega * spec.omega;

  // Common random numbers: the scope is independent of the detuning, so
  // every point of the curve reuses the same shot substreams.
  const auto f_curve = [&](double delta) {
    const Sequence seq = build_scheme(spec, delta);
    return f_paper_of(run_ensemble_scoped(seq, bw_cfg, kScopeBandwidth, 0).mean_p1);
  };

  try {
    report.bw = bandwidth_from_function(f_curve, det_max, opts.bw_threshold, opts.bw_rel_tol, 24);
    report.bw_status = BwStatus::Measured;

    // Uncertainty: statistical error at the crossing divided by the local slope.
    const double h = 0.05 * report.bw;
    const double slope = (f_curve(report.bw + h) - f_curve(report.bw - h)) / (2.0 * h);
    const Sequence seq_at = build_scheme(spec, report.bw);
    const EnsembleStats at = run_ensemble_scoped(seq_at, bw_cfg, kScopeBandwidth, 0);
    const double se_f = 2.0 * at.mean_p1 * at.stderr_p1;
    report.bw_err = std::abs(slope) > 0.0
                        ? std::abs(se_f / slope) + opts.bw_rel_tol * report.bw
                        : opts.bw_rel_tol * report.bw;
  } catch (const NoCrossingError&) {
    report.bw_status = BwStatus::NoCrossing;
  } catch (const OnResonanceFailureError&) {
    report.bw_status = BwStatus::OnResonanceFailure;
  }
  return report;
}

std::vector<EnhancementRow> enhancement_scan(const std::vector<double>& omega_grid,
                                             const SchemeSpec& snrg_template,
                                             const ShotConfig& cfg, const ReportOptions& opts) {
  if (omega_grid.empty()) throw std::invalid_argument("enhancement_scan: empty omega grid");
  std::vector<EnhancementRow> rows;
  rows.reserve(omega_grid.size());
  for (const double omega : omega_grid) {
    if (!(omega > 0.0)) throw std::invalid_argument("enhancement_scan: omega must be > 0");
    EnhancementRow row;
    row.omega = omega;

    SchemeSpec rabi_spec;
    rabi_spec.scheme = Scheme::Rabi;
    rabi_spec.omega = omega;
    rabi_spec.theta = snrg_template.theta;

    SchemeSpec snrg_spec = snrg_template;
    snrg_spec.scheme = Scheme::SnrgXy8;
    snrg_spec.omega = omega;
    snrg_spec.cycles = 0;

    ReportOptions row_opts = opts;
    row_opts.det_max = 0.0;  // rescale the search window with each omega

    ShotConfig rabi_cfg = cfg;
    rabi_cfg.dd_imp = DdImperfection{};  // no pulses to perturb
    row.rabi = scheme_report(rabi_spec, rabi_cfg, row_opts);
    row.snrg = scheme_report(snrg_spec, cfg, row_opts);
    row.fidelity_ratio =
        row.rabi.fidelity() > 0.0 ? row.snrg.fidelity() / row.rabi.fidelity()
                                  : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Rabi drive chopped into sub-segments so the OU process evolves within the
// shot; physically identical to one segment, numerically a finer noise grid.
Sequence fine_grained_rabi(double omega, double duration, double max_segment) {
  Sequence seq;
  seq.scheme = Scheme::Rabi;
  const int m = std::max(1, static_cast<int>(std::ceil(duration / max_segment)));
  const double dt = duration / m;
  Segment s;
  s.kind = SegmentKind::Drive;
  s.omega = omega;
  s.phi = 0.0;
  s.detuning_sign = 1;
  s.duration = dt;
  seq.segments.assign(static_cast<std::size_t>(m), s);
  seq.total_theta = omega * duration;
  return seq;
}

DecayCurve decay_curve(const std::vector<double>& t_points, const ShotConfig& cfg,
                       const std::function<Sequence(double)>& make_seq) {
  DecayCurve curve;
  curve.t = t_points;
  curve.value.assign(t_points.size(), 0.0);
  ShotConfig point_cfg = cfg;
  point_cfg.threads = 1;
  parallel_for_blocks(static_cast<int>(t_points.size()), resolve_threads(cfg.threads),
                      [&](int j) {
                        const Sequence seq = make_seq(t_points[static_cast<std::size_t>(j)]);
                        curve.value[static_cast<std::size_t>(j)] =
                            run_ensemble_scoped(seq, point_cfg, kScopeFit,
                                                static_cast<std::uint64_t>(j))
                                .mean_sz;
                      });
  return curve;
}

}  // namespace

DecayCurve simulate_rabi_decay(const OuParams& p, const std::vector<double>& t_points,
                               const FitConfig& fc) {
  ShotConfig cfg;
  cfg.noise_mode = NoiseMode::OuSegment;
  cfg.ou = p;
  cfg.seed = fc.seed;
  cfg.shots = fc.shots;
  cfg.threads = fc.threads;
  cfg.kernel = fc.kernel;
  return decay_curve(t_points, cfg, [&](double t) {
    if (t <= 0.0) return Sequence{};
    return fine_grained_rabi(fc.omega, t, fc.max_segment);
  });
}

DecayCurve simulate_snrg_decay(const DdImperfection& imp, const std::vector<double>& t_points,
                               const FitConfig& fc) {
  ShotConfig cfg;
  cfg.noise_mode = NoiseMode::OuSegment;
  cfg.ou = fc.ou;
  cfg.dd_imp = imp;
  cfg.seed = fc.seed;
  cfg.shots = fc.shots;
  cfg.threads = fc.threads;
  cfg.kernel = fc.kernel;
  SchemeSpec spec;
  spec.scheme = Scheme::SnrgXy8;
  spec.omega = fc.omega;
  spec.eps = fc.eps;
  spec.spacing = fc.spacing;
  return decay_curve(t_points, cfg, [&](double t) {
    if (t <= 0.0) return Sequence{};
    return build_scheme_for_duration(spec, 0.0, t);
  });
}

namespace {

double curve_ssr(const DecayCurve& a, const DecayCurve& b) {
  double ssr = 0.0;
  for (std::size_t j = 0; j < a.value.size(); ++j) {
    const double d = a.value[j] - b.value[j];
    ssr += d * d;
  }
  return ssr;
}

void check_observed(const DecayCurve& observed) {
  if (observed.t.size() != observed.value.size()) {
    throw std::invalid_argument("fit: t/value size mismatch");
  }
  if (observed.t.size() < 10) throw std::invalid_argument("fit: need at least 10 points");
  const auto [lo, hi] = std::minmax_element(observed.value.begin(), observed.value.end());
  if (*hi - *lo < 0.05) throw UnidentifiableError("fit: observed curve is flat");
}

}  // namespace

OuFitResult fit_ou(const DecayCurve& observed, const std::vector<double>& b_grid,
                   const std::vector<double>& tau_grid, const FitConfig& fc) {
  check_observed(observed);
  if (b_grid.empty() || tau_grid.empty()) throw std::invalid_argument("fit_ou: empty grid");

  OuFitResult result;
  result.b_grid = b_grid;
  result.tau_grid = tau_grid;
  result.residual_map.resize(b_grid.size() * tau_grid.size());
  result.ssr = std::numeric_limits<double>::infinity();

  for (std::size_t ib = 0; ib < b_grid.size(); ++ib) {
    for (std::size_t it = 0; it < tau_grid.size(); ++it) {
      const OuParams p{b_grid[ib], tau_grid[it]};
      const DecayCurve sim = simulate_rabi_decay(p, observed.t, fc);
      const double ssr = curve_ssr(sim, observed);
      result.residual_map[ib * tau_grid.size() + it] = ssr;
      if (ssr < result.ssr) {
        result.ssr = ssr;
        result.params = p;
      }
    }
  }
  return result;
}

DdFitResult fit_dd_imperfection(const DecayCurve& observed,
                                const std::vector<double>& sigma_grid, const FitConfig& fc) {
  check_observed(observed);
  if (sigma_grid.empty()) throw std::invalid_argument("fit_dd_imperfection: empty grid");

  DdFitResult result;
  result.sigma_grid = sigma_grid;
  result.residual_map.resize(sigma_grid.size());
  result.ssr = std::numeric_limits<double>::infinity();

  for (std::size_t is = 0; is < sigma_grid.size(); ++is) {
    const DdImperfection imp{sigma_grid[is]};
    const DecayCurve sim = simulate_snrg_decay(imp, observed.t, fc);
    const double ssr = curve_ssr(sim, observed);
    result.residual_map[is] = ssr;
    if (ssr < result.ssr) {
      result.ssr = ssr;
      result.imp = imp;
    }
  }
  return result;
}

}  // namespace snrg
