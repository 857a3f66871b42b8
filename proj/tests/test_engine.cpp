#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snrg/analytic.hpp"
#include "snrg/engine.hpp"
#include "snrg/rng.hpp"
#include "snrg/units.hpp"

using namespace snrg;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kOmega = units::khz_to_rad_s(54.0);
const OuParams kPaperOu{units::khz_to_rad_s(42.0), 230e-6};

ShotConfig paper_cfg(int shots, std::uint64_t seed) {
  ShotConfig cfg;
  cfg.noise_mode = NoiseMode::OuSegment;
  cfg.ou = kPaperOu;
  cfg.dd_imp = DdImperfection{0.085};
  cfg.seed = seed;
  cfg.shots = shots;
  cfg.threads = 2;
  return cfg;
}
}  // namespace

TEST_CASE("simulate_shot: ideal resonant pi pulse") {
  const Sequence seq = build_rabi(kOmega, kPi, 0.0);
  ShotConfig cfg;
  const SpinState out = simulate_shot(seq, cfg, 0);
  CHECK(population1(out) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate_shot: noise-free SNRG equals the generalized Rabi value") {
  const Sequence seq = build_snrg(9, kPi, kOmega, 0.0, kOmega);
  ShotConfig cfg;
  const double p1 = population1(simulate_shot(seq, cfg, 0));
  CHECK(p1 == doctest::Approx(transfer_probability(kOmega, kOmega, kPi / kOmega))
                  .epsilon(1e-9));
}

TEST_CASE("simulate_shot: quasi-static shot matches the analytic oracle") {
  const Sequence seq = build_rabi(kOmega, kPi, 0.0).with_delta_z(0.3 * kOmega);
  ShotConfig cfg;
  cfg.noise_mode = NoiseMode::QuasiStatic;
  cfg.ou = kPaperOu;
  cfg.seed = 99;
  const std::uint64_t shot = 17;
  // replay the shot's noise draw from its pinned substream
  Rng rng(stream_key(cfg.seed, {0, 0, shot}));
  const double delta_drawn = cfg.ou.b * rng.normal();
  const double p1 = population1(simulate_shot(seq, cfg, shot));
  const double expected =
      transfer_probability(kOmega, 0.3 * kOmega + delta_drawn, kPi / kOmega);
  CHECK(p1 == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("run_ensemble: one shot reproduces simulate_shot bit-for-bit") {
  const Sequence seq = build_snrg(3, kPi, kOmega, 20e-9, 0.5 * kOmega);
  ShotConfig cfg = paper_cfg(1, 4242);
  const EnsembleStats stats = run_ensemble(seq, cfg);
  const SpinState shot = simulate_shot(seq, cfg, 0);
  CHECK(stats.mean_p1 == population1(shot));
  CHECK(stats.mean_sz == sz_expectation(shot));
  CHECK(stats.stderr_p1 == 0.0);
}

TEST_CASE("run_ensemble: deterministic runs without noise or imperfection") {
  const Sequence seq = build_rabi(kOmega, kPi, 0.0);
  ShotConfig cfg;
  cfg.shots = 64;
  const EnsembleStats stats = run_ensemble(seq, cfg);
  CHECK(stats.mean_p1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats.stderr_p1 == 0.0);
  CHECK(stats.stderr_sz == 0.0);

  // with the bath off, all scatter comes from the pulse imperfection
  ShotConfig imp_cfg;
  imp_cfg.dd_imp = DdImperfection{0.085};
  imp_cfg.shots = 256;
  imp_cfg.seed = 9;
  const EnsembleStats imp = run_ensemble(build_snrg(4, kPi, kOmega, 20e-9, 0.0), imp_cfg);
  CHECK(imp.stderr_p1 > 0.0);
}

TEST_CASE("run_ensemble: worker count does not change the bits") {
  const Sequence seq = build_snrg(9, kPi, kOmega, 20e-9, 0.0);
  ShotConfig cfg = paper_cfg(4096, 7);
  cfg.threads = 1;
  const EnsembleStats one = run_ensemble(seq, cfg);
  cfg.threads = 8;
  const EnsembleStats eight = run_ensemble(seq, cfg);
  CHECK(one.mean_p1 == eight.mean_p1);
  CHECK(one.mean_sz == eight.mean_sz);
  CHECK(one.stderr_p1 == eight.stderr_p1);
}

TEST_CASE("run_ensemble: kernel variants give the same ensemble bits") {
  const Sequence seq = build_snrg(5, kPi, kOmega, 20e-9, 0.4 * kOmega);
  ShotConfig cfg = paper_cfg(1024, 11);
  cfg.kernel = KernelKind::Scalar;
  const EnsembleStats scalar = run_ensemble(seq, cfg);
#if defined(__x86_64__)
  if (kernel_available(KernelKind::Avx2)) {
    cfg.kernel = KernelKind::Avx2;
    const EnsembleStats avx2 = run_ensemble(seq, cfg);
    CHECK(scalar.mean_p1 == avx2.mean_p1);
    CHECK(scalar.mean_sz == avx2.mean_sz);
  }
#endif
  CHECK(scalar.mean_p1 > 0.0);
}

TEST_CASE("noise-free ensembles match the generalized Rabi prediction") {
  ShotConfig cfg;
  cfg.shots = 4;
  const double delta = 1.3 * kOmega;

  SchemeSpec rabi{Scheme::Rabi, kOmega};
  const EnsembleStats r = run_ensemble(build_scheme(rabi, delta), cfg);
  CHECK(r.mean_p1 ==
        doctest::Approx(transfer_probability(kOmega, delta, kPi / kOmega)).epsilon(1e-9));

  const EnsembleStats s = run_ensemble(build_snrg(16, kPi, kOmega, 0.0, delta), cfg);
  CHECK(s.mean_p1 ==
        doctest::Approx(transfer_probability(kOmega, delta, kPi / kOmega)).epsilon(1e-9));

  // DPG refocuses the detuning toward the resonant value as N grows.
  const EnsembleStats d = run_ensemble(build_dpg_cpmg(64, kPi, kOmega, 0.0).with_delta_z(delta), cfg);
  CHECK(d.mean_p1 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("scan_detuning_time: rabi chevron apex sits at the pi time") {
  SchemeSpec spec{Scheme::Rabi, kOmega};
  ShotConfig cfg;
  cfg.shots = 2;
  std::vector<double> det{0.0};
  std::vector<double> times;
  for (int j = 1; j <= 40; ++j) times.push_back(j * 0.5e-6);
  const ScanResult result = scan_detuning_time(spec, det, times, cfg);
  std::size_t best = 0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (result.mean_sz[j] < result.mean_sz[best]) best = j;
  }
  CHECK(times[best] == doctest::Approx(kPi / kOmega).epsilon(0.06));
}

TEST_CASE("scan_detuning_time: noisy rabi row shows damped, sped-up oscillations") {
  // On-resonance slice under the bath: the transfer dip is strongly
  // degraded (noise-free would reach -0.5), arrives slightly early
  // (detuned ensemble members precess faster), and the oscillation
  // revives toward the full-rotation point rather than overdamping.
  SchemeSpec spec{Scheme::Rabi, kOmega};
  ShotConfig cfg;
  cfg.noise_mode = NoiseMode::OuSegment;
  cfg.ou = kPaperOu;
  cfg.seed = 71;
  cfg.shots = 3000;
  cfg.threads = 2;
  const std::vector<double> det{0.0};
  std::vector<double> times;
  for (int j = 1; j <= 32; ++j) times.push_back(j * 0.5e-6);
  const ScanResult result = scan_detuning_time(spec, det, times, cfg);

  std::size_t dip = 0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (result.mean_sz[j] < result.mean_sz[dip]) dip = j;
  }
  CHECK(result.mean_sz[dip] < -0.08);
  CHECK(result.mean_sz[dip] > -0.30);
  CHECK(times[dip] > 6e-6);
  CHECK(times[dip] < 10e-6);
  CHECK(result.mean_sz.back() > 0.3);  // rising back toward the revival
}

TEST_CASE("scan_detuning_time: sub-cycle cells are missing, not fatal") {
  SchemeSpec spec{Scheme::SnrgXy8, kOmega, kPi, 0.0, 20e-9, 125e-9};
  ShotConfig cfg;
  cfg.shots = 2;
  const std::vector<double> det{0.0};
  const std::vector<double> times{0.5e-6, 5e-6};
  const ScanResult result = scan_detuning_time(spec, det, times, cfg);
  CHECK(std::isnan(result.mean_sz[0]));
  CHECK(std::isfinite(result.mean_sz[1]));
}

TEST_CASE("scan_detuning_omega: exact-theta cells across drive strengths") {
  SchemeSpec spec{Scheme::SnrgXy8, kOmega, kPi, 0.0, 0.0, 125e-9};
  ShotConfig cfg;
  cfg.shots = 4;
  const std::vector<double> det{0.0, 0.5 * kOmega};
  const std::vector<double> omegas{0.5 * kOmega, kOmega};
  const ScanResult result = scan_detuning_omega(spec, det, omegas, cfg);
  REQUIRE(result.axis2_is_omega);
  REQUIRE(result.mean_sz.size() == 4);
  for (std::size_t idx = 0; idx < result.mean_sz.size(); ++idx) {
    CHECK(std::abs(result.mean_sz[idx]) <= 0.5 + 1e-12);
    CHECK(result.stderr_sz[idx] >= 0.0);
  }
  // noise-free exact-theta cells follow the generalized Rabi formula
  for (std::size_t i = 0; i < det.size(); ++i) {
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      const double expected =
          transfer_probability(omegas[j], det[i], kPi / omegas[j]);
      CHECK(result.mean_p1[result.index(i, j)] == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("scan: noise-free single cell equals the report fidelity path") {
  SchemeSpec spec{Scheme::Rabi, kOmega};
  ShotConfig cfg;
  cfg.shots = 16;
  const std::vector<double> det{0.0};
  const std::vector<double> times{kPi / kOmega};
  const ScanResult result = scan_detuning_time(spec, det, times, cfg);
  ReportOptions opts;
  opts.bw_shots = 16;
  const SchemeReport report = scheme_report(spec, cfg, opts);
  CHECK(result.mean_p1[0] == doctest::Approx(report.p1).epsilon(1e-12));
}

TEST_CASE("scheme_report: ideal rabi gives unit fidelity and BW ~ omega") {
  SchemeSpec spec{Scheme::Rabi, kOmega};
  ShotConfig cfg;
  cfg.shots = 256;
  ReportOptions opts;
  opts.bw_shots = 256;
  const SchemeReport report = scheme_report(spec, cfg, opts);
  CHECK(report.f_paper == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(report.bw_status == BwStatus::Measured);
  CHECK(report.bw == doctest::Approx(kOmega).epsilon(0.05));
  CHECK(report.convention == Convention::FPaper);
}

TEST_CASE("monotone protection: SNRG-XY8 >= DPG-CPMG >= Rabi under paper noise") {
  // Matched pulse rate: 9 XY-8 cycles (72 pulses) vs 36 CPMG cycles (72 pulses).
  ShotConfig cfg = paper_cfg(10000, 2026);
  const EnsembleStats snrg = run_ensemble(build_snrg(9, kPi, kOmega, 20e-9, 0.0), cfg);
  const EnsembleStats dpg =
      run_ensemble(build_dpg_cpmg(36, kPi, kOmega, 20e-9).with_delta_z(0.0), cfg);
  ShotConfig rabi_cfg = cfg;
  rabi_cfg.dd_imp = DdImperfection{};
  const EnsembleStats rabi = run_ensemble(build_rabi(kOmega, kPi, 0.0), rabi_cfg);

  const double gap1 = snrg.mean_p1 - dpg.mean_p1;
  const double gap2 = dpg.mean_p1 - rabi.mean_p1;
  const double se1 = std::hypot(snrg.stderr_p1, dpg.stderr_p1);
  const double se2 = std::hypot(dpg.stderr_p1, rabi.stderr_p1);
  CHECK(gap1 > 3.0 * se1);
  CHECK(gap2 > 3.0 * se2);
}

TEST_CASE("bandwidth ordering: SNRG bounded by 1.5 omega, DPG never crosses") {
  ShotConfig cfg = paper_cfg(2000, 5);
  ReportOptions opts;
  opts.bw_shots = 1000;

  SchemeSpec snrg{Scheme::SnrgXy8, kOmega, kPi, 0.0, 20e-9, 125e-9};
  const SchemeReport rs = scheme_report(snrg, cfg, opts);
  REQUIRE(rs.bw_status == BwStatus::Measured);
  CHECK(rs.bw <= 1.5 * kOmega);

  SchemeSpec dpg{Scheme::DpgXy8, kOmega, kPi, 0.0, 20e-9, 125e-9};
  const SchemeReport rd = scheme_report(dpg, cfg, opts);
  CHECK(rd.bw_status == BwStatus::NoCrossing);
}

TEST_CASE("scheme_report: heavy noise at weak drive reports on-resonance failure") {
  SchemeSpec spec{Scheme::Rabi, units::khz_to_rad_s(4.0)};
  ShotConfig cfg;
  cfg.noise_mode = NoiseMode::QuasiStatic;
  cfg.ou = kPaperOu;  // b >> omega: the resonant gate barely transfers
  cfg.seed = 3;
  cfg.shots = 800;
  ReportOptions opts;
  opts.bw_shots = 400;
  const SchemeReport report = scheme_report(spec, cfg, opts);
  CHECK(report.f_paper < 0.1);
  CHECK(report.bw_status == BwStatus::OnResonanceFailure);
}

TEST_CASE("fit_ou: recovers the generating parameters on a coarse grid") {
  FitConfig fc;
  fc.omega = kOmega;
  fc.shots = 1200;
  fc.seed = 555;
  fc.threads = 2;

  std::vector<double> t_points;
  for (int j = 0; j < 14; ++j) t_points.push_back(1e-6 + j * 1.3e-6);

  const OuParams truth{units::khz_to_rad_s(42.0), 230e-6};
  FitConfig synth_fc = fc;
  synth_fc.seed = 909;  // observed data from an independent stream family
  const DecayCurve observed = simulate_rabi_decay(truth, t_points, synth_fc);

  const std::vector<double> b_grid{units::khz_to_rad_s(30.0), units::khz_to_rad_s(42.0),
                                   units::khz_to_rad_s(54.0)};
  const std::vector<double> tau_grid{80e-6, 230e-6, 600e-6};
  const OuFitResult fit = fit_ou(observed, b_grid, tau_grid, fc);
  CHECK(fit.params.b == doctest::Approx(truth.b));
  CHECK(fit.residual_map.size() == 9);
}

TEST_CASE("fit_ou: flat data is unidentifiable, short data rejected") {
  DecayCurve flat;
  for (int j = 0; j < 20; ++j) {
    flat.t.push_back(j * 1e-6);
    flat.value.push_back(0.5);
  }
  FitConfig fc;
  fc.omega = kOmega;
  CHECK_THROWS_AS(fit_ou(flat, {1.0}, {1e-4}, fc), UnidentifiableError);

  DecayCurve tiny;
  tiny.t = {0.0, 1e-6};
  tiny.value = {0.5, -0.5};
  CHECK_THROWS_AS(fit_ou(tiny, {1.0}, {1e-4}, fc), std::invalid_argument);
}

TEST_CASE("fit_dd_imperfection: recovers sigma on a coarse grid") {
  FitConfig fc;
  fc.omega = kOmega;
  fc.eps = 20e-9;
  fc.spacing = 125e-9;
  fc.ou = kPaperOu;
  fc.shots = 1200;
  fc.seed = 777;
  fc.threads = 2;

  std::vector<double> t_points;
  for (int j = 0; j < 12; ++j) t_points.push_back(2e-6 + j * 1.5e-6);

  FitConfig synth_fc = fc;
  synth_fc.seed = 31337;
  const DecayCurve observed = simulate_snrg_decay(DdImperfection{0.085}, t_points, synth_fc);

  const std::vector<double> sigma_grid{0.0, 0.04, 0.085, 0.17};
  const DdFitResult fit = fit_dd_imperfection(observed, sigma_grid, fc);
  CHECK(fit.imp.sigma == doctest::Approx(0.085));
}

TEST_CASE("enhancement_scan: high drive is noise-insensitive") {
  ShotConfig cfg = paper_cfg(1500, 99);
  ReportOptions opts;
  opts.bw_shots = 500;
  opts.min_fidelity_for_bw = 0.2;
  SchemeSpec snrg_template{Scheme::SnrgXy8, kOmega, kPi, 0.0, 20e-9, 125e-9};
  const auto rows =
      enhancement_scan({units::khz_to_rad_s(54.0), units::khz_to_rad_s(500.0)}, snrg_template,
                       cfg, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rabi.f_paper > 0.95);             // omega >> b
  CHECK(rows[1].fidelity_ratio == doctest::Approx(1.0).epsilon(0.05));
  CHECK(rows[0].fidelity_ratio > rows[1].fidelity_ratio);
}
