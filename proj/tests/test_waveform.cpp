#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "snrg/sequences.hpp"
#include "snrg/units.hpp"
#include "snrg/waveform.hpp"

using namespace snrg;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

Sequence golden_sequence() {
  const double omega = kTwoPi * 54e3;
  return build_snrg(1, kPi, omega, 20e-9, kTwoPi * 30e3);
}
}  // namespace

TEST_CASE("render: constant field and drive give a pure carrier in rf mode") {
  const double omega = kTwoPi * 54e3;
  const double gamma = units::nv_gamma_hz_per_gauss;
  const double f0 = 40e3;  // carrier gamma * B_z
  const Sequence seq = build_rabi(omega, kPi, 0.0);
  const Waveform wf = render_waveform(seq, 2e6, gamma, CarrierModel::Rf, f0);
  const double amp = omega / (kTwoPi * gamma);
  for (std::size_t k = 0; k < wf.t.size(); ++k) {
    const double expected = amp * std::cos(kTwoPi * f0 * wf.t[k]);
    CHECK(wf.drive_i[k] == doctest::Approx(expected).epsilon(1e-9));
    CHECK(wf.drive_q[k] == 0.0);
    CHECK(wf.marker[k] == 0);
  }
}

TEST_CASE("render: snrg gradient channel equals B1 times the pulse train") {
  const Sequence seq = golden_sequence();
  const double gamma = units::nv_gamma_hz_per_gauss;
  const Waveform wf = render_waveform(seq, 8e6, gamma, CarrierModel::Baseband);
  const double b1 = seq.delta_z / (kTwoPi * gamma);
  const Timings tm = seq.boundaries();
  for (std::size_t k = 0; k < wf.t.size(); ++k) {
    const int u = pulse_train_u(wf.t[k], tm);
    CHECK(wf.gradient[k] == doctest::Approx(b1 * u).epsilon(1e-12));
    CHECK(wf.marker[k] == (u == 0 ? 1 : 0));
  }
}

TEST_CASE("render: two-segment field carrier matches the closed-form phase jump") {
  // B_z = +B1 for t < T, -B1 after: the second tone acquires the phase
  // offset 2 pi (f2 - f1) T relative to a naive carrier restart.
  const double omega = kTwoPi * 54e3;
  const double delta_z = kTwoPi * 25e3;
  const double t_half = 20e-6;
  Sequence seq;
  seq.scheme = Scheme::SnrgXy8;
  seq.fm_tracking = true;
  seq.delta_z = delta_z;
  Segment s;
  s.kind = SegmentKind::Drive;
  s.omega = omega;
  s.phi = 0.0;
  s.duration = t_half;
  s.detuning_sign = 1;
  seq.segments.push_back(s);
  s.detuning_sign = -1;
  seq.segments.push_back(s);
  seq.total_theta = 2.0 * omega * t_half;

  const double gamma = units::nv_gamma_hz_per_gauss;
  const Waveform wf = render_waveform(seq, 4e6, gamma, CarrierModel::Baseband);
  const double amp = omega / (kTwoPi * gamma);
  // delta_phi per the piecewise-carrier rule: 2 pi (f2 - f1) T with
  // f2 - f1 = -2 * delta_z / (2 pi)
  const double delta_phi = -2.0 * delta_z * t_half;
  for (std::size_t k = 0; k < wf.t.size(); ++k) {
    const double t = wf.t[k];
    const double phase =
        t < t_half ? delta_z * t : -delta_z * t - delta_phi;
    CHECK(wf.drive_i[k] == doctest::Approx(amp * std::cos(phase)).epsilon(1e-9));
    CHECK(wf.drive_q[k] == doctest::Approx(amp * std::sin(phase)).epsilon(1e-9));
  }
}

TEST_CASE("render: undersampling and unsampleable pulses are rejected") {
  const double omega = kTwoPi * 54e3;
  const double gamma = units::nv_gamma_hz_per_gauss;
  const Sequence seq = golden_sequence();
  CHECK_THROWS_AS(render_waveform(seq, 100e3, gamma, CarrierModel::Baseband),
                  UndersamplingError);
  CHECK_THROWS_AS(render_waveform(seq, 8e6, gamma, CarrierModel::Rf, 10e6),
                  UndersamplingError);
  const Sequence instant = build_snrg(1, kPi, omega, 0.0, kTwoPi * 30e3);
  CHECK_THROWS_AS(render_waveform(instant, 8e6, gamma, CarrierModel::Baseband),
                  std::invalid_argument);
}

TEST_CASE("render: golden file is byte-stable") {
  const Waveform wf =
      render_waveform(golden_sequence(), 8e6, units::nv_gamma_hz_per_gauss,
                      CarrierModel::Baseband);
  std::ostringstream os;
  write_waveform_csv(os, wf);

  const std::string golden_path = std::string(SNRG_TESTS_DIR) + "/golden/waveform_snrg_n1.csv";
  std::ifstream golden(golden_path, std::ios::binary);
  REQUIRE(golden.good());
  std::ostringstream expected;
  expected << golden.rdbuf();
  // The golden file is the CLI's output: resolved-config comments followed
  // by the rendered table; the renderer owns everything from the marker on.
  const std::string full = expected.str();
  const auto start = full.find("# snrg waveform v1");
  REQUIRE(start != std::string::npos);
  CHECK(os.str() == full.substr(start));
}
