#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snrg/config.hpp"
#include "snrg/units.hpp"

using namespace snrg;

TEST_CASE("grid spec: linspace and explicit lists") {
  CHECK(GridSpec::parse("0:10:3").values() == std::vector<double>{0.0, 5.0, 10.0});
  CHECK(GridSpec::parse("1,2,5").values() == std::vector<double>{1.0, 2.0, 5.0});
  CHECK(GridSpec::parse("7:7:1").values() == std::vector<double>{7.0});
  CHECK_THROWS_AS(GridSpec::parse("1:2:0"), ConfigError);
  CHECK_THROWS_AS(GridSpec::parse("a,b"), ConfigError);
}

TEST_CASE("config: format then parse is the identity") {
  RunConfig cfg;
  cfg.scheme = Scheme::SnrgXy8;
  cfg.omega_khz = 54.123456789012345;
  cfg.theta_pi = 0.87654321;
  cfg.delta_z_khz = -13.25;
  cfg.cycles = 7;
  cfg.pulse_ns = 19.5;
  cfg.spacing_ns = 127.5;
  cfg.noise_mode = NoiseMode::OuSegment;
  cfg.b_khz = 41.99999999999999;
  cfg.tau_c_us = 229.5;
  cfg.sigma_dd = 0.085;
  cfg.shots = 1234;
  cfg.seed = 9876543210123456789ULL;
  cfg.threads = 3;
  cfg.convention = Convention::P1;
  cfg.scan_kind = ScanKind::DetuningOmega;
  cfg.scan_schemes = {Scheme::Rabi, Scheme::SnrgXy8};
  cfg.fit_kind = FitKind::Dd;
  cfg.carrier = CarrierModel::Rf;
  cfg.b0_gauss = 380.0;

  const std::string text = cfg.format();
  const RunConfig parsed = parse_config(text);
  CHECK(parsed.format() == text);
  CHECK(parsed.scheme == cfg.scheme);
  CHECK(parsed.omega_khz == cfg.omega_khz);
  CHECK(parsed.theta_pi == cfg.theta_pi);
  CHECK(parsed.delta_z_khz == cfg.delta_z_khz);
  CHECK(parsed.cycles == cfg.cycles);
  CHECK(parsed.pulse_ns == cfg.pulse_ns);
  CHECK(parsed.spacing_ns == cfg.spacing_ns);
  CHECK(parsed.noise_mode == cfg.noise_mode);
  CHECK(parsed.b_khz == cfg.b_khz);
  CHECK(parsed.tau_c_us == cfg.tau_c_us);
  CHECK(parsed.sigma_dd == cfg.sigma_dd);
  CHECK(parsed.shots == cfg.shots);
  CHECK(parsed.seed == cfg.seed);
  CHECK(parsed.threads == cfg.threads);
  CHECK(parsed.convention == cfg.convention);
  CHECK(parsed.scan_kind == cfg.scan_kind);
  CHECK(parsed.scan_schemes == cfg.scan_schemes);
  CHECK(parsed.fit_kind == cfg.fit_kind);
  CHECK(parsed.carrier == cfg.carrier);
  CHECK(parsed.b0_gauss == cfg.b0_gauss);
}

TEST_CASE("config: unit conversion to internal angular units") {
  RunConfig cfg;
  cfg.omega_khz = 54.0;
  cfg.pulse_ns = 20.0;
  cfg.tau_c_us = 230.0;
  CHECK(cfg.omega() == doctest::Approx(2.0 * 3.14159265358979323846 * 54e3));
  CHECK(cfg.eps() == doctest::Approx(20e-9));
  CHECK(cfg.shot_config().ou.tau_c == doctest::Approx(230e-6));
}

TEST_CASE("config: errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config("[noise]\nfoo = 1\n"),
                       doctest::Contains("noise.foo"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[scheme]\nomega_khz = abc\n"),
                       doctest::Contains("scheme.omega_khz"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scheme]\nkind = warp\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no equals sign"), ConfigError);
}

TEST_CASE("config: comments and blank lines are ignored") {
  const RunConfig cfg = parse_config(
      "# a comment\n"
      "[scheme]\n"
      "kind = snrg  # trailing comment\n"
      "\n"
      "omega_khz = 10\n");
  CHECK(cfg.scheme == Scheme::SnrgXy8);
  CHECK(cfg.omega_khz == 10.0);
}

TEST_CASE("presets: all bundled configurations parse") {
  for (const auto& [name, text] : config_presets()) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_config(text));
  }
  CHECK(load_config("paper_snrg").scheme == Scheme::SnrgXy8);
  CHECK(load_config("paper_snrg").sigma_dd == 0.085);
  CHECK(load_config("paper_fig4_rabi").b_khz == 42.0);
  CHECK(load_config("paper_fit_ou").tau_c_us == 230.0);
  CHECK_THROWS_AS(load_config("no_such_preset_or_file"), ConfigError);
}
