// End-to-end CLI checks through a subprocess: exit codes, byte determinism,
// worker-count invariance of output files. The binary path arrives in the
// SNRG_CLI environment variable (set by CTest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("SNRG_CLI");
  REQUIRE_MESSAGE(env != nullptr, "SNRG_CLI must point at the snrg binary");
  return env;
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("snrg_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kSmallScan =
    "[scheme]\n"
    "kind = rabi\n"
    "omega_khz = 54\n"
    "[noise]\n"
    "mode = ou_segment\n"
    "b_khz = 42\n"
    "tau_c_us = 230\n"
    "[run]\n"
    "seed = 31415\n"
    "[scan]\n"
    "kind = detuning_time\n"
    "detuning_khz = -100:100:5\n"
    "duration_us = 0:12:7\n"
    "shots_per_cell = 400\n";

}  // namespace

TEST_CASE("cli: gate runs and reports fidelity") {
  TempDir tmp;
  const fs::path out = tmp.path / "gate.json";
  const fs::path log = tmp.path / "gate.log";
  const int code = run(cli_path() + " gate --config ideal_rabi --out " + out.string() + " > " +
                       log.string() + " 2>&1");
  CHECK(code == 0);
  const std::string text = slurp(log);
  CHECK(text.find("fidelity") != std::string::npos);
  const std::string json = slurp(out);
  CHECK(json.find("\"bandwidth_status\": \"measured\"") != std::string::npos);
}

TEST_CASE("cli: identical seeds give byte-identical scan files across worker counts") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "scan.cfg";
  std::ofstream(cfg) << kSmallScan;
  const fs::path out1 = tmp.path / "a.csv";
  const fs::path out2 = tmp.path / "b.csv";

  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --threads 1 --out " +
            out1.string() + " > /dev/null") == 0);
  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --threads 8 --out " +
            out2.string() + " > /dev/null") == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("cli: shots override applies to scan cells") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "scan.cfg";
  std::ofstream(cfg) << kSmallScan;
  const fs::path full = tmp.path / "full.csv";
  const fs::path small = tmp.path / "small.csv";
  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --out " + full.string() +
            " > /dev/null") == 0);
  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --shots 100 --out " +
            small.string() + " > /dev/null") == 0);
  CHECK(slurp(full) != slurp(small));
}

TEST_CASE("cli: seed override changes the bytes, env override works") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "scan.cfg";
  std::ofstream(cfg) << kSmallScan;
  const fs::path out1 = tmp.path / "a.csv";
  const fs::path out2 = tmp.path / "b.csv";
  const fs::path out3 = tmp.path / "c.csv";
  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --out " + out1.string() +
            " > /dev/null") == 0);
  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --seed 999 --out " +
            out2.string() + " > /dev/null") == 0);
  CHECK(slurp(out1) != slurp(out2));
  CHECK(run("SNRG_SEED=999 " + cli_path() + " scan --config " + cfg.string() + " --out " +
            out3.string() + " > /dev/null") == 0);
  CHECK(slurp(out2) == slurp(out3));
}

TEST_CASE("cli: multi-scheme omega scan writes one grid per scheme") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "fig12.cfg";
  std::ofstream(cfg) << "[scheme]\n"
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
                        "seed = 5\n"
                        "[scan]\n"
                        "kind = detuning_omega\n"
                        "detuning_khz = -60:60:3\n"
                        "omega_khz = 54,150\n"
                        "shots_per_cell = 200\n"
                        "schemes = rabi,snrg\n";
  const fs::path out = tmp.path / "fig12.csv";
  CHECK(run(cli_path() + " scan --config " + cfg.string() + " --out " + out.string() +
            " > /dev/null") == 0);
  const std::string rabi_csv = slurp(tmp.path / "fig12_rabi.csv");
  const std::string snrg_csv = slurp(tmp.path / "fig12_snrg.csv");
  CHECK(rabi_csv.find("# scheme = rabi") != std::string::npos);
  CHECK(snrg_csv.find("# scheme = snrg") != std::string::npos);
  CHECK(rabi_csv.find("detuning_khz,omega_khz,mean_sz,stderr_sz") != std::string::npos);
  CHECK(rabi_csv != snrg_csv);
}

TEST_CASE("cli: config errors exit 1 and name the key") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "bad.cfg";
  std::ofstream(cfg) << "[noise]\nmodee = none\n";
  const fs::path log = tmp.path / "log.txt";
  const int code =
      run(cli_path() + " gate --config " + cfg.string() + " > " + log.string() + " 2>&1");
  CHECK(code == 1);
  CHECK(slurp(log).find("noise.modee") != std::string::npos);

  CHECK(run(cli_path() + " gate --config does_not_exist_anywhere 2> /dev/null") == 1);
  CHECK(run(cli_path() + " gate 2> /dev/null") == 1);  // missing --config
}

TEST_CASE("cli: waveform golden bytes and undersampling exit code") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "wf.cfg";
  std::ofstream(cfg) << "[scheme]\n"
                        "kind = snrg\n"
                        "omega_khz = 54\n"
                        "theta_pi = 1\n"
                        "cycles = 1\n"
                        "pulse_ns = 20\n"
                        "delta_z_khz = 30\n"
                        "[waveform]\n"
                        "sample_rate_mhz = 8\n"
                        "carrier = baseband\n";
  const fs::path out = tmp.path / "wf.csv";
  CHECK(run(cli_path() + " waveform --config " + cfg.string() + " --out " + out.string() +
            " > /dev/null") == 0);
  const std::string golden = slurp(fs::path(SNRG_TESTS_DIR) / "golden/waveform_snrg_n1.csv");
  CHECK(slurp(out) == golden);

  const fs::path rf_cfg = tmp.path / "rf.cfg";
  std::ofstream(rf_cfg) << "[scheme]\nkind = snrg\nomega_khz = 54\ntheta_pi = 1\ncycles = 1\n"
                           "pulse_ns = 20\ndelta_z_khz = 30\n"
                           "[waveform]\nsample_rate_mhz = 8\ncarrier = rf\nb0_gauss = 380\n";
  CHECK(run(cli_path() + " waveform --config " + rf_cfg.string() + " --out " + out.string() +
            " 2> /dev/null") == 2);
}

TEST_CASE("cli: fit on a flat file exits 2, on synthetic data recovers") {
  TempDir tmp;
  const fs::path data = tmp.path / "flat.csv";
  {
    std::ofstream os(data);
    os << "t_us,mean_sz\n";
    for (int j = 0; j < 20; ++j) os << j << ",0.5\n";
  }
  const fs::path cfg = tmp.path / "fit.cfg";
  std::ofstream(cfg) << "[scheme]\nkind = rabi\nomega_khz = 54\n"
                        "[fit]\nkind = ou\nb_khz = 30,42\ntau_c_us = 230\nshots_per_point = 200\n";
  CHECK(run(cli_path() + " fit --config " + cfg.string() + " --data " + data.string() +
            " 2> /dev/null") == 2);
  CHECK(run(cli_path() + " fit --config " + cfg.string() + " --data " + tmp.path.string() +
            "/missing.csv 2> /dev/null") == 2);

  // quick end-to-end round trip: scan produces a decay slice, fit consumes it
  const fs::path decay_cfg = tmp.path / "decay.cfg";
  std::ofstream(decay_cfg) << "[scheme]\n"
                              "kind = rabi\n"
                              "omega_khz = 54\n"
                              "[noise]\n"
                              "mode = ou_segment\n"
                              "b_khz = 42\n"
                              "tau_c_us = 230\n"
                              "[run]\n"
                              "seed = 777\n"
                              "[scan]\n"
                              "kind = detuning_time\n"
                              "detuning_khz = 0:0:1\n"
                              "duration_us = 0.5:14:12\n"
                              "shots_per_cell = 1500\n";
  const fs::path decay_csv = tmp.path / "decay.csv";
  CHECK(run(cli_path() + " scan --config " + decay_cfg.string() + " --out " +
            decay_csv.string() + " > /dev/null") == 0);
  // strip the detuning column into (t_us, mean_sz)
  const fs::path curve_csv = tmp.path / "curve.csv";
  {
    std::ifstream is(decay_csv);
    std::ofstream os(curve_csv);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
      const auto c1 = line.find(',');
      os << line.substr(c1 + 1) << "\n";  // duration_us,mean_sz,stderr -> keep first two
    }
  }
  const fs::path fit_log = tmp.path / "fit.log";
  CHECK(run(cli_path() + " fit --config " + cfg.string() + " --data " + curve_csv.string() +
            " > " + fit_log.string() + " 2>&1") == 0);
  CHECK(slurp(fit_log).find("fitted b_khz = 42") != std::string::npos);
}
