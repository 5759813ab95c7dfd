// Drives the installed CLI binary end to end: exit codes, output files,
// deterministic reruns, and validation diagnostics.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  auto log = fs::temp_directory_path() / "vlift_cli_log.txt";
  std::string cmd = std::string(VLIFT_CLI_PATH) + " " + args + " > " +
                    log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_config(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  out << body;
}

std::vector<std::vector<double>> read_csv(const fs::path& p,
                                          std::string* header = nullptr) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::string kConfigDir = VLIFT_CONFIG_DIR;

}  // namespace

TEST_CASE("gp-regime produces the report file") {
  auto out = fresh_dir("vlift_cli_regime");
  auto r = run_cli("gp-regime --config " + kConfigDir + "/sodium_regime.ini" +
                   " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::string rep = slurp(out / "regime.txt");
  CHECK(rep.find("xi ") != std::string::npos);
  CHECK(rep.find("center_ratio ") != std::string::npos);
  CHECK(rep.find("t0_seconds ") != std::string::npos);
  CHECK(rep.find("nonlinearity_negligible 1") != std::string::npos);
  CHECK(rep.find("trap_negligible 1") != std::string::npos);
  CHECK(rep.find("xi_quoted 0.001") != std::string::npos);
}

TEST_CASE("unknown config keys are fatal and listed") {
  auto out = fresh_dir("vlift_cli_badkey");
  auto cfg = out / "bad.ini";
  write_config(cfg,
               "[trap]\nomega_tilde = 1 1 1\nomgea_sq_int = 0.1\n"
               "[stats]\nkind = ground\n");
  auto r = run_cli("moments --config " + cfg.string() + " --out " +
                   out.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("omgea_sq_int") != std::string::npos);
  CHECK(r.output.find("stats") != std::string::npos);
}

TEST_CASE("frequency collapse is a validation error naming the axis") {
  auto out = fresh_dir("vlift_cli_collapse");
  auto cfg = out / "collapse.ini";
  write_config(cfg,
               "[trap]\nomega_tilde = 2.0 1.0 2.0\nomega_sq_int = 1.5\n"
               "norm = 1.0\n[state]\nkind = ground\n[run]\nt_final = 1\n");
  auto r = run_cli("moments --config " + cfg.string() + " --out " +
                   out.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("along y") != std::string::npos);
}

TEST_CASE("moments runs are byte-identical across reruns") {
  auto out1 = fresh_dir("vlift_cli_m1");
  auto out2 = fresh_dir("vlift_cli_m2");
  std::string base = "moments --config " + kConfigDir + "/single_vortex.ini";
  CHECK(run_cli(base + " --out " + out1.string()).exit_code == 0);
  CHECK(run_cli(base + " --out " + out2.string()).exit_code == 0);
  CHECK(slurp(out1 / "moments.csv") == slurp(out2 / "moments.csv"));
  std::string header;
  auto rows = read_csv(out1 / "moments.csv", &header);
  CHECK(header.substr(0, 7) == "time,N,");
  CHECK(rows.size() == 121);
  REQUIRE(!rows.empty());
  CHECK(rows[0].size() == 20);
}

TEST_CASE("track-vortices: isotropic circle in the trajectory CSV") {
  auto out = fresh_dir("vlift_cli_circle");
  auto r = run_cli("track-vortices --config " + kConfigDir +
                   "/isotropic_vortex.ini --out " + out.string());
  CHECK(r.exit_code == 0);
  std::string header;
  auto rows = read_csv(out / "trajectory.csv", &header);
  CHECK(header ==
        "time,x_analytic,y_analytic,det,x_tracked,y_tracked,n_zeros");
  REQUIRE(rows.size() >= 60);
  for (const auto& row : rows) {
    double xa = row[1], ya = row[2];
    CHECK(std::abs(xa * xa + ya * ya - 0.64) < 1e-6);
    // Tracked zeros agree with the analytic zero.
    CHECK(std::abs(row[4] - xa) < 1e-8);
    CHECK(std::abs(row[5] - ya) < 1e-8);
    CHECK(row[6] == 1.0);
  }
}

TEST_CASE("evolve-nonlinear emits lift and moment trajectories") {
  auto out = fresh_dir("vlift_cli_lift");
  auto r = run_cli("evolve-nonlinear --config " + kConfigDir +
                   "/single_vortex.ini --out " + out.string());
  CHECK(r.exit_code == 0);
  std::string header;
  auto rows = read_csv(out / "lift.csv", &header);
  CHECK(header == "time,ax,ay,az,bx,by,bz,f");
  CHECK(rows.size() == 121);
  // a, b, f vanish at t=0.
  for (size_t c = 1; c < 8; ++c) CHECK(rows[0][c] == 0.0);
  auto moments = read_csv(out / "moments.csv", &header);
  CHECK(moments.size() == 121);
}

TEST_CASE("verify: zero-coupling run reaches the 1e-8 regime") {
  auto out = fresh_dir("vlift_cli_verify");
  auto r = run_cli("verify --config " + kConfigDir +
                   "/verify_linear.ini --out " + out.string() + " --quiet");
  CHECK(r.exit_code == 0);
  auto rows = read_csv(out / "verify.csv");
  REQUIRE(rows.size() >= 3);
  for (const auto& row : rows) CHECK(row[1] < 1e-8);
}

TEST_CASE("verify: interacting run matches the lift at the dt^2 level") {
  auto out = fresh_dir("vlift_cli_verify_nl");
  auto r = run_cli("verify --config " + kConfigDir +
                   "/verify_nonlinear.ini --out " + out.string() + " --quiet");
  CHECK(r.exit_code == 0);
  auto rows = read_csv(out / "verify.csv");
  REQUIRE(rows.size() >= 3);
  for (const auto& row : rows) CHECK(row[1] < 1e-4);
}

TEST_CASE("oracle-harmonic writes moments, norms and the final grid") {
  auto out = fresh_dir("vlift_cli_oracle");
  auto cfg = out / "oracle.ini";
  write_config(cfg,
               "[trap]\nomega_tilde = 1.2 1.0 1.4\nomega_sq_int = 0.15\n"
               "norm = 1.0\n[state]\nkind = vortex\na_disp = 0.4\n"
               "[grid]\nn = 24 24 24\nbox_widths = 8.5\n"
               "[run]\nt_final = 0.05\ndt = 1e-3\nsamples = 6\n");
  auto r = run_cli("oracle-harmonic --config " + cfg.string() + " --out " +
                   out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "moments.csv"));
  CHECK(fs::exists(out / "norm.csv"));
  CHECK(fs::exists(out / "final.bin"));
  auto norms = read_csv(out / "norm.csv");
  REQUIRE(norms.size() >= 2);
  CHECK(std::abs(norms.back()[1] - norms.front()[1]) < 1e-9);
}

TEST_CASE("missing required keys fail cleanly") {
  auto out = fresh_dir("vlift_cli_missing");
  auto cfg = out / "missing.ini";
  write_config(cfg, "[trap]\nomega_tilde = 1 1 1\n[state]\nkind = ground\n");
  auto r = run_cli("moments --config " + cfg.string() + " --out " +
                   out.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("t_final") != std::string::npos);
}
