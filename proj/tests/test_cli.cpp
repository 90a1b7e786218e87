// End-to-end checks of the command-line tool (runs the built binary).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prh/ground_state.hpp"
#include "prh/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "prh_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const fs::path log = work_dir() / "out.log";
  const std::string cmd =
      std::string(PRH_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream is(log);
    std::stringstream ss;
    ss << is.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

const std::string small = "--grid-n 256 --grid-r 20 --tol 1e-10";

} // namespace

TEST_CASE("groundstate writes a reloadable profile") {
  const fs::path out = work_dir() / "w.profile";
  std::string log;
  const int rc = run_cli("groundstate --kind energy --c inf " + small +
                             " --out " + out.string(),
                         &log);
  CHECK(rc == 0);
  INFO(log);
  CHECK(fs::exists(out));
  const prh::GroundStateResult r = prh::load_profile(out);
  CHECK(r.converged);
  CHECK(prh::equation_residual(r) <=
        std::max(100.0 * r.residual_l2, 1e-8));
}

TEST_CASE("verify --suite fast exits zero on a correct build") {
  std::string log;
  const int rc = run_cli("verify --suite fast --grid-n 512 --grid-r 25", &log);
  INFO(log);
  CHECK(rc == 0);
  CHECK(log.find("criteria passed") != std::string::npos);
}

TEST_CASE("sweep emits csv/json/svg with a fitted slope near -2") {
  const fs::path prefix = work_dir() / "rates";
  std::string log;
  const int rc = run_cli(
      "sweep --kind energy " + small +
          " --c-min 10 --c-max 40 --order 1 --s 0 1 --svg --workers 1 --out " +
          prefix.string(),
      &log);
  INFO(log);
  CHECK(rc == 0);
  CHECK(fs::exists(prefix.string() + ".csv"));
  CHECK(fs::exists(prefix.string() + ".json"));
  CHECK(fs::exists(prefix.string() + ".svg"));
  std::ifstream is(prefix.string() + ".csv");
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string csv = ss.str();
  const size_t pos = csv.find("# fit u_resid_n0_h1: slope = ");
  REQUIRE(pos != std::string::npos);
  const double slope = std::stod(csv.substr(pos + 29));
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.1));
}

TEST_CASE("action sweeps report the Nehari scale column") {
  const fs::path prefix = work_dir() / "action_rates";
  std::string log;
  const int rc = run_cli("sweep --kind action " + small +
                             " --c-min 10 --c-max 40 --order 1 --s 1 "
                             "--workers 1 --out " +
                             prefix.string(),
                         &log);
  INFO(log);
  CHECK(rc == 0);
  std::ifstream is(prefix.string() + ".csv");
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().find(",t_c") != std::string::npos);
  CHECK(ss.str().find("# fit tc_gap: slope = ") != std::string::npos);
}

TEST_CASE("expand persists a series that reloads") {
  const fs::path out = work_dir() / "series.prh";
  std::string log;
  const int rc = run_cli("expand --kind energy " + small +
                             " --order 1 --krylov-tol 1e-10 --out " +
                             out.string(),
                         &log);
  INFO(log);
  CHECK(rc == 0);
  const prh::ExpansionSeries s = prh::load_series(out);
  CHECK(s.order == 1);
  CHECK(s.b.size() == 1);
  CHECK(s.b[0] > 0.0);
}

TEST_CASE("cache makes repeated solves load from disk") {
  const fs::path cache = work_dir() / "cache";
  const std::string args = "groundstate --kind energy --c inf " + small +
                           " --cache-dir " + cache.string();
  std::string first_log, second_log;
  CHECK(run_cli(args, &first_log) == 0);
  CHECK(run_cli(args, &second_log) == 0);
  CHECK(first_log.find("cache hit") == std::string::npos);
  CHECK(second_log.find("cache hit") != std::string::npos);
  // identical reported values
  const auto tail = [](const std::string& s) {
    return s.substr(s.find("level = "));
  };
  CHECK(tail(first_log) == tail(second_log));
}

TEST_CASE("cache directory can come from the environment") {
  const fs::path cache = work_dir() / "env_cache";
  const fs::path log = work_dir() / "env.log";
  const std::string cmd = "PRHARTREE_CACHE_DIR=" + cache.string() + " " +
                          PRH_CLI_PATH + " groundstate --kind energy --c inf " +
                          small + " > " + log.string() + " 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::ifstream is(log);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().find("cache hit") != std::string::npos);
}

TEST_CASE("config file supplies options") {
  const fs::path cfg = work_dir() / "run.cfg";
  {
    std::ofstream os(cfg);
    os << "[groundstate]\n";
    os << "kind = energy\n";
    os << "c = inf\n";
    os << "grid-n = 192\n";
    os << "grid-r = 18\n";
    os << "tol = 1e-9\n";
  }
  std::string log;
  const int rc = run_cli("--config " + cfg.string() + " groundstate", &log);
  INFO(log);
  CHECK(rc == 0);
}

TEST_CASE("version flag prints the library version") {
  std::string log;
  CHECK(run_cli("--version", &log) == 0);
  CHECK(log.find("0.1.0") != std::string::npos);
}

TEST_CASE("error categories map to distinct exit codes") {
  std::string log;
  CHECK(run_cli("no-such-subcommand", &log) == 2);
  CHECK(run_cli("groundstate --kind energy --c -5 " + small, &log) == 3);
  CHECK(run_cli("groundstate --kind energy --c 2 " + small, &log) == 5);
  CHECK(run_cli("expand --base /nonexistent.profile --order 1 " + small, &log) ==
        4);
}
