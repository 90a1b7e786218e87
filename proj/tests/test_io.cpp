#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prh/io.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace prh;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "prh_io_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

GroundStateResult make_result() {
  const GridPtr g = prh::test::small_grid(64, 12.0);
  PhysicalParams p;
  p.c = 42.0;
  return GroundStateResult{prh::test::random_smooth(g, 3),
                           ProblemKind::energy,
                           p,
                           -0.125,
                           0.375,
                           3.2e-11,
                           517,
                           true,
                           0.0};
}

SweepConfig mini_config() {
  SweepConfig cfg;
  cfg.kind = ProblemKind::energy;
  cfg.c_values = {10.0, 14.0, 20.0, 28.0};
  cfg.order = 1;
  cfg.s_values = {0.0, 1.0};
  cfg.grid_n = 192;
  cfg.grid_r = 18.0;
  cfg.solver.tol = 1e-10;
  cfg.krylov_tol = 1e-10;
  cfg.workers = 1;
  return cfg;
}

const SweepReport& mini_report() {
  static const SweepReport rep = sweep(mini_config());
  return rep;
}

} // namespace

TEST_CASE("format_double round-trips exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values = {0.0,    1.0 / 3.0, 1e-300, -6.02e23,
                                5e-324, 1e308,     -0.0,   3.5};
  for (int i = 0; i < 50; ++i) values.push_back(u(rng) * std::pow(10.0, i % 40));
  for (double v : values) {
    // strtod parses subnormals that std::stod reports as out of range
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("fnv1a64 matches reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("profile save/load round-trips exactly") {
  const GroundStateResult r = make_result();
  const fs::path path = temp_dir() / "profile.prh";
  save_profile(path, r);
  const GroundStateResult back = load_profile(path);
  CHECK(back.kind == r.kind);
  CHECK(back.params.m == r.params.m);
  CHECK(back.params.c == r.params.c);
  CHECK(back.level == r.level);
  CHECK(back.multiplier == r.multiplier);
  CHECK(back.residual_l2 == r.residual_l2);
  CHECK(back.iterations == r.iterations);
  CHECK(back.converged == r.converged);
  CHECK(back.profile.grid().size() == r.profile.grid().size());
  CHECK(back.profile.grid().radius() == r.profile.grid().radius());
  for (int i = 0; i < r.profile.size(); ++i)
    CHECK(back.profile[i] == r.profile[i]);
}

TEST_CASE("corrupted profiles are rejected by the hash") {
  const fs::path path = temp_dir() / "corrupt.prh";
  save_profile(path, make_result());
  std::string text;
  {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  const size_t mid = text.size() / 2;
  text[mid] = text[mid] == '4' ? '5' : '4';
  {
    std::ofstream os(path);
    os << text;
  }
  CHECK_THROWS_AS(load_profile(path), IoError);
  CHECK_THROWS_AS(load_profile(temp_dir() / "missing.prh"), IoError);
}

TEST_CASE("series save/load round-trips") {
  PhysicalParams p;
  SolverOptions o;
  o.tol = 1e-10;
  const GridPtr g = prh::test::small_grid(192, 18.0);
  const auto base = solve_energy(g, p, o);
  const auto s = build_energy_expansion(base, 2, 1e-10);
  const fs::path path = temp_dir() / "series.prh";
  save_series(path, s);
  const ExpansionSeries back = load_series(path);
  CHECK(back.order == 2);
  CHECK(back.kind == ProblemKind::energy);
  CHECK(back.a == s.a);
  CHECK(back.b == s.b);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < g->size(); ++i)
      CHECK(back.corrections[j][i] == s.corrections[j][i]);
  CHECK(back.base.multiplier == s.base.multiplier);
}

TEST_CASE("CSV rows match the declared column header") {
  const fs::path path = temp_dir() / "report.csv";
  save_report_csv(path, mini_report());
  std::ifstream is(path);
  std::string line, header;
  size_t expected_cols = 0;
  size_t data_rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const size_t cols = 1 + std::count(line.begin(), line.end(), ',');
    if (expected_cols == 0) {
      header = line;
      expected_cols = cols;
      CHECK(header.rfind("c,", 0) == 0);
    } else {
      CHECK(cols == expected_cols);
      ++data_rows;
    }
  }
  CHECK(data_rows == mini_report().records.size());
}

TEST_CASE("CSV carries fitted slopes as comments") {
  const fs::path path = temp_dir() / "report2.csv";
  save_report_csv(path, mini_report());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().find("# fit u_resid_n0_h1: slope = ") != std::string::npos);
}

TEST_CASE("JSON mirror is parseable and complete") {
  const std::string text = report_to_json(mini_report());
  // minimal structural pokes without re-parsing machinery
  CHECK(text.find("\"records\"") != std::string::npos);
  CHECK(text.find("\"fits\"") != std::string::npos);
  CHECK(text.find("\"energy_gap_estimate\"") != std::string::npos);
  const fs::path path = temp_dir() / "report.json";
  save_report_json(path, mini_report());
  CHECK(fs::file_size(path) > 100);
}

TEST_CASE("SVG plot is emitted with data and fit lines") {
  const fs::path path = temp_dir() / "report.svg";
  save_report_svg(path, mini_report());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string svg = ss.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
