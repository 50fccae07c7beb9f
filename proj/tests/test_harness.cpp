#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polyrad/gaussian.hpp"
#include "polyrad/harness.hpp"
#include "polyrad/parallel.hpp"

using namespace polyrad;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.body = BodyKind::Cube;
  c.n = 6;
  c.N_list = {6, 36};
  c.k_list = {1, 3, 6};
  c.M = 8;
  c.R = 5;
  c.seed = 99;
  return c;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("config parsing") {
  const SweepConfig c = parse_config(
      R"({"body":"simplex","n":8,"N_list":[8,64],"k_list":[1,8],"M":4,"R":2,"m":500,"s":2,"seed":18446744073709551615,"out":"x.csv"})");
  CHECK(c.body == BodyKind::Simplex);
  CHECK(c.n == 8);
  CHECK(c.N_list == std::vector<long long>{8, 64});
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.s == 2.0);

  CHECK_THROWS_WITH(parse_config(R"({"nn": 3})"), "unknown config key 'nn'");
  CHECK_THROWS_WITH(parse_config(R"({"n": "three"})"), "config field 'n' has the wrong type");
  CHECK_THROWS_WITH(parse_config(R"({"body": "sphere"})"),
                    doctest::Contains("valid kinds: cube, ball, cross, simplex"));
  CHECK_THROWS_WITH(parse_config(R"({"n": 8, "N_list": [4], "k_list": [1]})"),
                    "N_list entries must be >= n");
  CHECK_THROWS_WITH(parse_config(R"({"n": 8, "N_list": [8], "k_list": [9]})"),
                    "k_list entries must lie in [1, n]");
  CHECK_THROWS(parse_config("[1,2]"));
  CHECK_THROWS(parse_config("{"));
}

TEST_CASE("regime flags") {
  CHECK(regime_flag(100, 10000) == "in-regime");
  CHECK(regime_flag(100, 400) == "upper-only");
  CHECK(regime_flag(16, 256) == "out-of-regime");  // e^4 < 256
  CHECK(regime_flag(16, 16) == "upper-only");
}

TEST_CASE("sweep grid, ratios and determinism") {
  const SweepConfig c = small_config();
  set_thread_count(1);
  const auto rows = run_sweep(c);
  CHECK(rows.size() == 30);
  const std::string csv = to_csv(rows);
  CHECK(count_lines(csv) == 31);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  for (const auto& r : rows) {
    CHECK(r.ratio == r.estimate / r.normalizer);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.normalizer == doctest::Approx(std::max(std::sqrt(r.k), std::sqrt(std::log(r.N))) * r.L_K));
  }
  // grid order: N, then k, then replica
  CHECK(rows[0].N == 6);
  CHECK(rows[0].k == 1);
  CHECK(rows[1].replica == 1);
  CHECK(rows[5].k == 3);
  CHECK(rows[15].N == 36);

  CHECK(to_csv(run_sweep(c)) == csv);
  set_thread_count(4);
  CHECK(to_csv(run_sweep(c)) == csv);
  set_thread_count(1);

  SweepConfig other = c;
  other.seed = 100;
  CHECK(to_csv(run_sweep(other)) != csv);
}

TEST_CASE("dense ball sweep rows sit at the ball radius") {
  SweepConfig c;
  c.body = BodyKind::Ball;
  c.n = 2;
  c.N_list = {20000};
  c.k_list = {1, 2};
  c.M = 64;
  c.R = 3;
  const auto rows = run_sweep(c);
  const double r = make_body(BodyKind::Ball, 2).scale();
  for (const auto& row : rows) CHECK(within_sigmas(row.estimate, r, row.std_error, 3.0, 0.01 * r));

  const auto cells = probability_band_report(rows, 0.0, 10.0, 1.0);
  REQUIRE(cells.size() == 2);
  for (const auto& cell : cells) {
    CHECK(cell.inside_fraction == 1.0);
    CHECK(cell.replicas == 3);
    CHECK(cell.target == doctest::Approx(1.0 - 1.0 / 20000));
  }
  for (const auto& cell : probability_band_report(rows, 10.0, 11.0, 1.0)) CHECK(cell.inside_fraction == 0.0);
}

TEST_CASE("write_csv reports unwritable paths") {
  CHECK_THROWS_WITH(write_csv({}, "/nonexistent-dir/out.csv"),
                    doctest::Contains("cannot write output file"));
}

TEST_CASE("gaussian_report") {
  const auto cells = gaussian_report({1, 6}, {1, 1000}, 6, 400, StreamKey{5, {}});
  REQUIRE(cells.size() == 4);
  for (const auto& cell : cells) {
    INFO("k=", cell.k, " N=", cell.N);
    CHECK(cell.agrees);
    CHECK(cell.oracle == expected_max_chi(cell.k, cell.N));
  }
  // k = n, N = 1: the mean of chi_6
  CHECK(cells[2].oracle == doctest::Approx(std::sqrt(2.0) * std::tgamma(3.5) / std::tgamma(3.0)));
  const double r = cells[1].oracle / std::sqrt(std::log(1000.0));
  CHECK(r >= 1.0);
  CHECK(r <= 1.6);
  const auto again = gaussian_report({1, 6}, {1, 1000}, 6, 50, StreamKey{6, {}});
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(again[i].oracle == cells[i].oracle);
}

TEST_CASE("run_checks passes by default and catches a mis-scaled body") {
  const SweepConfig c;
  const auto results = run_checks(c);
  CHECK(results.size() >= 10);
  for (const auto& r : results) {
    INFO(r.name, " ", r.observed);
    CHECK_FALSE(r.failed());
  }
  CHECK(results.front().name == "profile_monotone");
  CHECK(results.front().verdict == "exact");

  const Body bad = make_body(c.body, c.n).rescaled(2.0);
  const auto mutated = run_checks(c, bad);
  bool second_moment_failed = false;
  for (const auto& r : mutated)
    if (r.name == "second_moment_identity") second_moment_failed = r.failed();
  CHECK(second_moment_failed);
  CHECK(format_checks(mutated).find("FAIL  second_moment_identity") != std::string::npos);
}

TEST_CASE("plot_svg") {
  SweepConfig c;
  c.body = BodyKind::Ball;
  c.n = 2;
  c.N_list = {20000};
  c.k_list = {1, 2};
  c.M = 64;
  c.R = 2;
  const std::string csv = to_csv(run_sweep(c));
  const std::string svg = plot_svg(csv, "k", "estimate");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  CHECK(plot_svg(csv, "k", "estimate") == svg);

  // the ball's plotted curve is flat
  const auto rows = run_sweep(c);
  double lo = 1e9, hi = -1e9;
  for (int k : {1, 2}) {
    double mean = 0.0;
    int count = 0;
    for (const auto& r : rows)
      if (r.k == k) mean += r.estimate, ++count;
    mean /= count;
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  CHECK(hi - lo < 0.05);

  CHECK_THROWS_WITH(plot_svg(csv, "k", "nope"),
                    "unknown column 'nope'; available: body, n, N, k, replica, seed, estimate, "
                    "stderr, L_K, normalizer, ratio, regime_flag");
}
