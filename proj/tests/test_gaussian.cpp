#include <doctest.h>

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "polyrad/gaussian.hpp"
#include "polyrad/grassmann.hpp"
#include "polyrad/radii.hpp"
#include "polyrad/special.hpp"
#include "polyrad/stats.hpp"

using namespace polyrad;

namespace {

// E max_{j<=N} |G_j|, G_j ~ N(0, I_k), from 30-digit mpmath quadrature of
// int_0^inf (1 - P(k/2, t^2/2)^N) dt.
const std::map<std::pair<int, long long>, double> kReference = {
    {{1, 1}, 0.79788456080286536},   {{1, 10}, 1.8807156938211605},
    {{1, 100}, 2.7469576878061206},  {{1, 1000}, 3.4354101908077088},
    {{1, 10000}, 4.0187954905304151}, {{2, 1}, 1.2533141373155003},
    {{2, 10}, 2.3698315051520839},   {{2, 100}, 3.1982649171656519},
    {{2, 1000}, 3.8559031368420456}, {{2, 10000}, 4.4153854630318926},
    {{5, 1}, 2.1276921621409743},    {{5, 10}, 3.2507820539798922},
    {{5, 100}, 4.03862371475429},    {{5, 1000}, 4.6610358270112957},
    {{5, 10000}, 5.191199476074811}, {{10, 1}, 3.0843277597998639},
    {{10, 10}, 4.20287588961438},    {{10, 100}, 4.966381491428647},
    {{10, 1000}, 5.5662000559507505}, {{10, 10000}, 6.0763721076669325},
    {{50, 1}, 7.0358030581667728},   {{50, 10}, 8.1409601530080547},
    {{50, 100}, 8.8655678268933822}, {{50, 1000}, 9.4267686516393428},
    {{50, 10000}, 9.9006801487422894},
};

// Band of E max / max(sqrt(k), sqrt(log N)) over the grid above.
constexpr double kBandLow = 0.7978845608;
constexpr double kBandHigh = 1.9215175771;

}  // namespace

TEST_CASE("incomplete gamma agrees with an independent implementation") {
  for (double a : {0.5, 1.0, 2.5, 7.0, 25.0, 60.0}) {
    for (double x : {1e-6, 0.1, 0.5, 1.0, 3.0, a, a + 1.0, 2.0 * a + 5.0, 80.0}) {
      const IncompleteGamma g = incomplete_gamma(a, x);
      INFO("a=", a, " x=", x);
      CHECK(std::abs(g.lower - boost::math::gamma_p(a, x)) < 1e-13);
      CHECK(std::abs(g.upper - boost::math::gamma_q(a, x)) < 1e-13);
      const double q = boost::math::gamma_q(a, x);
      if (q > 1e-300) CHECK(g.upper == doctest::Approx(q).epsilon(1e-12));
    }
  }
  CHECK_THROWS(incomplete_gamma(0.0, 1.0));
  CHECK_THROWS(incomplete_gamma(1.0, -1.0));
}

TEST_CASE("chi_cdf") {
  CHECK(chi_cdf(3, 0.0) == 0.0);
  CHECK(chi_cdf(2, 1.0) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
  CHECK(chi_cdf(2, 1.0) == doctest::Approx(0.39346934).epsilon(1e-8));
  // 2 Phi(t) - 1 at the 97.5% normal quantile
  CHECK(std::abs(chi_cdf(1, 1.959963984540054) - 0.95) < 1e-12);
  CHECK_THROWS(chi_cdf(1, -0.1));
}

TEST_CASE("expected_max_chi closed forms") {
  const auto start = std::chrono::steady_clock::now();
  CHECK(std::abs(expected_max_chi(1, 1) - std::sqrt(2.0 / std::numbers::pi)) < 1e-8);
  CHECK(std::abs(expected_max_chi(3, 1) - 2.0 * std::sqrt(2.0 / std::numbers::pi)) < 1e-8);
  CHECK(std::abs(expected_max_chi(1, 2) - 2.0 / std::sqrt(std::numbers::pi)) < 1e-8);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("E max of two folded normals by brute force") {
  Rng rng(StreamKey{77, {}});
  std::vector<double> maxima(10000000);
  for (auto& m : maxima) m = std::max(std::abs(rng.normal()), std::abs(rng.normal()));
  const Estimate e = mean_and_stderr(maxima, StreamKey{});
  CHECK(within_sigmas(e.value, 2.0 / std::sqrt(std::numbers::pi), e.std_error, 3.0));
}

TEST_CASE("expected_max_chi matches high-precision reference on the grid") {
  for (const auto& [kn, ref] : kReference) {
    INFO("k=", kn.first, " N=", kn.second);
    CHECK(std::abs(expected_max_chi(kn.first, kn.second) - ref) < 1e-9);
  }
}

TEST_CASE("expected_max_chi band and monotonicity") {
  const int ks[] = {1, 2, 5, 10, 50};
  const long long ns[] = {1, 10, 100, 1000, 10000};
  double lo = 1e300, hi = 0.0;
  for (int k : ks) {
    for (long long n : ns) {
      const double v = expected_max_chi(k, n);
      const double ratio = v / std::max(std::sqrt(k), std::sqrt(std::log(static_cast<double>(n))));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  CHECK(lo >= 0.7);
  CHECK(hi <= 2.1);
  CHECK(lo == doctest::Approx(kBandLow).epsilon(0.01));
  CHECK(hi == doctest::Approx(kBandHigh).epsilon(0.01));

  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double v = expected_max_chi(ks[i], ns[j]);
      if (i + 1 < 5) CHECK(v <= expected_max_chi(ks[i + 1], ns[j]));
      if (j + 1 < 5) CHECK(v <= expected_max_chi(ks[i], ns[j + 1]));
    }
  }
  // enormous N stays finite and ordered
  const double huge = expected_max_chi(3, 1000000000000LL);
  CHECK(std::isfinite(huge));
  CHECK(huge > expected_max_chi(3, 10000));
}

TEST_CASE("tail_integral") {
  CHECK(tail_integral(1, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(tail_integral(1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tail_integral(0, 0.0) == doctest::Approx(std::sqrt(std::numbers::pi / 2)).epsilon(1e-14));
  // k = 3: int r^3 e^{-r^2/2} = (t^2 + 2) e^{-t^2/2}
  for (double t : {0.0, 0.7, 2.0, 5.0})
    CHECK(tail_integral(3, t) == doctest::Approx((t * t + 2) * std::exp(-t * t / 2)).epsilon(1e-13));
}

TEST_CASE("tail_bounds_check") {
  const auto rows = tail_bounds_check({{1, 1.0}, {3, 2.0}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].holds);
  CHECK(std::abs(rows[0].value - rows[0].lower) < 1e-12);
  CHECK(rows[0].lower == doctest::Approx(0.60653066).epsilon(1e-8));
  CHECK(rows[1].holds);
  CHECK_THROWS_WITH(tail_bounds_check({{5, 1.0}}),
                    doctest::Contains("(k=5, t=1)"));

  const auto grid = tail_bounds_default_grid(50);
  CHECK(grid.size() == 100);
  for (const auto& row : tail_bounds_check(grid)) {
    INFO("k=", row.k, " t=", row.t);
    CHECK(row.holds);
    if (row.k == 1) CHECK(std::abs(row.value - row.lower) <= 1e-12);
  }
}

TEST_CASE("gaussian_cloud") {
  const PointCloud c = gaussian_cloud(2, 1000000, StreamKey{1, {}});
  CHECK(c.source == "gaussian");
  for (int i = 0; i < 2; ++i) {
    std::vector<double> col(c.points.col(i).data(), c.points.col(i).data() + c.size());
    const Estimate e = mean_and_stderr(col, StreamKey{});
    CHECK(within_sigmas(e.value, 0.0, e.std_error, 3.0));
  }
}

TEST_CASE("projections of Gaussian vectors are chi_k") {
  const int n = 12, k = 4;
  const PointCloud c = gaussian_cloud(n, 5000, StreamKey{2, {}});
  const Subspace f = haar_subspace(n, k, StreamKey{3, {}});
  std::vector<double> norms(5000), chi(5000);
  const Matrix y = c.points * f.frame();
  Rng rng(StreamKey{4, {}});
  for (std::size_t j = 0; j < norms.size(); ++j) {
    norms[j] = y.row(static_cast<Eigen::Index>(j)).norm();
    chi[j] = std::sqrt(2.0 * rng.gamma(k / 2.0));
  }
  CHECK(ks_two_sample(norms, chi).p_value > 0.01);
}

TEST_CASE("Gaussian polytope radius matches the quadrature oracle") {
  for (int k : {1, 3, 8}) {
    const Estimate e = gaussian_mean_outer_radius(8, 100, k, 2000, StreamKey{5, {static_cast<std::uint64_t>(k)}});
    INFO("k=", k);
    CHECK(within_sigmas(e.value, expected_max_chi(k, 100), e.std_error, 3.0));
  }
}

TEST_CASE("max_chi_monte_carlo agrees with the oracle") {
  for (int k : {1, 2, 7}) {
    const Estimate e = max_chi_monte_carlo(k, 50, 20000, StreamKey{6, {static_cast<std::uint64_t>(k)}});
    CHECK(within_sigmas(e.value, expected_max_chi(k, 50), e.std_error, 3.0));
  }
}
