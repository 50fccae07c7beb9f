#include <doctest.h>

#include <cmath>

#include "polyrad/grassmann.hpp"
#include "polyrad/stats.hpp"

using namespace polyrad;

namespace {

std::vector<double> projected_norms(int n, int k, const Vec& x, int count, std::uint64_t root,
                                    double power = 1.0) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Subspace f = haar_subspace(n, k, StreamKey{root, {static_cast<std::uint64_t>(i)}});
    out[static_cast<std::size_t>(i)] = std::pow(project(f, x).norm(), power);
  }
  return out;
}

Matrix fixed_rotation(int n) {
  return haar_flag(n, StreamKey{999, {}}).basis();
}

}  // namespace

TEST_CASE("haar_subspace frames are orthonormal and validated") {
  CHECK_THROWS(haar_subspace(3, 4, StreamKey{}));
  CHECK_THROWS(haar_subspace(3, 0, StreamKey{}));
  const Subspace f = haar_subspace(10, 3, StreamKey{1, {}});
  CHECK((f.frame().transpose() * f.frame() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS(Subspace(Matrix::Constant(3, 2, 1.0)));
}

TEST_CASE("full-dimensional subspace preserves norms") {
  const Subspace f = haar_subspace(6, 6, StreamKey{2, {}});
  const Vec x = Vec::LinSpaced(6, -1.0, 2.0);
  CHECK(project(f, x).norm() == doctest::Approx(x.norm()).epsilon(1e-13));
}

TEST_CASE("E|P_F x|^2 = (k/n)|x|^2") {
  {
    const auto sq = projected_norms(2, 1, Vec::Unit(2, 0), 100000, 3, 2.0);
    const Estimate e = mean_and_stderr(sq, StreamKey{});
    CHECK(within_sigmas(e.value, 0.5, e.std_error, 3.0));
  }
  {
    const Vec x = sphere_sample(10, StreamKey{4, {}});
    const auto sq = projected_norms(10, 3, x, 100000, 5, 2.0);
    const Estimate e = mean_and_stderr(sq, StreamKey{});
    CHECK(within_sigmas(e.value, 0.3, e.std_error, 3.0));
  }
}

TEST_CASE("exact projected-moment identity E|P_F x|^q = |x|^q m_{n,q}/m_{k,q}") {
  const Vec x = Vec::LinSpaced(7, 0.5, 2.0);
  for (double q : {1.0, 2.0, 3.5}) {
    const auto p = projected_norms(7, 3, x, 100000, 6, q);
    const Estimate e = mean_and_stderr(p, StreamKey{});
    const double expected = std::pow(x.norm(), q) * sphere_marginal_moment(7, q) /
                            sphere_marginal_moment(3, q);
    INFO("q=", q);
    CHECK(within_sigmas(e.value, expected, e.std_error, 3.0));
  }
}

TEST_CASE("Haar rotation invariance") {
  const int n = 6;
  const Vec x = Vec::LinSpaced(n, -1.0, 1.0);
  const Vec ux = fixed_rotation(n) * x;
  const auto a = projected_norms(n, 2, x, 10000, 7);
  const auto b = projected_norms(n, 2, ux, 10000, 8);
  CHECK(ks_two_sample(a, b).p_value > 0.01);
}

TEST_CASE("haar_flag prefixes") {
  const int n = 8;
  const Flag flag = haar_flag(n, StreamKey{9, {}});
  for (int k = 1; k <= n; ++k) {
    const Subspace f = flag.prefix(k);
    CHECK(f.dim() == k);
  }
  // nested projections never shrink
  for (int trial = 0; trial < 200; ++trial) {
    const Vec x = sphere_sample(n, StreamKey{10, {static_cast<std::uint64_t>(trial)}}) * (1 + trial);
    const Flag fl = haar_flag(n, StreamKey{11, {static_cast<std::uint64_t>(trial)}});
    const Vec y = fl.basis().transpose() * x;
    double partial = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double next = partial + y(k - 1) * y(k - 1);
      CHECK(next >= partial);
      CHECK(project(fl.prefix(k), x).norm() == doctest::Approx(std::sqrt(next)).epsilon(1e-12));
      partial = next;
    }
  }
}

TEST_CASE("flag prefix k=1 matches haar_subspace(n, 1) in law") {
  const int n = 5;
  const Vec e1 = Vec::Unit(n, 0);
  std::vector<double> from_flags(10000);
  for (std::size_t i = 0; i < from_flags.size(); ++i)
    from_flags[i] = project(haar_flag(n, StreamKey{12, {i}}).prefix(1), e1).norm();
  const auto direct = projected_norms(n, 1, e1, 10000, 13);
  CHECK(ks_two_sample(from_flags, direct).p_value > 0.01);
}

TEST_CASE("project") {
  const Subspace f = Subspace::coordinate(2, 1);
  Vec x(2);
  x << 3, 4;
  CHECK(project(f, x).norm() == 3.0);
  CHECK(project(Subspace::coordinate(2, 2), x).norm() == 5.0);
  CHECK_THROWS(project(f, Vec::Zero(3)));
  for (int i = 0; i < 100; ++i) {
    const Subspace g = haar_subspace(5, 2, StreamKey{14, {static_cast<std::uint64_t>(i)}});
    const Vec y = Vec::LinSpaced(5, -3, 4);
    CHECK(project(g, y).norm() <= y.norm() * (1 + 1e-15));
  }
}

TEST_CASE("sphere_sample") {
  const int n = 4;
  Rng rng(StreamKey{15, {}});
  std::vector<double> first(1000000), first_sq(1000000);
  for (std::size_t i = 0; i < first.size(); ++i) {
    const Vec t = sphere_sample(n, rng);
    REQUIRE(std::abs(t.norm() - 1.0) < 1e-12);
    first[i] = t(0);
    first_sq[i] = t(0) * t(0);
  }
  const Estimate m1 = mean_and_stderr(first, StreamKey{});
  const Estimate m2 = mean_and_stderr(first_sq, StreamKey{});
  CHECK(within_sigmas(m1.value, 0.0, m1.std_error, 3.0));
  CHECK(within_sigmas(m2.value, 1.0 / n, m2.std_error, 3.0));
}

TEST_CASE("sphere_marginal_moment") {
  for (int k = 1; k <= 40; ++k) CHECK(sphere_marginal_moment(k, 2.0) == doctest::Approx(1.0 / k).epsilon(1e-13));
  CHECK(sphere_marginal_moment(3, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sphere_marginal_moment(2, 1.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
  CHECK(sphere_marginal_moment(1, 3.7) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_WITH(sphere_marginal_moment(3, -1.0), "divergent marginal moment");
  // log-space evaluation survives large k and non-integer q
  CHECK(std::isfinite(sphere_marginal_moment(1000, 6.9)));
}
