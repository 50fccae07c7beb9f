#include "polyrad/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyrad/grassmann.hpp"
#include "polyrad/parallel.hpp"
#include "polyrad/radii.hpp"
#include "polyrad/special.hpp"

namespace polyrad {
namespace {

// log P(|G| <= t), accurate both near 0 (tiny P) and in the tail (tiny Q).
double log_chi_cdf(int k, double t) {
  const double a = 0.5 * k;
  const double x = 0.5 * t * t;
  const IncompleteGamma g = incomplete_gamma(a, x);
  if (x < a + 1.0) return std::log(g.lower);
  return std::log1p(-g.upper);
}

// Normalizing constant of the chi_k density r^{k-1} e^{-r^2/2} / c_k.
double chi_normalizer(int k) {
  return std::exp((0.5 * k - 1.0) * std::log(2.0) + std::lgamma(0.5 * k));
}

constexpr std::size_t kReplicaBlock = 256;

}  // namespace

double chi_cdf(int k, double t) {
  if (k < 1) throw std::invalid_argument("chi_cdf: need k >= 1");
  if (!(t >= 0.0)) throw std::domain_error("chi_cdf: need t >= 0");
  return incomplete_gamma(0.5 * k, 0.5 * t * t).lower;
}

double tail_integral(int k, double t) {
  if (k < 0) throw std::invalid_argument("tail_integral: need k >= 0");
  if (!(t >= 0.0)) throw std::domain_error("tail_integral: need t >= 0");
  const double a = 0.5 * (k + 1);
  const double q = incomplete_gamma(a, 0.5 * t * t).upper;
  return std::exp(0.5 * (k - 1) * std::log(2.0) + std::lgamma(a)) * q;
}

double expected_max_chi(const ChiMaxQuery& query) {
  if (query.k < 1 || query.N < 1)
    throw std::invalid_argument("expected_max_chi: need k, N >= 1");
  if (!(query.abs_tol > 0.0))
    throw std::invalid_argument("expected_max_chi: need abs_tol > 0");
  const int k = query.k;
  const double n = static_cast<double>(query.N);

  // int_T^inf (1 - F^N) <= N int_T^inf (1 - F) <= N E[|G|; |G| > T].
  const double tail_budget = query.abs_tol / 10.0;
  const double c = chi_normalizer(k);
  double t_max = std::sqrt(static_cast<double>(k));
  while (n * tail_integral(k, t_max) / c > tail_budget) t_max += 0.25;

  auto integrand = [&](double t) {
    const double log_f = log_chi_cdf(k, t);
    if (std::isinf(log_f)) return 1.0;
    return -std::expm1(n * log_f);
  };

  // Unit panels keep the Kronrod error estimate reliable across the sharp
  // transition of 1 - F^N for large N.
  const int panels = static_cast<int>(std::ceil(t_max));
  const double quad_budget = query.abs_tol - tail_budget;
  double total = 0.0;
  double total_error = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = p;
    const double hi = std::min<double>(p + 1, t_max);
    if (hi <= lo) break;
    double error = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 10, 1e-12, &error);
    total_error += error;
  }
  if (total_error > quad_budget) {
    std::ostringstream os;
    os << "expected_max_chi: quadrature error " << total_error
       << " exceeds tolerance " << quad_budget;
    throw std::runtime_error(os.str());
  }
  return total;
}

double expected_max_chi(int k, long long N) {
  return expected_max_chi(ChiMaxQuery{k, N, 1e-9});
}

std::vector<TailBoundRow> tail_bounds_check(const std::vector<TailBoundPoint>& grid) {
  constexpr double kRoundoff = 1e-12;
  std::vector<TailBoundRow> rows;
  rows.reserve(grid.size());
  for (const auto& [k, t] : grid) {
    const double t_min = std::max(std::sqrt(2.0 * (k - 1)), 1.0);
    if (k < 1 || !(t >= t_min)) {
      std::ostringstream os;
      os << "tail_bounds_check: point (k=" << k << ", t=" << t
         << ") violates t >= max(sqrt(2(k-1)), 1) = " << t_min;
      throw std::invalid_argument(os.str());
    }
    TailBoundRow row;
    row.k = k;
    row.t = t;
    row.lower = std::pow(t, k - 1) * std::exp(-0.5 * t * t);
    row.upper = 2.0 * row.lower;
    row.value = tail_integral(k, t);
    row.holds = row.lower <= row.value * (1.0 + kRoundoff) &&
                row.value <= row.upper * (1.0 + kRoundoff);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TailBoundPoint> tail_bounds_default_grid(int k_max) {
  std::vector<TailBoundPoint> grid;
  for (int k = 1; k <= k_max; ++k) {
    const double t_min = std::max(std::sqrt(2.0 * (k - 1)), 1.0);
    grid.push_back({k, t_min});
    grid.push_back({k, 1.5 * t_min});
  }
  return grid;
}

PointCloud gaussian_cloud(int n, Eigen::Index N, const StreamKey& stream) {
  if (n < 1 || N < 1) throw std::invalid_argument("gaussian_cloud: need n, N >= 1");
  Rng rng(stream);
  Matrix pts(N, n);
  for (Eigen::Index j = 0; j < N; ++j)
    for (int i = 0; i < n; ++i) pts(j, i) = rng.normal();
  return PointCloud{std::move(pts), "gaussian", stream};
}

Estimate max_chi_monte_carlo(int k, long long N, std::size_t replicas,
                             const StreamKey& stream) {
  if (k < 1 || N < 1 || replicas < 1)
    throw std::invalid_argument("max_chi_monte_carlo: need k, N, replicas >= 1");
  const std::size_t blocks = (replicas + kReplicaBlock - 1) / kReplicaBlock;
  const auto per_block = parallel_map(blocks, [&](std::size_t b) {
    Rng rng(derive_stream(stream, b));
    const std::size_t begin = b * kReplicaBlock;
    const std::size_t end = std::min(replicas, begin + kReplicaBlock);
    std::vector<double> maxima;
    maxima.reserve(end - begin);
    for (std::size_t r = begin; r < end; ++r) {
      double best_sq = 0.0;
      for (long long j = 0; j < N; ++j) {
        double sq;
        if (k == 1) {
          const double g = rng.normal();
          sq = g * g;
        } else {
          sq = 2.0 * rng.gamma(0.5 * k);
        }
        best_sq = std::max(best_sq, sq);
      }
      maxima.push_back(std::sqrt(best_sq));
    }
    return maxima;
  });
  std::vector<double> all;
  all.reserve(replicas);
  for (const auto& block : per_block) all.insert(all.end(), block.begin(), block.end());
  return mean_and_stderr(all, stream);
}

Estimate gaussian_mean_outer_radius(int n, Eigen::Index N, int k,
                                    std::size_t replicas,
                                    const StreamKey& stream) {
  if (k < 1 || k > n) throw std::invalid_argument("gaussian_mean_outer_radius: k out of range");
  if (replicas < 2) throw std::invalid_argument("gaussian_mean_outer_radius: need >= 2 replicas");
  const auto radii = parallel_map(replicas, [&](std::size_t i) {
    const PointCloud cloud = gaussian_cloud(n, N, derive_stream(stream, {i, 0}));
    return projected_radius(cloud, haar_subspace(n, k, derive_stream(stream, {i, 1})));
  });
  return mean_and_stderr(radii, stream);
}

}  // namespace polyrad
