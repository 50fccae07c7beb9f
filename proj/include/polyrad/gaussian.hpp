#pragma once

// Exact quadrature oracle for the expected maximum norm of N standard
// Gaussian vectors in R^k, tail-integral bounds, and Gaussian point clouds.

#include <vector>

#include "polyrad/cloud.hpp"

namespace polyrad {

struct ChiMaxQuery {
  int k = 1;
  long long N = 1;
  double abs_tol = 1e-9;
};

/// P(|G| <= t) for G ~ N(0, I_k): the regularized P(k/2, t^2/2).
double chi_cdf(int k, double t);

/// E max_{1<=j<=N} |G_j| = int_0^inf (1 - chi_cdf(k, t)^N) dt.
///
/// The range is truncated at the first T with N E[|G|; |G| > T] <=
/// abs_tol / 10, which bounds the neglected tail; the rest is integrated by
/// adaptive Gauss-Kronrod quadrature.
double expected_max_chi(const ChiMaxQuery& query);
double expected_max_chi(int k, long long N);

/// int_t^inf r^k e^{-r^2/2} dr = 2^{(k-1)/2} Gamma((k+1)/2, t^2/2).
double tail_integral(int k, double t);

struct TailBoundPoint {
  int k = 1;
  double t = 1.0;
};

struct TailBoundRow {
  int k = 1;
  double t = 1.0;
  double lower = 0.0;  // t^{k-1} e^{-t^2/2}
  double value = 0.0;  // tail_integral(k, t)
  double upper = 0.0;  // 2 t^{k-1} e^{-t^2/2}
  bool holds = false;
};

/// Evaluates both bounds at every grid point. Each point must satisfy
/// t >= max(sqrt(2(k-1)), 1); the first that does not raises an error naming
/// it.
std::vector<TailBoundRow> tail_bounds_check(const std::vector<TailBoundPoint>& grid);

/// 2 points per k = 1..k_max at t = t_min(k) and 1.5 t_min(k).
std::vector<TailBoundPoint> tail_bounds_default_grid(int k_max);

/// N i.i.d. N(0, I_n) points tagged "gaussian".
PointCloud gaussian_cloud(int n, Eigen::Index N, const StreamKey& stream);

/// Monte Carlo E max_j |G_j| with chi_k draws generated from Gamma(k/2)
/// variates (independent of the incomplete-gamma route).
Estimate max_chi_monte_carlo(int k, long long N, std::size_t replicas,
                             const StreamKey& stream);

/// Replicated R~_k of Gaussian polytopes: replica i draws a fresh
/// gaussian_cloud(n, N) and one Haar F in G_{n,k}, and records
/// max_j |P_F G_j|. The expectation is expected_max_chi(k, N).
Estimate gaussian_mean_outer_radius(int n, Eigen::Index N, int k,
                                    std::size_t replicas,
                                    const StreamKey& stream);

}  // namespace polyrad
