#pragma once

// Moment functionals of the Euclidean norm on isotropic bodies:
//   I_q(K, F) = (int_K |P_F x|^q dx)^{1/q},  I_q(K) = I_q(K, R^n),
// p-mean widths, and supports of the L_q-centroid bodies Z_q(K).
//
// Negative exponents are estimated by plain Monte Carlo, which has finite
// variance only while |q| < k/2 (the density of |P_F x| near 0 behaves like
// t^{k-1}). Every estimator enforces |q| <= (k-1)/2.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polyrad/bodies.hpp"
#include "polyrad/grassmann.hpp"

namespace polyrad {

/// (mean of xs^q)^{1/q} for positive xs, with the delta-method standard
/// error (first order only).
Estimate power_mean(std::span<const double> xs, double q, const StreamKey& key);

/// Closed form of I_q for a ball of radius r in R^n: r (n / (n + q))^{1/q}.
double ball_moment_exact(double radius, int n, double q);

/// Throws "variance-unsafe exponent" unless q != 0 and, for q < 0,
/// |q| <= (dim - 1) / 2.
void require_variance_safe(double q, int dim);

Estimate moment(const Body& body, double q, Eigen::Index m, const StreamKey& stream);
Estimate moment_subspace(const Body& body, const Subspace& f, double q,
                         Eigen::Index m, const StreamKey& stream);

struct GrassmannAverage {
  /// (int I_q(K,F)^q dnu)^{1/q} from M subspaces and m shared points.
  Estimate estimate;
  /// (m_{n,q} / m_{k,q})^{1/q} I_q(K), with I_q(K) from the same points.
  Estimate reference;
  /// Mean over subspaces of I_q(K,F)^q / ((m_{n,q}/m_{k,q}) I_q(K)^q). Given
  /// the points its expectation is exactly 1.
  Estimate identity_ratio;
  /// sqrt((k+q)/(n+q)) I_q(K), the order of magnitude of `estimate`.
  double order_scale = 0.0;
};

GrassmannAverage grassmann_moment_avg(const Body& body, int k, double q,
                                      int subspaces, Eigen::Index m,
                                      const StreamKey& stream);

using SupportFunction = std::function<double(const Vec&)>;

/// w_p = (int_{S^{n-1}} h^p dsigma)^{1/p} over M uniform directions.
Estimate p_mean_width(const SupportFunction& support_fn, int n, double p,
                      int directions, const StreamKey& stream);

/// h_{Z_q(K)}(theta) = (int_K |<x, theta>|^q dx)^{1/q}.
Estimate zq_support(const Body& body, double q, const Vec& theta,
                    Eigen::Index m, const StreamKey& stream);
/// Same estimator on a fixed sample of K.
Estimate zq_support(const PointCloud& cloud, double q, const Vec& theta);

struct MomentRatio {
  double q = 0.0;         // signed exponent actually used
  Estimate moment;        // I_q(K)
  double ratio = 0.0;     // I_q(K) / (sqrt(n) L_K)
  double ratio_error = 0.0;
  std::optional<double> exact_ratio;  // ball only
};

/// I_q(K) / (sqrt(n) L_K) for q in {1, 2, 4, ...} up to floor(sqrt(n)) (and
/// floor(sqrt(n)) itself), all from one shared sample. Needs n >= 4.
std::vector<MomentRatio> paouris_positive_check(const Body& body, Eigen::Index m,
                                                const StreamKey& stream);
/// I_{-q}(K) / (sqrt(n) L_K) for q = 1, ..., floor(min(sqrt(n), (n-1)/2 - 1)).
std::vector<MomentRatio> paouris_negative_check(const Body& body, Eigen::Index m,
                                                const StreamKey& stream);

struct CentroidWidthOptions {
  int directions = 64;
  /// When set, every sampled frame F is replaced by rotation * F.
  std::optional<Matrix> rotation;
};

struct CentroidWidthReport {
  int k = 0;
  int q = 0;
  /// Per subspace: I_{-q}(K,F), sqrt(k/q) w_{-q}(P_F Z_q(K)), and their ratio.
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> ratios;
  /// (int I_{-q}(K,F)^{-q} dnu)^{-1/q} / (sqrt(k/n) I_{-q}(K)).
  double averaged_ratio = 0.0;
};

/// Both sides of the negative-moment / centroid-body equivalence on M Haar
/// subspaces. Requires integer 1 <= q < k ("proposition hypothesis
/// violated" otherwise) and q <= (k-1)/2.
CentroidWidthReport centroid_width_check(const Body& body, int k, int q, int subspaces,
                          Eigen::Index m, const StreamKey& stream,
                          const CentroidWidthOptions& options = {});

}  // namespace polyrad
