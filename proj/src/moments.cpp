#include "polyrad/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "polyrad/parallel.hpp"

namespace polyrad {
namespace {

constexpr Eigen::Index kMinPoints = 100;

std::vector<double> row_norms(const Matrix& points) {
  std::vector<double> out(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index j = 0; j < points.rows(); ++j)
    out[static_cast<std::size_t>(j)] = points.row(j).norm();
  return out;
}

// First-order propagation of a standard error through mu -> mu^{1/q}.
double delta_method(double mu, double mu_error, double q) {
  return std::abs(1.0 / q) * std::pow(mu, 1.0 / q - 1.0) * mu_error;
}

std::vector<int> positive_exponents(int n) {
  const int top = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
  std::vector<int> qs;
  for (int q = 1; q <= top; q *= 2) qs.push_back(q);
  if (qs.back() != top) qs.push_back(top);
  return qs;
}

std::vector<MomentRatio> ratio_table(const Body& body, const std::vector<double>& qs,
                                     Eigen::Index m, const StreamKey& stream) {
  const int n = body.dim();
  const PointCloud cloud = sample(body, m, stream);
  const std::vector<double> norms = row_norms(cloud.points);
  const double scale = std::sqrt(static_cast<double>(n)) * isotropic_constant(body);
  std::vector<MomentRatio> rows;
  for (double q : qs) {
    require_variance_safe(q, n);
    MomentRatio row;
    row.q = q;
    row.moment = power_mean(norms, q, stream);
    row.ratio = row.moment.value / scale;
    row.ratio_error = row.moment.std_error / scale;
    if (body.kind() == BodyKind::Ball)
      row.exact_ratio = ball_moment_exact(body.scale(), n, q) / scale;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Estimate power_mean(std::span<const double> xs, double q, const StreamKey& key) {
  if (q == 0.0) throw std::invalid_argument("variance-unsafe exponent");
  std::vector<double> powers(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) powers[i] = std::pow(xs[i], q);
  const Estimate mu = mean_and_stderr(powers, key);
  return Estimate{std::pow(mu.value, 1.0 / q), delta_method(mu.value, mu.std_error, q),
                  mu.samples, key};
}

double ball_moment_exact(double radius, int n, double q) {
  if (q == 0.0 || !(q > -static_cast<double>(n)))
    throw std::domain_error("ball_moment_exact: need q > -n, q != 0");
  return radius * std::pow(n / (n + q), 1.0 / q);
}

void require_variance_safe(double q, int dim) {
  if (q == 0.0 || (q < 0.0 && -q > 0.5 * (dim - 1)))
    throw std::domain_error("variance-unsafe exponent");
}

Estimate moment(const Body& body, double q, Eigen::Index m, const StreamKey& stream) {
  require_variance_safe(q, body.dim());
  if (m < kMinPoints) throw std::invalid_argument("moment: need m >= 100");
  const PointCloud cloud = sample(body, m, stream);
  return power_mean(row_norms(cloud.points), q, stream);
}

Estimate moment_subspace(const Body& body, const Subspace& f, double q,
                         Eigen::Index m, const StreamKey& stream) {
  if (f.ambient_dim() != body.dim())
    throw std::invalid_argument("moment_subspace: dimension mismatch");
  require_variance_safe(q, f.dim());
  if (m < kMinPoints) throw std::invalid_argument("moment_subspace: need m >= 100");
  const PointCloud cloud = sample(body, m, stream);
  return power_mean(row_norms(cloud.points * f.frame()), q, stream);
}

GrassmannAverage grassmann_moment_avg(const Body& body, int k, double q,
                                      int subspaces, Eigen::Index m,
                                      const StreamKey& stream) {
  const int n = body.dim();
  if (k < 1 || k > n) throw std::invalid_argument("grassmann_moment_avg: k out of range");
  if (!(q >= 1.0)) throw std::domain_error("grassmann_moment_avg: need q >= 1");
  if (subspaces < kMinPoints || m < kMinPoints)
    throw std::invalid_argument("grassmann_moment_avg: need M, m >= 100");

  // Common random numbers: one sample of K shared by every subspace.
  const PointCloud cloud = sample(body, m, derive_stream(stream, 0));
  const auto points = static_cast<std::size_t>(m);
  const auto count = static_cast<std::size_t>(subspaces);

  std::vector<double> full(points);
  for (std::size_t j = 0; j < points; ++j)
    full[j] = std::pow(cloud.points.row(static_cast<Eigen::Index>(j)).norm(), q);

  const auto projected = parallel_map(count, [&](std::size_t i) {
    const Subspace f = haar_subspace(n, k, derive_stream(stream, {1, i}));
    const Matrix y = cloud.points * f.frame();
    std::vector<double> row(points);
    for (std::size_t j = 0; j < points; ++j)
      row[j] = std::pow(y.row(static_cast<Eigen::Index>(j)).norm(), q);
    return row;
  });

  std::vector<double> per_subspace(count);
  for (std::size_t i = 0; i < count; ++i)
    per_subspace[i] = pairwise_sum(projected[i]) / static_cast<double>(points);
  std::vector<double> per_point(points);
  std::vector<double> column(count);
  for (std::size_t j = 0; j < points; ++j) {
    for (std::size_t i = 0; i < count; ++i) column[i] = projected[i][j];
    per_point[j] = pairwise_sum(column) / static_cast<double>(count);
  }

  // Crossed design: points and subspaces each contribute a variance term.
  const Estimate by_subspace = mean_and_stderr(per_subspace, stream);
  const Estimate by_point = mean_and_stderr(per_point, stream);
  const double mu = by_subspace.value;
  const double mu_error = std::hypot(by_subspace.std_error, by_point.std_error);

  const double c = sphere_marginal_moment(n, q) / sphere_marginal_moment(k, q);
  const Estimate full_mean = mean_and_stderr(full, stream);

  GrassmannAverage out;
  out.estimate = Estimate{std::pow(mu, 1.0 / q), delta_method(mu, mu_error, q),
                          points * count, stream};
  out.reference = Estimate{std::pow(c * full_mean.value, 1.0 / q),
                           delta_method(c * full_mean.value, c * full_mean.std_error, q),
                           points, stream};
  std::vector<double> ratios(count);
  for (std::size_t i = 0; i < count; ++i)
    ratios[i] = per_subspace[i] / (c * full_mean.value);
  out.identity_ratio = mean_and_stderr(ratios, stream);
  out.order_scale = std::sqrt((k + q) / (n + q)) * std::pow(full_mean.value, 1.0 / q);
  return out;
}

Estimate p_mean_width(const SupportFunction& support_fn, int n, double p,
                      int directions, const StreamKey& stream) {
  if (p == 0.0) throw std::invalid_argument("p_mean_width: need p != 0");
  if (directions < 2) throw std::invalid_argument("p_mean_width: need M >= 2");
  const auto values = parallel_map(static_cast<std::size_t>(directions), [&](std::size_t i) {
    return support_fn(sphere_sample(n, derive_stream(stream, i)));
  });
  for (double h : values) {
    if (p < 0.0 && !(h > 0.0))
      throw std::domain_error("degenerate body for negative width");
  }
  return power_mean(values, p, stream);
}

Estimate zq_support(const PointCloud& cloud, double q, const Vec& theta) {
  if (!(q >= 1.0)) throw std::domain_error("zq_support: need q >= 1");
  if (theta.size() != cloud.dim())
    throw std::invalid_argument("zq_support: dimension mismatch");
  if (std::abs(theta.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("zq_support: direction is not a unit vector");
  const Vec dots = (cloud.points * theta).cwiseAbs();
  return power_mean(std::span<const double>(dots.data(), static_cast<std::size_t>(dots.size())),
                    q, cloud.key);
}

Estimate zq_support(const Body& body, double q, const Vec& theta, Eigen::Index m,
                    const StreamKey& stream) {
  if (m < kMinPoints) throw std::invalid_argument("zq_support: need m >= 100");
  return zq_support(sample(body, m, stream), q, theta);
}

std::vector<MomentRatio> paouris_positive_check(const Body& body, Eigen::Index m,
                                                const StreamKey& stream) {
  if (body.dim() < 4) throw std::invalid_argument("paouris_positive_check: need n >= 4");
  std::vector<double> qs;
  for (int q : positive_exponents(body.dim())) qs.push_back(q);
  return ratio_table(body, qs, m, stream);
}

std::vector<MomentRatio> paouris_negative_check(const Body& body, Eigen::Index m,
                                                const StreamKey& stream) {
  const int n = body.dim();
  if (n < 4) throw std::invalid_argument("paouris_negative_check: need n >= 4");
  const double cap = std::min(std::sqrt(static_cast<double>(n)), 0.5 * (n - 1) - 1.0);
  std::vector<double> qs;
  for (int q = 1; q <= static_cast<int>(std::floor(cap)); ++q) qs.push_back(-q);
  return ratio_table(body, qs, m, stream);
}

CentroidWidthReport centroid_width_check(const Body& body, int k, int q, int subspaces,
                          Eigen::Index m, const StreamKey& stream,
                          const CentroidWidthOptions& options) {
  const int n = body.dim();
  if (k < 1 || k > n) throw std::invalid_argument("centroid_width_check: k out of range");
  if (q < 1 || q >= k) throw std::domain_error("proposition hypothesis violated");
  require_variance_safe(-q, k);
  if (subspaces < 2 || m < kMinPoints || options.directions < 2)
    throw std::invalid_argument("centroid_width_check: need M >= 2, m >= 100, directions >= 2");

  const PointCloud cloud = sample(body, m, derive_stream(stream, 0));
  const std::vector<double> full_norms = row_norms(cloud.points);
  const double neg = -static_cast<double>(q);

  struct Sides {
    double left;
    double right;
  };
  const auto sides = parallel_map(static_cast<std::size_t>(subspaces), [&](std::size_t i) {
    Matrix frame = haar_subspace(n, k, derive_stream(stream, {1, i})).frame();
    if (options.rotation) frame = *options.rotation * frame;
    const Matrix t = cloud.points * frame;  // coordinates of P_F X_j
    const double left = power_mean(row_norms(t), neg, stream).value;

    // For theta in F, <x, theta> = <P_F x, theta>, so the support of
    // P_F Z_q(K) at theta is h_{Z_q(K)}(theta).
    std::vector<double> h(static_cast<std::size_t>(options.directions));
    for (int d = 0; d < options.directions; ++d) {
      const Vec u = sphere_sample(k, derive_stream(stream, {2, i, static_cast<std::uint64_t>(d)}));
      const Vec dots = (t * u).cwiseAbs();
      h[static_cast<std::size_t>(d)] =
          power_mean(std::span<const double>(dots.data(), static_cast<std::size_t>(dots.size())),
                     q, stream)
              .value;
    }
    const double width = power_mean(h, neg, stream).value;
    return Sides{left, std::sqrt(static_cast<double>(k) / q) * width};
  });

  CentroidWidthReport report;
  report.k = k;
  report.q = q;
  for (const auto& s : sides) {
    report.left.push_back(s.left);
    report.right.push_back(s.right);
    report.ratios.push_back(s.left / s.right);
  }
  const double averaged = power_mean(report.left, neg, stream).value;
  const double full = power_mean(full_norms, neg, stream).value;
  report.averaged_ratio = averaged / (std::sqrt(static_cast<double>(k) / n) * full);
  return report;
}

}  // namespace polyrad
