#include "polyrad/bodies.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace polyrad {
namespace {

constexpr double kMembershipTol = 1e-12;

// Rows of the Helmert matrix: an orthonormal basis of the hyperplane
// sum(z) = 0 in R^{n+1}. Its columns are the vertices of a regular simplex
// with edge sqrt(2) and centroid 0.
Matrix helmert_vertices(int n) {
  Matrix h = Matrix::Zero(n, n + 1);
  for (int j = 0; j < n; ++j) {
    const double norm = std::sqrt(static_cast<double>(j + 1) * (j + 2));
    for (int i = 0; i <= j; ++i) h(j, i) = 1.0 / norm;
    h(j, j + 1) = -static_cast<double>(j + 1) / norm;
  }
  return h;
}

double model_scale(BodyKind kind, int n) {
  const double dn = n;
  switch (kind) {
    case BodyKind::Cube:
      return 1.0;
    case BodyKind::Ball:
      return std::exp(-log_unit_ball_volume(n) / dn);
    case BodyKind::CrossPolytope:
      // |B_1^n| = 2^n / n!
      return std::exp(std::lgamma(dn + 1.0) / dn) / 2.0;
    case BodyKind::Simplex:
      // Edge sqrt(2) simplex has volume sqrt(n+1) / n!.
      return std::exp((std::lgamma(dn + 1.0) - 0.5 * std::log(dn + 1.0)) / dn);
  }
  throw std::logic_error("unknown body kind");
}

}  // namespace

std::string_view body_name(BodyKind kind) {
  switch (kind) {
    case BodyKind::Cube: return "cube";
    case BodyKind::Ball: return "ball";
    case BodyKind::CrossPolytope: return "cross";
    case BodyKind::Simplex: return "simplex";
  }
  return "?";
}

BodyKind parse_body_kind(std::string_view name) {
  for (BodyKind k : {BodyKind::Cube, BodyKind::Ball, BodyKind::CrossPolytope,
                     BodyKind::Simplex}) {
    if (body_name(k) == name) return k;
  }
  throw std::invalid_argument("invalid body kind '" + std::string(name) +
                              "'; valid kinds: cube, ball, cross, simplex");
}

double log_unit_ball_volume(int n) {
  const double dn = n;
  return 0.5 * dn * std::log(std::numbers::pi) - std::lgamma(0.5 * dn + 1.0);
}

Body::Body(BodyKind kind, int n, double scale, double model_scale, Matrix unit_vertices)
    : kind_(kind),
      n_(n),
      scale_(scale),
      model_scale_(model_scale),
      unit_vertices_(std::move(unit_vertices)),
      vertices_(unit_vertices_ * scale) {}

Body Body::make(BodyKind kind, int n) {
  if (n < 1) throw std::invalid_argument("body dimension must be >= 1");
  const double s = model_scale(kind, n);
  Matrix unit = kind == BodyKind::Simplex ? helmert_vertices(n) : Matrix{};
  return Body(kind, n, s, s, std::move(unit));
}

Body Body::rescaled(double factor) const {
  return Body(kind_, n_, scale_ * factor, model_scale_, unit_vertices_);
}

Body make_body(BodyKind kind, int n) { return Body::make(kind, n); }

double isotropic_constant(const Body& body) {
  const double n = body.n_;
  const double s = body.model_scale_;
  switch (body.kind_) {
    case BodyKind::Cube:
      return 1.0 / std::sqrt(12.0);
    case BodyKind::Ball:
      return s / std::sqrt(n + 2.0);
    case BodyKind::CrossPolytope:
      // Coordinate second moment on B_1^n is 2 / ((n+1)(n+2)).
      return s * std::sqrt(2.0 / ((n + 1.0) * (n + 2.0)));
    case BodyKind::Simplex: {
      // E[x x^T] = sum_i v_i v_i^T / ((n+1)(n+2)) for a centred simplex;
      // the symmetry group makes it a multiple of the identity.
      const Matrix v = body.unit_vertices_ * s;
      const double lambda = (v * v.transpose())(0, 0) / ((n + 1.0) * (n + 2.0));
      return std::sqrt(lambda);
    }
  }
  throw std::logic_error("unknown body kind");
}

PointCloud sample(const Body& body, Eigen::Index m, const StreamKey& stream) {
  if (m < 1) throw std::invalid_argument("sample count must be >= 1");
  const int n = body.dim();
  const double s = body.scale();
  Rng rng(stream);
  Matrix pts(m, n);
  switch (body.kind()) {
    case BodyKind::Cube:
      for (Eigen::Index j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) pts(j, i) = (rng.uniform() - 0.5) * s;
      break;
    case BodyKind::Ball: {
      Vec g(n);
      for (Eigen::Index j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) g(i) = rng.normal();
        const double radius = s * std::pow(rng.uniform_open_low(), 1.0 / n);
        pts.row(j) = (g * (radius / g.norm())).transpose();
      }
      break;
    }
    case BodyKind::CrossPolytope: {
      Vec e(n + 1);
      for (Eigen::Index j = 0; j < m; ++j) {
        for (int i = 0; i <= n; ++i) e(i) = rng.exponential();
        const double total = e.sum();
        for (int i = 0; i < n; ++i) pts(j, i) = rng.sign() * s * e(i) / total;
      }
      break;
    }
    case BodyKind::Simplex: {
      Vec w(n + 1);
      const Matrix& v = body.vertices();
      for (Eigen::Index j = 0; j < m; ++j) {
        for (int i = 0; i <= n; ++i) w(i) = rng.exponential();
        w /= w.sum();
        pts.row(j) = (v * w).transpose();
      }
      break;
    }
  }
  return PointCloud{std::move(pts), std::string(body_name(body.kind())), stream};
}

double support(const Body& body, const Vec& theta) {
  if (theta.size() != body.dim())
    throw std::invalid_argument("support: dimension mismatch");
  if (std::abs(theta.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("support: direction is not a unit vector");
  const double s = body.scale();
  switch (body.kind()) {
    case BodyKind::Cube: return 0.5 * s * theta.cwiseAbs().sum();
    case BodyKind::Ball: return s;
    case BodyKind::CrossPolytope: return s * theta.cwiseAbs().maxCoeff();
    case BodyKind::Simplex: return (body.vertices().transpose() * theta).maxCoeff();
  }
  throw std::logic_error("unknown body kind");
}

double outer_radius_exact(const Body& body) {
  const double s = body.scale();
  switch (body.kind()) {
    case BodyKind::Cube: return 0.5 * s * std::sqrt(static_cast<double>(body.dim()));
    case BodyKind::Ball: return s;
    case BodyKind::CrossPolytope: return s;
    case BodyKind::Simplex: return body.vertices().colwise().norm().maxCoeff();
  }
  throw std::logic_error("unknown body kind");
}

bool contains(const Body& body, const Vec& x) {
  if (x.size() != body.dim()) throw std::invalid_argument("contains: dimension mismatch");
  const double s = body.scale();
  switch (body.kind()) {
    case BodyKind::Cube:
      return x.cwiseAbs().maxCoeff() <= 0.5 * s * (1.0 + kMembershipTol);
    case BodyKind::Ball:
      return x.norm() <= s * (1.0 + kMembershipTol);
    case BodyKind::CrossPolytope:
      return x.cwiseAbs().sum() <= s * (1.0 + kMembershipTol);
    case BodyKind::Simplex: {
      // Barycentric coordinates: z = H^T (x / s) + 1/(n+1).
      const double n1 = body.dim() + 1.0;
      const Vec z = body.vertices().transpose() * x / (s * s) + Vec::Constant(body.dim() + 1, 1.0 / n1);
      return z.minCoeff() >= -kMembershipTol;
    }
  }
  throw std::logic_error("unknown body kind");
}

}  // namespace polyrad
