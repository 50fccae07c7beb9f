#pragma once

// Volume-one isotropic models of the cube, Euclidean ball, cross-polytope
// and regular simplex.

#include <string_view>

#include "polyrad/cloud.hpp"

namespace polyrad {

enum class BodyKind { Cube, Ball, CrossPolytope, Simplex };

/// "cube", "ball", "cross" or "simplex".
std::string_view body_name(BodyKind kind);
/// Inverse of body_name; the error message lists the valid names.
BodyKind parse_body_kind(std::string_view name);

class Body {
 public:
  /// Cube [-1/2, 1/2]^n, ball r_n B_2^n, cross-polytope s_n B_1^n, or a
  /// regular simplex with centroid 0, each scaled to volume one.
  static Body make(BodyKind kind, int n);

  BodyKind kind() const { return kind_; }
  int dim() const { return n_; }
  /// Linear factor applied to the unit model (1 for the cube, r_n for the
  /// ball, s_n for the cross-polytope, the edge scaling for the simplex).
  double scale() const { return scale_; }
  /// Simplex vertices as columns (n x (n+1)), already scaled. Empty for the
  /// other kinds.
  const Matrix& vertices() const { return vertices_; }

  /// Copy whose geometry is dilated by `factor` while isotropic_constant
  /// keeps reporting the volume-one model's value. Used for mutation tests.
  Body rescaled(double factor) const;

 private:
  Body(BodyKind kind, int n, double scale, double model_scale, Matrix unit_vertices);

  BodyKind kind_;
  int n_;
  double scale_;
  double model_scale_;
  Matrix unit_vertices_;
  Matrix vertices_;

  friend double isotropic_constant(const Body& body);
};

Body make_body(BodyKind kind, int n);

/// L_K of the volume-one model.
double isotropic_constant(const Body& body);

/// Uniform i.i.d. points in the body.
PointCloud sample(const Body& body, Eigen::Index m, const StreamKey& stream);

/// h_K(theta). Requires |theta| = 1 within 1e-10.
double support(const Body& body, const Vec& theta);

/// Circumradius R(K) = max_{x in K} |x|.
double outer_radius_exact(const Body& body);

bool contains(const Body& body, const Vec& x);

/// log |B_2^n|.
double log_unit_ball_volume(int n);

}  // namespace polyrad
