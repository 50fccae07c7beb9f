#pragma once

// Haar-random subspaces and flags, projections, and uniform directions.

#include "polyrad/cloud.hpp"

namespace polyrad {

/// k-dimensional subspace of R^n given by an n x k orthonormal frame.
class Subspace {
 public:
  /// Validates 1 <= k <= n and frame^T frame = I within 1e-10.
  explicit Subspace(Matrix frame);

  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Matrix& frame() const { return frame_; }

  /// span{e_1, ..., e_k} in R^n.
  static Subspace coordinate(int n, int k);

 private:
  Matrix frame_;
};

/// Orthonormal basis of R^n read as the chain F_1 c F_2 c ... c F_n, where F_k
/// is spanned by the first k columns.
class Flag {
 public:
  explicit Flag(Matrix basis);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  Subspace prefix(int k) const;

 private:
  Matrix basis_;
};

/// Orthonormalized n x k Gaussian matrix; Haar distributed on G_{n,k}.
Subspace haar_subspace(int n, int k, const StreamKey& stream);
/// Orthonormalized n x n Gaussian matrix; each prefix is Haar on G_{n,k}.
Flag haar_flag(int n, const StreamKey& stream);

/// Coordinates of P_F x in the frame of F (a vector in R^k).
Vec project(const Subspace& f, const Vec& x);

Vec sphere_sample(int n, Rng& rng);
Vec sphere_sample(int n, const StreamKey& stream);

/// Integral of |theta_1|^q over S^{k-1} with respect to the uniform
/// probability measure:
///   Gamma((q+1)/2) Gamma(k/2) / (sqrt(pi) Gamma((k+q)/2)).
/// Defined for real q > -1; throws "divergent marginal moment" otherwise.
double sphere_marginal_moment(int k, double q);

}  // namespace polyrad
