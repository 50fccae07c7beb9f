#include "polyrad/grassmann.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyrad {
namespace {

constexpr double kOrthoTol = 1e-10;

// Thin Q factor of a Gaussian matrix with the signs fixed so that R has a
// positive diagonal. Without the sign fix the result is not Haar.
Matrix orthonormalized_gaussian(int n, int k, const StreamKey& stream) {
  Rng rng(stream);
  Matrix g(n, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) g(r, c) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  const auto& packed = qr.matrixQR();
  for (int c = 0; c < k; ++c)
    if (packed(c, c) < 0.0) q.col(c) = -q.col(c);
  return q;
}

void check_orthonormal(const Matrix& frame) {
  const Matrix gram = frame.transpose() * frame;
  const Matrix identity = Matrix::Identity(frame.cols(), frame.cols());
  if ((gram - identity).cwiseAbs().maxCoeff() > kOrthoTol)
    throw std::invalid_argument("frame is not orthonormal");
}

}  // namespace

Subspace::Subspace(Matrix frame) : frame_(std::move(frame)) {
  if (frame_.cols() < 1 || frame_.cols() > frame_.rows())
    throw std::invalid_argument("subspace dimension must satisfy 1 <= k <= n");
  check_orthonormal(frame_);
}

Subspace Subspace::coordinate(int n, int k) {
  return Subspace(Matrix::Identity(n, k));
}

Flag::Flag(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() < 1 || basis_.rows() != basis_.cols())
    throw std::invalid_argument("flag basis must be square");
  check_orthonormal(basis_);
}

Subspace Flag::prefix(int k) const {
  if (k < 1 || k > dim()) throw std::invalid_argument("flag prefix out of range");
  return Subspace(basis_.leftCols(k));
}

Subspace haar_subspace(int n, int k, const StreamKey& stream) {
  if (k < 1 || k > n)
    throw std::invalid_argument("haar_subspace: need 1 <= k <= n");
  return Subspace(orthonormalized_gaussian(n, k, stream));
}

Flag haar_flag(int n, const StreamKey& stream) {
  if (n < 1) throw std::invalid_argument("haar_flag: need n >= 1");
  return Flag(orthonormalized_gaussian(n, n, stream));
}

Vec project(const Subspace& f, const Vec& x) {
  if (x.size() != f.ambient_dim())
    throw std::invalid_argument("project: dimension mismatch");
  return f.frame().transpose() * x;
}

Vec sphere_sample(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sphere_sample: need n >= 1");
  Vec g(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) g(i) = rng.normal();
    norm = g.norm();
  } while (norm == 0.0);
  return g / norm;
}

Vec sphere_sample(int n, const StreamKey& stream) {
  Rng rng(stream);
  return sphere_sample(n, rng);
}

double sphere_marginal_moment(int k, double q) {
  if (k < 1) throw std::invalid_argument("sphere_marginal_moment: need k >= 1");
  if (!(q > -1.0)) throw std::domain_error("divergent marginal moment");
  const double dk = k;
  const double log_m = std::lgamma(0.5 * (q + 1.0)) + std::lgamma(0.5 * dk) -
                       0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * (dk + q));
  return std::exp(log_m);
}

}  // namespace polyrad
