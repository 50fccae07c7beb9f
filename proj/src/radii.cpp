#include "polyrad/radii.hpp"

#include <cmath>
#include <stdexcept>

#include "polyrad/parallel.hpp"

namespace polyrad {
namespace {

void require_nonempty(const PointCloud& cloud) {
  if (cloud.size() < 1) throw std::invalid_argument("empty point cloud");
}

}  // namespace

double outer_radius_points(const PointCloud& cloud) {
  require_nonempty(cloud);
  return std::sqrt(cloud.points.rowwise().squaredNorm().maxCoeff());
}

double projected_radius(const PointCloud& cloud, const Subspace& f) {
  require_nonempty(cloud);
  if (cloud.dim() != f.ambient_dim())
    throw std::invalid_argument("projected_radius: dimension mismatch");
  const Matrix y = cloud.points * f.frame();
  return std::sqrt(y.rowwise().squaredNorm().maxCoeff());
}

Estimate mean_outer_radius(const PointCloud& cloud, int k, int subspaces,
                           const StreamKey& stream) {
  require_nonempty(cloud);
  const int n = cloud.dim();
  if (k < 1 || k > n) throw std::invalid_argument("mean_outer_radius: k out of range");
  if (subspaces < 2) throw std::invalid_argument("mean_outer_radius: need M >= 2");
  if (k == n) {
    return Estimate{outer_radius_points(cloud), 0.0,
                    static_cast<std::size_t>(subspaces), stream};
  }
  const auto radii = parallel_map(static_cast<std::size_t>(subspaces), [&](std::size_t i) {
    return projected_radius(cloud, haar_subspace(n, k, derive_stream(stream, i)));
  });
  return mean_and_stderr(radii, stream);
}

Matrix flag_radii(const PointCloud& cloud, int flags, const StreamKey& stream) {
  require_nonempty(cloud);
  const int n = cloud.dim();
  const auto rows = parallel_map(static_cast<std::size_t>(flags), [&](std::size_t f) {
    const Flag flag = haar_flag(n, derive_stream(stream, f));
    const Matrix y = cloud.points * flag.basis();
    // Running |P_{F_k} X_j|^2 for all j; adding a nonnegative square can
    // only increase each entry, so the column maxima are nondecreasing.
    Vec partial = Vec::Zero(y.rows());
    Vec radii(n);
    for (int k = 0; k < n; ++k) {
      partial += y.col(k).cwiseAbs2();
      radii(k) = std::sqrt(partial.maxCoeff());
    }
    return radii;
  });
  Matrix out(flags, n);
  for (int f = 0; f < flags; ++f) out.row(f) = rows[static_cast<std::size_t>(f)].transpose();
  return out;
}

RadiusProfile radius_profile(const PointCloud& cloud, int flags,
                             const StreamKey& stream) {
  if (flags < 2) throw std::invalid_argument("radius_profile: need M >= 2");
  const Matrix radii = flag_radii(cloud, flags, stream);
  RadiusProfile profile;
  profile.flags_used = flags;
  std::vector<double> column(static_cast<std::size_t>(flags));
  for (Eigen::Index k = 0; k < radii.cols(); ++k) {
    for (int f = 0; f < flags; ++f) column[static_cast<std::size_t>(f)] = radii(f, k);
    profile.estimates.push_back(mean_and_stderr(column, stream));
  }
  return profile;
}

Estimate mean_width(const PointCloud& cloud, int directions, const StreamKey& stream) {
  require_nonempty(cloud);
  if (directions < 2) throw std::invalid_argument("mean_width: need M >= 2");
  const auto widths = parallel_map(static_cast<std::size_t>(directions), [&](std::size_t i) {
    const Vec theta = sphere_sample(cloud.dim(), derive_stream(stream, i));
    return (cloud.points * theta).cwiseAbs().maxCoeff();
  });
  return mean_and_stderr(widths, stream);
}

}  // namespace polyrad
