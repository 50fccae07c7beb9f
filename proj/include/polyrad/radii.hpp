#pragma once

// Outer radii of random polytopes and their Haar averages over projections.
//
// For a cloud X_1..X_N and any subspace F the projection of conv{X_j} (or of
// the symmetric hull conv{+-X_j}) has outer radius max_j |P_F X_j|, so every
// estimator here works from inner products and never builds a hull.

#include <vector>

#include "polyrad/cloud.hpp"
#include "polyrad/grassmann.hpp"

namespace polyrad {

/// max_j |X_j|.
double outer_radius_points(const PointCloud& cloud);

/// max_j |P_F X_j|.
double projected_radius(const PointCloud& cloud, const Subspace& f);

/// Mean over M independent Haar subspaces of projected_radius. Subspace i
/// uses derive_stream(stream, i). For k = n the exact radius is returned
/// with zero standard error.
Estimate mean_outer_radius(const PointCloud& cloud, int k, int subspaces,
                           const StreamKey& stream);

struct RadiusProfile {
  /// estimates[k - 1] is the estimate for dimension k.
  std::vector<Estimate> estimates;
  int flags_used = 0;

  double value(int k) const { return estimates.at(static_cast<std::size_t>(k - 1)).value; }
};

/// Estimates for every k = 1..n from M Haar flags. Each flag contributes a
/// nondecreasing sequence in k, so the averaged profile is nondecreasing too
/// (exactly, in floating point).
RadiusProfile radius_profile(const PointCloud& cloud, int flags,
                             const StreamKey& stream);

/// Per-flag radii: row f holds max_j |P_{F_k} X_j| for k = 1..n of flag f.
Matrix flag_radii(const PointCloud& cloud, int flags, const StreamKey& stream);

/// Mean over M uniform directions theta of max_j |<X_j, theta>|.
Estimate mean_width(const PointCloud& cloud, int directions,
                    const StreamKey& stream);

}  // namespace polyrad
