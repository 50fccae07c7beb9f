#pragma once

#include <string>

#include <Eigen/Dense>

#include "polyrad/core.hpp"

namespace polyrad {

using Vec = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// N sample points stored as the rows of an N x n matrix. Represents the
/// random polytope spanned by the rows; the hull itself is never built.
struct PointCloud {
  Matrix points;
  std::string source;
  StreamKey key;

  Eigen::Index size() const { return points.rows(); }
  int dim() const { return static_cast<int>(points.cols()); }
};

}  // namespace polyrad
