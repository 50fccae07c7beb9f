#pragma once

namespace polyrad {

/// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
/// each computed directly (series below x = a + 1, continued fraction above)
/// so that the smaller of the two keeps full relative accuracy.
struct IncompleteGamma {
  double lower = 0.0;  // P(a, x)
  double upper = 1.0;  // Q(a, x)
};

IncompleteGamma incomplete_gamma(double a, double x);

}  // namespace polyrad
