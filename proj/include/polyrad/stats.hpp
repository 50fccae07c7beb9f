#pragma once

#include <span>

namespace polyrad {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution (Stephens' small-sample correction).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of two equal-length samples.
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace polyrad
