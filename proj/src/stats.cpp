#include "polyrad/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "polyrad/core.hpp"

namespace polyrad {
namespace {

// Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)
double kolmogorov_tail(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  const double en = std::sqrt(nx * ny / (nx + ny));
  return KsResult{d, kolmogorov_tail((en + 0.12 + 0.11 / en) * d)};
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("correlation needs two equal-length samples");
  const double n = static_cast<double>(a.size());
  const double ma = pairwise_sum(a) / n;
  const double mb = pairwise_sum(b) / n;
  std::vector<double> ab(a.size()), aa(a.size()), bb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab[i] = (a[i] - ma) * (b[i] - mb);
    aa[i] = (a[i] - ma) * (a[i] - ma);
    bb[i] = (b[i] - mb) * (b[i] - mb);
  }
  return pairwise_sum(ab) / std::sqrt(pairwise_sum(aa) * pairwise_sum(bb));
}

}  // namespace polyrad
