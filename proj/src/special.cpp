#include "polyrad/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyrad {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// x^a e^{-x} / Gamma(a), in log space.
double log_prefactor(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

}  // namespace

IncompleteGamma incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("incomplete_gamma: need a > 0");
  if (!(x >= 0.0)) throw std::domain_error("incomplete_gamma: need x >= 0");
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};
  if (x < a + 1.0) {
    const double p = lower_series(a, x);
    return {p, 1.0 - p};
  }
  const double q = upper_continued_fraction(a, x);
  return {1.0 - q, q};
}

}  // namespace polyrad
