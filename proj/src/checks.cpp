#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polyrad/gaussian.hpp"
#include "polyrad/harness.hpp"
#include "polyrad/moments.hpp"
#include "polyrad/radii.hpp"

namespace polyrad {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string range(double lo, double hi) { return "[" + fmt(lo) + ", " + fmt(hi) + "]"; }

const char* verdict(bool ok) { return ok ? "pass" : "FAIL"; }

bool profile_is_monotone(const RadiusProfile& p) {
  for (std::size_t k = 1; k < p.estimates.size(); ++k)
    if (p.estimates[k - 1].value > p.estimates[k].value) return false;
  return true;
}

CheckResult band_check(const std::string& name, const std::vector<double>& values, double lo,
                       double hi) {
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const bool ok = *mn >= lo && *mx <= hi;
  return {name, range(*mn, *mx), range(lo, hi), verdict(ok)};
}

}  // namespace

std::vector<CheckResult> run_checks(const SweepConfig& config,
                                    const std::optional<Body>& body_override) {
  validate(config);
  const Body body = body_override ? *body_override : make_body(config.body, config.n);
  const int n = body.dim();
  const double lk = isotropic_constant(body);
  const StreamKey root{config.seed, {}};
  const Eigen::Index m = std::max<long long>(config.m, 100);
  const long long n_max = *std::max_element(config.N_list.begin(), config.N_list.end());
  const double log_n = std::log(static_cast<double>(n_max));
  std::vector<CheckResult> out;

  {
    // Pathwise monotone profiles on a sampled cloud and degenerate ones.
    std::vector<PointCloud> clouds;
    clouds.push_back(sample(body, config.N_list.front(), derive_stream(root, {0, 0})));
    Matrix line(32, n);
    for (int j = 0; j < 32; ++j) line.row(j) = (j - 16) * Vec::LinSpaced(n, 0.1, 1.0).transpose() / 16.0;
    clouds.push_back(PointCloud{line, "collinear", {}});
    clouds.push_back(PointCloud{Matrix::Constant(1, n, 0.25), "single", {}});
    bool ok = true;
    for (std::size_t i = 0; i < clouds.size(); ++i)
      ok = ok && profile_is_monotone(radius_profile(clouds[i], std::max(config.M, 2), derive_stream(root, {0, 1, i})));
    out.push_back({"profile_monotone", ok ? "nondecreasing in k" : "decrease found",
                   "zero tolerance", ok ? "exact" : "FAIL"});
  }

  {
    bool ok = outer_radius_exact(body) <= (n + 1) * lk;
    out.push_back({"outer_radius_bound", fmt(outer_radius_exact(body) / ((n + 1) * lk)),
                   "R(K) / ((n+1) L_K) <= 1", verdict(ok)});
  }

  {
    const Estimate i2 = moment(body, 2.0, m, derive_stream(root, 1));
    const double target = std::sqrt(static_cast<double>(n)) * lk;
    const bool ok = within_sigmas(i2.value, target, i2.std_error, 3.0);
    out.push_back({"second_moment_identity", fmt(i2.value) + " +- " + fmt(i2.std_error),
                   "sqrt(n) L_K = " + fmt(target) + " (3 se)", verdict(ok)});
  }

  {
    const int k = std::max(1, (n + 1) / 2);
    for (double q : {2.0, log_n}) {
      const GrassmannAverage g = grassmann_moment_avg(body, k, q, 100, std::min<Eigen::Index>(m, 5000),
                                                      derive_stream(root, {2, static_cast<std::uint64_t>(q * 1000)}));
      const bool ok = within_sigmas(g.identity_ratio.value, 1.0, g.identity_ratio.std_error, 3.0);
      out.push_back({"grassmann_moment_identity q=" + fmt(q),
                     fmt(g.identity_ratio.value) + " +- " + fmt(g.identity_ratio.std_error),
                     "1 (3 se)", verdict(ok)});
    }
  }

  {
    std::vector<double> ratios;
    std::uint64_t idx = 0;
    for (int k : {1, std::max(1, (n + 1) / 2), n}) {
      for (double q : {1.0, 2.0, log_n}) {
        const GrassmannAverage g = grassmann_moment_avg(body, k, q, 100, std::min<Eigen::Index>(m, 2000),
                                                        derive_stream(root, {3, idx++}));
        ratios.push_back(g.estimate.value / g.order_scale);
      }
    }
    out.push_back(band_check("grassmann_moment_band", ratios, 1.0 / 3.0, 3.0));
  }

  if (n >= 4) {
    const auto pos = paouris_positive_check(body, m, derive_stream(root, 4));
    std::vector<double> ratios;
    bool q2_ok = true;
    for (const auto& row : pos) {
      ratios.push_back(row.ratio);
      if (row.q == 2.0) q2_ok = within_sigmas(row.ratio, 1.0, row.ratio_error, 3.0);
    }
    CheckResult band = band_check("positive_moment_band", ratios, 0.5, 2.0);
    if (!q2_ok) band.verdict = "FAIL";
    band.band += ", q=2 ratio 1 (3 se)";
    out.push_back(band);

    const auto neg = paouris_negative_check(body, m, derive_stream(root, 5));
    if (neg.empty()) {
      out.push_back({"negative_moment_band", "no admissible q", "[0.5, 2]", "skipped"});
    } else {
      ratios.clear();
      for (const auto& row : neg) ratios.push_back(row.ratio);
      out.push_back(band_check("negative_moment_band", ratios, 0.5, 2.0));
    }
  } else {
    out.push_back({"positive_moment_band", "n < 4", "[0.5, 2]", "skipped"});
    out.push_back({"negative_moment_band", "n < 4", "[0.5, 2]", "skipped"});
  }

  {
    const int k = std::max(1, (n + 1) / 2);
    const int q = std::min(2, (k - 1) / 2);
    if (q >= 1) {
      const CentroidWidthReport r = centroid_width_check(
          body, k, q, std::clamp(config.M, 2, 32), std::min<Eigen::Index>(m, 20000),
          derive_stream(root, 6));
      out.push_back(band_check("centroid_width_band k=" + std::to_string(k) + " q=" + std::to_string(q),
                               r.ratios, 1.0 / 3.0, 3.0));
      out.push_back(band_check("negative_grassmann_band", {r.averaged_ratio}, 1.0 / 3.0, 3.0));
    } else {
      out.push_back({"centroid_width_band", "n too small", "[1/3, 3]", "skipped"});
      out.push_back({"negative_grassmann_band", "n too small", "[1/3, 3]", "skipped"});
    }
  }

  {
    const auto rows = tail_bounds_check(tail_bounds_default_grid(50));
    bool ok = true;
    double worst_equality = 0.0;
    for (const auto& row : rows) {
      ok = ok && row.holds;
      if (row.k == 1) worst_equality = std::max(worst_equality, std::abs(row.value - row.lower));
    }
    ok = ok && worst_equality <= 1e-12;
    out.push_back({"gaussian_tail_bounds", std::to_string(rows.size()) + " points, k=1 gap " + fmt(worst_equality),
                   "lower <= tail <= upper", verdict(ok)});
  }
  return out;
}

std::string format_checks(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results)
    os << r.verdict << "  " << r.name << "  observed " << r.observed << "  expected " << r.band << '\n';
  return os.str();
}

}  // namespace polyrad
