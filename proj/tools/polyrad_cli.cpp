// Command-line front end: estimate, sweep, gaussian, check, plot.
//
// Exit status: 0 success, 1 usage or input error, 2 a check failed.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyrad/bodies.hpp"
#include "polyrad/gaussian.hpp"
#include "polyrad/harness.hpp"
#include "polyrad/moments.hpp"
#include "polyrad/parallel.hpp"
#include "polyrad/radii.hpp"

namespace {

using namespace polyrad;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> body;
  std::optional<int> n;
  std::vector<long long> N;
  std::vector<int> k;
  std::optional<int> M;
  std::optional<int> R;
  std::optional<double> q;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON sweep configuration");
  cmd->add_option("--seed", f.seed, "64-bit root seed");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--body", f.body, "cube | ball | cross | simplex");
  cmd->add_option("--n", f.n, "dimension");
  cmd->add_option("--N", f.N, "polytope sizes (comma separated)")->delimiter(',');
  cmd->add_option("--k", f.k, "projection dimensions (comma separated)")->delimiter(',');
  cmd->add_option("--M", f.M, "subspaces or flags per estimate");
  cmd->add_option("--R", f.R, "replicas");
  cmd->add_option("--q", f.q, "moment exponent");
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
}

SweepConfig resolve(const CommonFlags& f) {
  SweepConfig c = f.config_path.empty() ? SweepConfig{} : load_config(f.config_path);
  if (f.body) c.body = parse_body_kind(*f.body);
  if (f.n) {
    c.n = *f.n;
    if (f.config_path.empty()) {
      // Defaults follow the dimension unless given explicitly.
      c.N_list = {c.n, 4LL * c.n, static_cast<long long>(c.n) * c.n};
      c.k_list = {1, std::max(1, static_cast<int>(std::ceil(std::sqrt(c.n)))),
                  std::max(1, (c.n + 1) / 2), c.n};
    }
  }
  if (!f.N.empty()) c.N_list = f.N;
  if (!f.k.empty()) c.k_list = f.k;
  if (f.M) c.M = *f.M;
  if (f.R) c.R = *f.R;
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  validate(c);
  return c;
}

void apply_threads(const CommonFlags& f) {
  if (f.threads > 0) set_thread_count(f.threads);
}

int run_estimate(const CommonFlags& f) {
  const SweepConfig c = resolve(f);
  const Body body = make_body(c.body, c.n);
  const StreamKey root{c.seed, {}};
  const double lk = isotropic_constant(body);
  std::printf("body=%s n=%d M=%d seed=%llu L_K=%.10g\n", std::string(body_name(c.body)).c_str(), c.n,
              c.M, static_cast<unsigned long long>(c.seed), lk);
  for (std::size_t ni = 0; ni < c.N_list.size(); ++ni) {
    const long long N = c.N_list[ni];
    const PointCloud cloud = sample(body, N, derive_stream(root, {0, ni}));
    for (int k : c.k_list) {
      const Estimate e =
          mean_outer_radius(cloud, k, c.M, derive_stream(root, {1, ni, static_cast<std::uint64_t>(k)}));
      const double normalizer =
          std::max(std::sqrt(static_cast<double>(k)), std::sqrt(std::log(static_cast<double>(N)))) * lk;
      std::printf("N=%lld k=%d  estimate %.10g  stderr %.3g  normalizer %.10g  ratio %.6g  %s\n", N, k,
                  e.value, e.std_error, normalizer, e.value / normalizer, regime_flag(c.n, N).c_str());
    }
  }
  if (f.q) {
    const Estimate iq = moment(body, *f.q, std::max<long long>(c.m, 100), derive_stream(root, 2));
    std::printf("I_q q=%g  %.10g  stderr %.3g  ratio to sqrt(n) L_K %.6g\n", *f.q, iq.value,
                iq.std_error, iq.value / (std::sqrt(static_cast<double>(c.n)) * lk));
  }
  return 0;
}

int run_sweep_command(const CommonFlags& f, std::optional<double> band_lo,
                      std::optional<double> band_hi) {
  const SweepConfig c = resolve(f);
  const auto rows = run_sweep(c);
  write_csv(rows, c.out);
  std::printf("wrote %zu rows to %s\n", rows.size(), c.out.c_str());
  if (band_lo && band_hi) {
    std::printf("N,k,replicas,inside_fraction,target\n");
    for (const auto& cell : probability_band_report(rows, *band_lo, *band_hi, c.s))
      std::printf("%lld,%d,%d,%.4f,%.6f\n", cell.N, cell.k, cell.replicas, cell.inside_fraction,
                  cell.target);
  }
  return 0;
}

int run_gaussian(const CommonFlags& f) {
  const std::vector<int> ks = f.k.empty() ? std::vector<int>{1, 2, 5, 10, 50} : f.k;
  const std::vector<long long> ns =
      f.N.empty() ? std::vector<long long>{1, 10, 100, 1000, 10000} : f.N;
  const int n = f.n.value_or(*std::max_element(ks.begin(), ks.end()));
  const int replicas = f.M.value_or(256);
  const StreamKey root{f.seed.value_or(SweepConfig{}.seed), {}};
  bool all = true;
  std::printf("k,N,mc,mc_stderr,oracle,normalizer,oracle_over_normalizer,agrees\n");
  for (const auto& cell : gaussian_report(ks, ns, n, replicas, root)) {
    all = all && cell.agrees;
    std::printf("%d,%lld,%.10g,%.3g,%.10g,%.10g,%.6g,%s\n", cell.k, cell.N,
                cell.monte_carlo.value, cell.monte_carlo.std_error, cell.oracle, cell.normalizer,
                cell.oracle / cell.normalizer, cell.agrees ? "yes" : "no");
  }
  return all ? 0 : 2;
}

int run_check(const CommonFlags& f) {
  const SweepConfig c = resolve(f);
  const auto results = run_checks(c);
  std::cout << format_checks(results);
  for (const auto& r : results)
    if (r.failed()) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean outer radii of random polytopes: estimators, sweeps and checks"};
  app.require_subcommand(1);

  CommonFlags estimate_flags, sweep_flags, gaussian_flags, check_flags;
  auto* estimate = app.add_subcommand("estimate", "estimate R~_k for one random polytope");
  add_common(estimate, estimate_flags);
  auto* sweep = app.add_subcommand("sweep", "run a grid and write CSV rows");
  add_common(sweep, sweep_flags);
  std::optional<double> band_lo, band_hi;
  sweep->add_option("--band-lo", band_lo, "report the fraction of replicas above this ratio");
  sweep->add_option("--band-hi", band_hi, "... and below this ratio");
  auto* gaussian = app.add_subcommand("gaussian", "Gaussian polytopes against the exact oracle");
  add_common(gaussian, gaussian_flags);
  auto* check = app.add_subcommand("check", "run the consistency checks");
  add_common(check, check_flags);

  auto* plot = app.add_subcommand("plot", "plot two CSV columns as SVG");
  std::string csv_path, x_col = "k", y_col = "ratio", svg_out = "plot.svg";
  plot->add_option("csv", csv_path, "input CSV")->required();
  plot->add_option("--x", x_col, "x column");
  plot->add_option("--y", y_col, "y column");
  plot->add_option("--out", svg_out, "output SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*estimate) return apply_threads(estimate_flags), run_estimate(estimate_flags);
    if (*sweep) return apply_threads(sweep_flags), run_sweep_command(sweep_flags, band_lo, band_hi);
    if (*gaussian) return apply_threads(gaussian_flags), run_gaussian(gaussian_flags);
    if (*check) return apply_threads(check_flags), run_check(check_flags);
    if (*plot) {
      emit_plot(csv_path, x_col, y_col, svg_out);
      std::printf("wrote %s\n", svg_out.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
