#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "polyrad/gaussian.hpp"
#include "polyrad/harness.hpp"
#include "polyrad/parallel.hpp"
#include "polyrad/radii.hpp"

namespace polyrad {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double normalizer_for(int k, long long N) {
  return std::max(std::sqrt(static_cast<double>(k)),
                  std::sqrt(std::log(static_cast<double>(N))));
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  const Body body = make_body(config.body, config.n);
  const double lk = isotropic_constant(body);
  const StreamKey root{config.seed, {}};
  const std::size_t replicas = static_cast<std::size_t>(config.R);

  // Tasks are (N index, replica); each yields a full profile over k.
  const auto profiles = parallel_map(config.N_list.size() * replicas, [&](std::size_t task) {
    const std::size_t ni = task / replicas;
    const std::size_t r = task % replicas;
    const PointCloud cloud =
        sample(body, config.N_list[ni], derive_stream(root, {ni, r, 0}));
    return radius_profile(cloud, config.M, derive_stream(root, {ni, r, 1}));
  });

  std::vector<SweepRow> rows;
  rows.reserve(profiles.size() * config.k_list.size());
  for (std::size_t ni = 0; ni < config.N_list.size(); ++ni) {
    const long long N = config.N_list[ni];
    for (int k : config.k_list) {
      const double normalizer = normalizer_for(k, N) * lk;
      for (std::size_t r = 0; r < replicas; ++r) {
        const Estimate& e = profiles[ni * replicas + r].estimates[static_cast<std::size_t>(k - 1)];
        SweepRow row;
        row.body = std::string(body_name(config.body));
        row.n = config.n;
        row.N = N;
        row.k = k;
        row.replica = static_cast<int>(r);
        row.seed = config.seed;
        row.estimate = e.value;
        row.std_error = e.std_error;
        row.L_K = lk;
        row.normalizer = normalizer;
        row.ratio = e.value / normalizer;
        row.regime = regime_flag(config.n, N);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.body + ',' + std::to_string(r.n) + ',' + std::to_string(r.N) + ',' +
           std::to_string(r.k) + ',' + std::to_string(r.replica) + ',' +
           std::to_string(r.seed) + ',' + format_double(r.estimate) + ',' +
           format_double(r.std_error) + ',' + format_double(r.L_K) + ',' +
           format_double(r.normalizer) + ',' + format_double(r.ratio) + ',' + r.regime +
           '\n';
  }
  return out;
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file " + path.string());
  out << to_csv(rows);
  if (!out.flush()) throw std::runtime_error("cannot write output file " + path.string());
}

std::vector<BandCell> probability_band_report(const std::vector<SweepRow>& rows,
                                              double band_lo, double band_hi, double s) {
  std::vector<BandCell> cells;
  std::map<std::pair<long long, int>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.N, r.k);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, cells.size()).first;
      BandCell cell;
      cell.N = r.N;
      cell.k = r.k;
      cell.target = 1.0 - std::pow(static_cast<double>(r.N), -s);
      cells.push_back(cell);
    }
    BandCell& cell = cells[it->second];
    ++cell.replicas;
    if (r.ratio >= band_lo && r.ratio <= band_hi) cell.inside_fraction += 1.0;
  }
  for (auto& c : cells) c.inside_fraction /= c.replicas;
  return cells;
}

std::vector<GaussianCell> gaussian_report(const std::vector<int>& k_list,
                                          const std::vector<long long>& N_list, int n,
                                          int replicas, const StreamKey& stream) {
  if (k_list.empty() || N_list.empty())
    throw std::invalid_argument("gaussian_report: grids must be nonempty");
  std::vector<GaussianCell> cells;
  for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
    for (std::size_t ni = 0; ni < N_list.size(); ++ni) {
      GaussianCell cell;
      cell.k = k_list[ki];
      cell.N = N_list[ni];
      cell.monte_carlo = gaussian_mean_outer_radius(n, cell.N, cell.k,
                                                    static_cast<std::size_t>(replicas),
                                                    derive_stream(stream, {ki, ni}));
      cell.oracle = expected_max_chi(cell.k, cell.N);
      cell.normalizer = normalizer_for(cell.k, cell.N);
      cell.agrees = within_sigmas(cell.monte_carlo.value, cell.oracle,
                                  cell.monte_carlo.std_error, 3.0);
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace polyrad
