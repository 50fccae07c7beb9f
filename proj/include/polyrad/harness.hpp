#pragma once

// Experiment sweeps over (N, k, replica), CSV output, summary reports, the
// consolidated pass/fail check suite, and single-panel SVG plots.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "polyrad/bodies.hpp"
#include "polyrad/core.hpp"

namespace polyrad {

struct SweepConfig {
  BodyKind body = BodyKind::Cube;
  int n = 16;
  std::vector<long long> N_list{16, 64, 256};
  std::vector<int> k_list{1, 4, 8, 16};
  int M = 64;
  int R = 10;
  long long m = 20000;
  double s = 1.0;
  std::uint64_t seed = 20240917;
  std::string out = "sweep.csv";
};

/// Parses a flat JSON object whose keys are exactly the SweepConfig field
/// names (any subset). Unknown keys and wrong types are errors.
SweepConfig parse_config(const std::string& json_text);
SweepConfig load_config(const std::filesystem::path& path);

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const SweepConfig& config);

/// "in-regime" when n^2 <= N <= e^{sqrt n}, "upper-only" when n <= N < n^2,
/// "out-of-regime" otherwise.
std::string regime_flag(int n, long long N);

struct SweepRow {
  std::string body;
  int n = 0;
  long long N = 0;
  int k = 0;
  int replica = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double L_K = 0.0;
  double normalizer = 0.0;  // max(sqrt k, sqrt log N) L_K
  double ratio = 0.0;
  std::string regime;
};

/// One fresh cloud per (N, replica); its flag profile provides the rows for
/// every k. Rows come out ordered by N, then k, then replica.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr const char* kCsvHeader =
    "body,n,N,k,replica,seed,estimate,stderr,L_K,normalizer,ratio,regime_flag";

std::string to_csv(const std::vector<SweepRow>& rows);
/// Throws std::runtime_error if the file cannot be written.
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

struct BandCell {
  long long N = 0;
  int k = 0;
  int replicas = 0;
  double inside_fraction = 0.0;
  double target = 0.0;  // 1 - N^{-s}
};

/// Fraction of replicas per (N, k) whose ratio lies in [band_lo, band_hi].
std::vector<BandCell> probability_band_report(const std::vector<SweepRow>& rows,
                                              double band_lo, double band_hi, double s);

struct GaussianCell {
  int k = 0;
  long long N = 0;
  Estimate monte_carlo;
  double oracle = 0.0;
  double normalizer = 0.0;
  bool agrees = false;  // within 3 standard errors
};

/// Monte Carlo R~_k of Gaussian polytopes in R^n against expected_max_chi.
std::vector<GaussianCell> gaussian_report(const std::vector<int>& k_list,
                                          const std::vector<long long>& N_list, int n,
                                          int replicas, const StreamKey& stream);

struct CheckResult {
  std::string name;
  std::string observed;
  std::string band;
  std::string verdict;  // "pass", "exact", "skipped" or "FAIL"

  bool failed() const { return verdict == "FAIL"; }
};

/// Runs every consistency check on the configured body and dimension.
/// `body_override` replaces the configured body (used for mutation tests).
std::vector<CheckResult> run_checks(const SweepConfig& config,
                                    const std::optional<Body>& body_override = std::nullopt);

std::string format_checks(const std::vector<CheckResult>& results);

/// SVG of column y against column x, one polyline per (body, N).
std::string plot_svg(const std::string& csv_text, const std::string& x_column,
                     const std::string& y_column);
void emit_plot(const std::filesystem::path& csv_path, const std::string& x_column,
               const std::string& y_column, const std::filesystem::path& svg_path);

}  // namespace polyrad
