#pragma once

// Deterministic random streams, reproducible reductions, and annotated
// Monte Carlo estimates shared by every estimator in the library.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace polyrad {

/// Identifies a random stream as a root seed plus a path of task indices.
///
/// Child streams are derived by appending an index, so a task's stream is a
/// pure function of its position in the task tree and never of the order in
/// which tasks are scheduled.
struct StreamKey {
  std::uint64_t root = 0;
  std::vector<std::uint64_t> path;

  /// 64-bit seed obtained by mixing the root with every path element.
  std::uint64_t seed() const;

  std::string to_string() const;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

StreamKey derive_stream(const StreamKey& parent, std::uint64_t index);
StreamKey derive_stream(const StreamKey& parent,
                        std::initializer_list<std::uint64_t> indices);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Random source bound to one StreamKey.
///
/// Uniforms use the top 53 bits of a 64-bit Mersenne twister. Normals use the
/// Box-Muller transform (two uniforms in, two normals out), so the number of
/// engine draws per normal is fixed and the output never depends on
/// rejection loops.
class Rng {
 public:
  explicit Rng(const StreamKey& key);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low();
  double normal();
  double exponential();
  /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang).
  double gamma(double shape);
  /// +1 or -1 with equal probability.
  double sign();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

std::vector<double> standard_normal(const StreamKey& stream, std::size_t count);

/// Pairwise summation in index order. The reduction tree depends only on the
/// length of the input.
double pairwise_sum(std::span<const double> xs);

/// Monte Carlo value with its standard error. (`stderr` is a libc macro,
/// hence `std_error`.)
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 1;
  StreamKey key;
};

/// Arithmetic mean and standard error (sample standard deviation / sqrt(n)).
/// Throws std::invalid_argument("empty sample") on empty input.
Estimate mean_and_stderr(std::span<const double> xs, const StreamKey& key);

/// True when |a - b| <= sigmas * combined_stderr + slack.
bool within_sigmas(double a, double b, double combined_stderr, double sigmas,
                   double slack = 0.0);

}  // namespace polyrad
