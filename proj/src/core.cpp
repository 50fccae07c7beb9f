#include "polyrad/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyrad/parallel.hpp"

namespace polyrad {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StreamKey::seed() const {
  std::uint64_t h = mix64(root);
  std::uint64_t depth = 0;
  for (std::uint64_t index : path) {
    // Position-dependent so that paths [a, b] and [b, a] differ.
    h = mix64(h ^ mix64(index + 0x632be59bd9b4e019ULL * ++depth));
  }
  return h;
}

std::string StreamKey::to_string() const {
  std::ostringstream os;
  os << root << ":[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << ',';
    os << path[i];
  }
  os << ']';
  return os.str();
}

StreamKey derive_stream(const StreamKey& parent, std::uint64_t index) {
  StreamKey child = parent;
  child.path.push_back(index);
  return child;
}

StreamKey derive_stream(const StreamKey& parent,
                        std::initializer_list<std::uint64_t> indices) {
  StreamKey child = parent;
  child.path.insert(child.path.end(), indices.begin(), indices.end());
  return child;
}

Rng::Rng(const StreamKey& key) : engine_(key.seed()) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open_low() { return 1.0 - uniform(); }

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

double Rng::exponential() { return -std::log(uniform_open_low()); }

double Rng::gamma(double shape) {
  if (!(shape >= 1.0)) throw std::invalid_argument("gamma shape must be >= 1");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform_open_low();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

std::vector<double> standard_normal(const StreamKey& stream, std::size_t count) {
  Rng rng(stream);
  std::vector<double> out(count);
  for (auto& x : out) x = rng.normal();
  return out;
}

double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kLeaf = 16;
  if (xs.size() <= kLeaf) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

Estimate mean_and_stderr(std::span<const double> xs, const StreamKey& key) {
  if (xs.empty()) throw std::invalid_argument("empty sample");
  const auto n = static_cast<double>(xs.size());
  const double mean = pairwise_sum(xs) / n;
  double std_error = 0.0;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = xs[i] - mean;
      sq[i] = d * d;
    }
    const double variance = pairwise_sum(sq) / (n - 1.0);
    std_error = std::sqrt(variance / n);
  }
  return Estimate{mean, std_error, xs.size(), key};
}

bool within_sigmas(double a, double b, double combined_stderr, double sigmas,
                   double slack) {
  return std::abs(a - b) <= sigmas * combined_stderr + slack;
}

namespace {
unsigned& thread_setting() {
  static unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}
}  // namespace

unsigned thread_count() { return thread_setting(); }

void set_thread_count(unsigned threads) {
  thread_setting() = std::max(1u, threads);
}

namespace detail {
bool& inside_worker() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

}  // namespace polyrad
