#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "polyrad/harness.hpp"

namespace polyrad {
namespace {

using json = nlohmann::json;

template <class T>
T get_field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

SweepConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const char* const kKeys[] = {"body", "n", "N_list", "k_list", "M",
                                      "R",    "m", "s",      "seed",   "out"};
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw std::invalid_argument("unknown config key '" + key + "'");
  }

  SweepConfig c;
  if (doc.contains("body")) c.body = parse_body_kind(get_field<std::string>(doc, "body"));
  if (doc.contains("n")) c.n = get_field<int>(doc, "n");
  if (doc.contains("N_list")) c.N_list = get_field<std::vector<long long>>(doc, "N_list");
  if (doc.contains("k_list")) c.k_list = get_field<std::vector<int>>(doc, "k_list");
  if (doc.contains("M")) c.M = get_field<int>(doc, "M");
  if (doc.contains("R")) c.R = get_field<int>(doc, "R");
  if (doc.contains("m")) c.m = get_field<long long>(doc, "m");
  if (doc.contains("s")) c.s = get_field<double>(doc, "s");
  if (doc.contains("seed")) c.seed = get_field<std::uint64_t>(doc, "seed");
  if (doc.contains("out")) c.out = get_field<std::string>(doc, "out");
  validate(c);
  return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const SweepConfig& c) {
  if (c.n < 1) throw std::invalid_argument("n must be >= 1");
  if (c.N_list.empty() || c.k_list.empty())
    throw std::invalid_argument("N_list and k_list must be nonempty");
  if (c.M < 2) throw std::invalid_argument("M must be >= 2");
  if (c.R < 1) throw std::invalid_argument("R must be >= 1");
  if (c.m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(c.s > 0.0)) throw std::invalid_argument("s must be positive");
  for (long long N : c.N_list)
    if (N < c.n) throw std::invalid_argument("N_list entries must be >= n");
  for (int k : c.k_list)
    if (k < 1 || k > c.n) throw std::invalid_argument("k_list entries must lie in [1, n]");
}

std::string regime_flag(int n, long long N) {
  const double dn = n;
  const double dN = static_cast<double>(N);
  if (dN < dn || std::log(dN) > std::sqrt(dn)) return "out-of-regime";
  if (dN < dn * dn) return "upper-only";
  return "in-regime";
}

}  // namespace polyrad
