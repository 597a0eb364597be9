#pragma once

// SweepConfig and its flat key=value file format:
//
//   # comment
//   primes = 1009, 10007          (or  primes = range:lo:hi:count)
//   theta_list = 0.4, 0.5, 0.75
//   samples_per_cell = 100
//   r_max = 10
//   epsilon = 0
//   seed = 12345
//   output_path = sweep.csv       ("-" writes to stdout)
//   output_format = csv           (or json)

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kloost/arith.hpp"
#include "kloost/errors.hpp"

namespace kloost::harness {

enum class OutputFormat { csv, json };

struct SweepConfig {
  std::vector<u64> primes;
  std::vector<double> theta_list;
  u64 samples_per_cell = 1;
  int r_max = 10;
  double epsilon = 0.0;
  u64 seed = 0;
  std::string output_path = "-";
  OutputFormat output_format = OutputFormat::csv;
};

inline void validate(const SweepConfig& cfg) {
  if (cfg.primes.empty()) throw ConfigInvalid("primes: no primes configured");
  for (u64 p : cfg.primes) {
    if (p < 3 || !is_prime(p)) throw ConfigInvalid("primes: " + std::to_string(p) + " is not an odd prime");
  }
  if (cfg.theta_list.empty()) throw ConfigInvalid("theta_list: empty");
  for (double t : cfg.theta_list) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigInvalid("theta_list: " + std::to_string(t) + " not in (0, 1]");
  }
  if (cfg.samples_per_cell < 1) throw ConfigInvalid("samples_per_cell must be >= 1");
  if (cfg.r_max < 2) throw ConfigInvalid("r_max must be >= 2");
  if (!(cfg.epsilon >= 0.0)) throw ConfigInvalid("epsilon must be >= 0");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigInvalid(std::string(key) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// Expands range:lo:hi:count into up to `count` primes spread evenly over
/// [lo, hi]: for each of `count` equally spaced targets, the least prime at or
/// above it (duplicates dropped, primes above hi discarded).
inline std::vector<u64> expand_prime_range(u64 lo, u64 hi, u64 count) {
  if (lo > hi || count == 0) throw ConfigInvalid("primes: bad range");
  std::set<u64> picked;
  for (u64 i = 0; i < count; ++i) {
    const u64 target =
        count == 1 ? lo : lo + static_cast<u64>(static_cast<u128>(hi - lo) * i / (count - 1));
    const u64 q = next_prime(std::max<u64>(target, 3));
    if (q <= hi) picked.insert(q);
  }
  if (picked.empty()) throw ConfigInvalid("primes: no prime in range");
  return {picked.begin(), picked.end()};
}

inline std::vector<u64> parse_primes(std::string_view value) {
  if (value.starts_with("range:")) {
    const auto parts = detail::split(value.substr(6), ':');
    if (parts.size() != 3) throw ConfigInvalid("primes: expected range:lo:hi:count");
    return expand_prime_range(detail::parse_number<u64>(parts[0], "primes"),
                              detail::parse_number<u64>(parts[1], "primes"),
                              detail::parse_number<u64>(parts[2], "primes"));
  }
  std::vector<u64> out;
  for (auto part : detail::split(value, ',')) out.push_back(detail::parse_number<u64>(part, "primes"));
  return out;
}

inline SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  bool have_primes = false, have_theta = false;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigInvalid("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(detail::trim(view.substr(0, eq)));
    const std::string_view value = detail::trim(view.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigInvalid("duplicate key '" + key + "'");

    if (key == "primes") {
      cfg.primes = parse_primes(value);
      have_primes = true;
    } else if (key == "theta_list") {
      cfg.theta_list.clear();
      for (auto part : detail::split(value, ',')) cfg.theta_list.push_back(detail::parse_number<double>(part, key));
      have_theta = true;
    } else if (key == "samples_per_cell") {
      cfg.samples_per_cell = detail::parse_number<u64>(value, key);
    } else if (key == "r_max") {
      cfg.r_max = detail::parse_number<int>(value, key);
    } else if (key == "epsilon") {
      cfg.epsilon = detail::parse_number<double>(value, key);
    } else if (key == "seed") {
      cfg.seed = detail::parse_number<u64>(value, key);
    } else if (key == "output_path") {
      cfg.output_path = std::string(value);
    } else if (key == "output_format") {
      if (value == "csv") {
        cfg.output_format = OutputFormat::csv;
      } else if (value == "json") {
        cfg.output_format = OutputFormat::json;
      } else {
        throw ConfigInvalid("output_format must be csv or json");
      }
    } else {
      throw ConfigInvalid("unknown key '" + key + "'");
    }
  }
  if (!have_primes) throw ConfigInvalid("missing key 'primes'");
  if (!have_theta) throw ConfigInvalid("missing key 'theta_list'");
  validate(cfg);
  return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file '" + path + "'");
  return parse_sweep_config(in);
}

}  // namespace kloost::harness
