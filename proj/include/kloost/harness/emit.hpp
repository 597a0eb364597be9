#pragma once

// CSV and JSON persistence for sweep records. Numbers are rendered with
// std::to_chars, so output never depends on the process locale.

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "kloost/errors.hpp"
#include "kloost/harness/config.hpp"
#include "kloost/harness/sweep.hpp"

namespace kloost::harness {

inline constexpr std::string_view kCsvHeader =
    "p,a,b,M,L,theta,re,im,abs_S,unit_count,weil,thm1_best,best_r,conj1,ratio_thm1,ratio_conj,seed,"
    "sample_index";

inline constexpr int kSignificantDigits = 12;

inline std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                                 kSignificantDigits);
  return std::string(buf.data(), res.ptr);
}

template <typename Int>
std::string format_int(Int v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// Rounds to the precision the CSV carries, so both formats hold the same values.
inline double rendered(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_real(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

inline std::string csv_row(const ExperimentRecord& r) {
  std::string row;
  auto put = [&row](const std::string& field) {
    if (!row.empty()) row += ',';
    row += field;
  };
  put(format_int(r.p));
  put(format_int(r.a));
  put(format_int(r.b));
  put(format_int(r.M));
  put(format_int(r.L));
  put(format_real(r.theta));
  put(format_real(r.re));
  put(format_real(r.im));
  put(format_real(r.abs_S));
  put(format_int(r.unit_count));
  put(format_real(r.weil));
  put(format_real(r.thm1_best));
  put(format_int(r.best_r));
  put(format_real(r.conj1));
  put(format_real(r.ratio_thm1));
  put(format_real(r.ratio_conj));
  put(format_int(r.seed));
  put(format_int(r.sample_index));
  return row;
}

inline void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

inline nlohmann::ordered_json to_json(const ExperimentRecord& r) {
  auto real = [](double v) -> nlohmann::ordered_json {
    if (!std::isfinite(v)) return nullptr;
    return rendered(v);
  };
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["a"] = r.a;
  j["b"] = r.b;
  j["M"] = r.M;
  j["L"] = r.L;
  j["theta"] = real(r.theta);
  j["re"] = real(r.re);
  j["im"] = real(r.im);
  j["abs_S"] = real(r.abs_S);
  j["unit_count"] = r.unit_count;
  j["weil"] = real(r.weil);
  j["thm1_best"] = real(r.thm1_best);
  j["best_r"] = r.best_r;
  j["conj1"] = real(r.conj1);
  j["ratio_thm1"] = real(r.ratio_thm1);
  j["ratio_conj"] = real(r.ratio_conj);
  j["seed"] = r.seed;
  j["sample_index"] = r.sample_index;
  return j;
}

inline void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  out << arr.dump(2) << '\n';
}

inline void emit(const std::vector<ExperimentRecord>& records, const std::string& path, OutputFormat format) {
  auto write = [&](std::ostream& out) {
    if (format == OutputFormat::csv) {
      write_csv(out, records);
    } else {
      write_json(out, records);
    }
  };
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw OutputIoError("failed writing records to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputIoError("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw OutputIoError("failed writing '" + path + "'");
}

namespace detail {

template <typename T>
T parse_field(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (text == "inf") return std::numeric_limits<T>::infinity();
    if (text == "nan") return std::numeric_limits<T>::quiet_NaN();
  }
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::runtime_error("bad CSV field '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

inline std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("missing or wrong CSV header");
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = kloost::harness::detail::split(line, ',');
    if (f.size() != 18) throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields");
    ExperimentRecord r;
    r.p = detail::parse_field<u64>(f[0]);
    r.a = detail::parse_field<i64>(f[1]);
    r.b = detail::parse_field<i64>(f[2]);
    r.M = detail::parse_field<i64>(f[3]);
    r.L = detail::parse_field<u64>(f[4]);
    r.theta = detail::parse_field<double>(f[5]);
    r.re = detail::parse_field<double>(f[6]);
    r.im = detail::parse_field<double>(f[7]);
    r.abs_S = detail::parse_field<double>(f[8]);
    r.unit_count = detail::parse_field<u64>(f[9]);
    r.weil = detail::parse_field<double>(f[10]);
    r.thm1_best = detail::parse_field<double>(f[11]);
    r.best_r = detail::parse_field<int>(f[12]);
    r.conj1 = detail::parse_field<double>(f[13]);
    r.ratio_thm1 = detail::parse_field<double>(f[14]);
    r.ratio_conj = detail::parse_field<double>(f[15]);
    r.seed = detail::parse_field<u64>(f[16]);
    r.sample_index = detail::parse_field<u64>(f[17]);
    out.push_back(r);
  }
  return out;
}

}  // namespace kloost::harness
