#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gfun/series.hpp"

namespace gfun {

/// Shortest round-trippable rendering of a double.
inline std::string format_double(double x) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

/// Coefficient CSV: header `k,re,im`, then one `k,re,im` row per coefficient.
inline void write_csv(std::ostream& os, const TruncatedSeries& f) {
  os << "k,re,im\n";
  for (std::size_t k = 0; k <= f.order(); ++k)
    os << k << ',' << format_double(f[k].real()) << ',' << format_double(f[k].imag()) << '\n';
}

namespace detail {

inline double parse_field(const std::string& s, std::size_t line) {
  if (s.empty()) throw ParameterError("csv line " + std::to_string(line) + ": empty field");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw ParameterError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace detail

/**
 * Reads the coefficient CSV. Rows may come in any order but every index
 * 0..N must appear exactly once.
 */
inline TruncatedSeries read_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') ++i;
    return s.substr(i);
  };

  if (!std::getline(is, line)) throw ParameterError("csv: missing header");
  ++lineno;
  if (trim(line) != "k,re,im") throw ParameterError("csv: header must be 'k,re,im'");

  std::vector<Complex> coeffs;
  std::vector<bool> seen;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (fields.size() != 3)
      throw ParameterError("csv line " + std::to_string(lineno) + ": expected 3 fields");
    const double kd = detail::parse_field(fields[0], lineno);
    if (kd < 0 || kd != static_cast<double>(static_cast<std::size_t>(kd)) || kd > 1e7)
      throw ParameterError("csv line " + std::to_string(lineno) + ": bad index");
    const auto k = static_cast<std::size_t>(kd);
    if (k >= coeffs.size()) {
      coeffs.resize(k + 1);
      seen.resize(k + 1, false);
    }
    if (seen[k]) throw ParameterError("csv line " + std::to_string(lineno) + ": duplicate index");
    seen[k] = true;
    coeffs[k] = {detail::parse_field(fields[1], lineno), detail::parse_field(fields[2], lineno)};
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) throw ParameterError("csv: missing coefficient " + std::to_string(k));
  return TruncatedSeries(std::move(coeffs));
}

}  // namespace gfun
