#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "ordercdf/errors.hpp"

namespace ordercdf::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Shortest "%.Ng" rendering that parses back to the same double.
inline std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// 15 significant digits; the output format for measure and cdf values.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline double parse_real(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) throw DomainError("empty real literal");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size() || errno == ERANGE || std::isnan(v)) {
    throw DomainError("malformed real literal '" + str + "'");
  }
  return v == 0.0 ? 0.0 : v;  // folds -0
}

inline long long parse_integer(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) throw DomainError("empty integer literal");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(str.c_str(), &end, 10);
  if (end != str.c_str() + str.size() || errno == ERANGE) {
    throw DomainError("malformed integer literal '" + str + "'");
  }
  return v;
}

// Labels must not collide with interval/point punctuation.
inline bool valid_label(std::string_view s) {
  if (s.empty() || s != trim(s)) return false;
  if (s == "inf" || s == "-inf" || s == "+inf") return false;
  for (char c : s) {
    if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' ||
        c == '"' || c == '\n') {
      return false;
    }
  }
  return true;
}

}  // namespace ordercdf::text
