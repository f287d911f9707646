#include "groupalg/core.hpp"

#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace groupalg {

namespace {

double parse_positive(std::string_view text) {
  std::string buf(text);
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !(value > 0.0))
    throw Error("GROUPALG_TOL: expected a positive number, got '" + buf + "'");
  return value;
}

} // namespace

Tolerances Tolerances::parse(const std::string& text) {
  Tolerances tol;
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    tol.exact = tol.accumulated = parse_positive(text);
  } else {
    tol.exact = parse_positive(std::string_view(text).substr(0, comma));
    tol.accumulated = parse_positive(std::string_view(text).substr(comma + 1));
  }
  return tol;
}

Tolerances Tolerances::from_env() {
  const char* env = std::getenv("GROUPALG_TOL");
  if (env == nullptr || *env == '\0') return {};
  return parse(env);
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

} // namespace groupalg
