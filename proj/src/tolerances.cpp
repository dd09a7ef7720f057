#include <cstdlib>
#include <string>

#include "phasekit/types.hpp"

namespace phasekit {

namespace {

double parse_positive(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("tolerance: cannot parse '" + text + "'");
  }
  if (used != text.size() || !(value > 0.0)) {
    throw DomainError("tolerance: expected a positive number, got '" + text + "'");
  }
  return value;
}

}  // namespace

Tolerances Tolerances::parse(const std::string& text) {
  Tolerances tol;
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    tol.matrix = parse_positive(text);
    tol.composite = 100.0 * tol.matrix;
  } else {
    tol.matrix = parse_positive(text.substr(0, comma));
    tol.composite = parse_positive(text.substr(comma + 1));
  }
  return tol;
}

Tolerances Tolerances::from_env() {
  const char* env = std::getenv("PHASEKIT_TOLERANCE");
  if (env == nullptr || *env == '\0') return {};
  return parse(env);
}

}  // namespace phasekit
