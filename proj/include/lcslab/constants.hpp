#pragma once

// Closed-form growth constants and the finite-n quotients measured against
// them.

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace lcslab {

struct NamedConstant {
  std::string name;
  std::string formula;
  double value;
  std::string printed;  // reference decimals
};

inline std::vector<NamedConstant> growth_constants() {
  const double s17 = std::sqrt(17.0);
  const double beta_upper = std::log2(3.0 + s17) - 1.0;
  const double nu = beta_upper / std::log2(1.0 + std::sqrt(2.0));
  return {
      {"mu", "(3+sqrt(17))/2", (3.0 + s17) / 2.0, "3,56155"},
      {"nu", "(log2(3+sqrt(17))-1)/log2(1+sqrt(2))", nu, "1,44115577304"},
      {"delta", "log2(1+sqrt(2))/(log2(3+sqrt(17))-1)", 1.0 / nu, "0,69391"},
      {"log2_3", "log2(3)", std::log2(3.0), "1.5849"},
      {"beta_upper", "log2(3+sqrt(17))-1", beta_upper, "1.8325"},
  };
}

inline std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

// True iff x, cut to as many decimals as `printed` shows, reproduces it
// either truncated or rounded. A decimal comma is read as a point.
inline bool matches_printed(double x, std::string_view printed) {
  std::string p(printed);
  for (auto& c : p)
    if (c == ',') c = '.';
  const auto dot = p.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(p.size() - dot - 1);
  const double scale = std::pow(10.0, decimals);
  const std::string truncated = fixed(std::floor(x * scale) / scale, decimals);
  return truncated == p || fixed(x, decimals) == p;
}

}  // namespace lcslab
