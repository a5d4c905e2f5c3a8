#include "dunklfp/format.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace dunklfp {

std::optional<std::pair<long long, long long>> as_rational(double x, long long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  for (long long q = 1; q <= max_den; ++q) {
    const double scaled = x * static_cast<double>(q);
    const double p = std::nearbyint(scaled);
    if (std::fabs(p) > 1e15) return std::nullopt;
    if (std::fabs(scaled - p) <= 1e-12 * static_cast<double>(q) * std::max(1.0, std::fabs(x))) {
      const long long pi = static_cast<long long>(p);
      const long long g = std::gcd(pi, q);
      return std::make_pair(pi / (g == 0 ? 1 : g), q / (g == 0 ? 1 : g));
    }
  }
  return std::nullopt;
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_number(double x) {
  const auto r = as_rational(x);
  if (!r) return format_real(x);
  if (r->second == 1) return std::to_string(r->first);
  return std::to_string(r->first) + "/" + std::to_string(r->second);
}

}  // namespace dunklfp
