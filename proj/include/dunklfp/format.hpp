#pragma once

#include <optional>
#include <string>
#include <utility>

namespace dunklfp {

// (p, q) with q > 0 when x is within 1e-12 of p/q for some q <= max_den.
std::optional<std::pair<long long, long long>> as_rational(double x, long long max_den = 1000);

// "p/q", "p" for integers, otherwise 12 significant digits.
std::string format_number(double x);

// Always 12 significant digits.
std::string format_real(double x);

}  // namespace dunklfp
