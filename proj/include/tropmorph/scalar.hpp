#pragma once

/**
 * @file scalar.hpp
 * @brief Max-plus scalars: the reals extended with a bottom element.
 *
 * An ExtendedReal is a plain double where -infinity plays the role of the
 * semiring zero: it absorbs under + and is neutral for max. IEEE arithmetic
 * already gives both laws as long as +infinity never enters, so no wrapper
 * type is needed. Stored matrix weights are always finite.
 */

#include <charconv>
#include <cmath>
#include <limits>
#include <span>
#include <string>

namespace tropmorph {

using ExtendedReal = double;

inline constexpr ExtendedReal kBottom = -std::numeric_limits<double>::infinity();

/// Tolerance used by the asticity and equivalence tests when weights are not integral.
inline constexpr double kDefaultTolerance = 1e-9;

inline bool is_bottom(ExtendedReal v) noexcept { return v == kBottom; }

/// Max-plus product of two scalars.
inline ExtendedReal otimes(ExtendedReal lhs, ExtendedReal rhs) noexcept {
  if (is_bottom(lhs) || is_bottom(rhs)) return kBottom;
  return lhs + rhs;
}

/// Max-plus sum of two scalars.
inline ExtendedReal oplus(ExtendedReal lhs, ExtendedReal rhs) noexcept {
  return lhs < rhs ? rhs : lhs;
}

inline bool is_integral_value(double v) noexcept {
  return std::isfinite(v) && std::nearbyint(v) == v;
}

/// Equality with absolute tolerance; two bottoms compare equal.
inline bool near(ExtendedReal lhs, ExtendedReal rhs, double tol) noexcept {
  if (is_bottom(lhs) || is_bottom(rhs)) return lhs == rhs;
  return std::fabs(lhs - rhs) <= tol;
}

/// Exact comparison when every value is integral, kDefaultTolerance otherwise.
inline double tolerance_for(std::span<const double> values) noexcept {
  for (double v : values) {
    if (!is_bottom(v) && !is_integral_value(v)) return kDefaultTolerance;
  }
  return 0.0;
}

/// Shortest text that reads back to the same double; "-inf" for the bottom.
inline std::string format_real(double v) {
  if (is_bottom(v)) return "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

}  // namespace tropmorph
