#pragma once

#include <concepts>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace crscl {

enum class Precision { Binary32, Binary64 };

std::string_view to_string(Precision p);

/// Parses "binary32" / "binary64" (also "single" / "double", "f32" / "f64").
/// Throws std::invalid_argument on anything else.
Precision parse_precision(std::string_view text);

template <std::floating_point T>
inline constexpr Precision precision_of =
    sizeof(T) == 4 ? Precision::Binary32 : Precision::Binary64;

/// Per-precision floating-point constants, all derived from the IEEE-754
/// format parameters.
///
/// `sfmin` is the smallest normal number whose reciprocal does not overflow;
/// for IEEE formats that is the smallest normal number itself, because
/// 1/max is below it. `safmax` is its exact reciprocal (a power of two).
template <std::floating_point T>
struct FpEnv {
  Precision precision;
  T sfmin;
  T eps;  // unit roundoff u
  T overflow;
  T min_subnormal;
  T safmax;
};

template <std::floating_point T>
constexpr FpEnv<T> fp_env() {
  static_assert(std::numeric_limits<T>::is_iec559);
  using L = std::numeric_limits<T>;
  // 1/max < min for both binary formats, so sfmin is the smallest normal.
  static_assert(T(1) / L::max() < L::min());
  return FpEnv<T>{precision_of<T>, L::min(), L::epsilon() / 2, L::max(), L::denorm_min(),
                  T(1) / L::min()};
}

/// gamma_k = k u / (1 - k u), evaluated in extended precision.
/// Throws std::domain_error when k < 1 or k u >= 1.
template <std::floating_point T>
double gamma(int k, const FpEnv<T>& env) {
  const long double ku = static_cast<long double>(k) * static_cast<long double>(env.eps);
  if (k < 1 || ku >= 1.0L) {
    throw std::domain_error("gamma: k*u must lie in (0, 1)");
  }
  return static_cast<double>(ku / (1.0L - ku));
}

/// True iff sfmin <= |v| <= 1/sfmin. NaN is never in the safe range.
template <std::floating_point T>
constexpr bool safe_range(T v, const FpEnv<T>& env) {
  const T mag = v < 0 ? -v : v;
  return mag >= env.sfmin && mag <= env.safmax;
}

}  // namespace crscl
