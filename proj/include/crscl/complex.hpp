#pragma once

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>

namespace crscl {

/// A pair of same-precision IEEE-754 values. No normalization is ever
/// applied: signed zeros, subnormals, infinities and NaN payloads are stored
/// as given.
///
/// There is intentionally no division operator. Every quotient in this
/// library goes through an explicit algorithm (reciprocal plan, Smith or
/// textbook division) so that the operation count is visible.
template <std::floating_point T>
struct Complex {
  T re{};
  T im{};

  friend constexpr Complex operator+(Complex a, Complex b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr Complex operator-(Complex a, Complex b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr Complex operator-(Complex a) { return {-a.re, -a.im}; }

  // Conventional 4-multiply / 2-add product.
  friend constexpr Complex operator*(Complex a, Complex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

template <std::floating_point T>
constexpr Complex<T> conj(Complex<T> z) {
  return {z.re, -z.im};
}

template <std::floating_point T>
bool is_nan(Complex<T> z) {
  return std::isnan(z.re) || std::isnan(z.im);
}

template <std::floating_point T>
bool is_inf(Complex<T> z) {
  return std::isinf(z.re) || std::isinf(z.im);
}

template <std::floating_point T>
bool is_finite(Complex<T> z) {
  return std::isfinite(z.re) && std::isfinite(z.im);
}

/// Bitwise identity of both parts (distinguishes -0 from +0, compares NaN payloads).
template <std::floating_point T>
bool bit_equal(Complex<T> a, Complex<T> b) {
  using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  return std::bit_cast<Bits>(a.re) == std::bit_cast<Bits>(b.re) &&
         std::bit_cast<Bits>(a.im) == std::bit_cast<Bits>(b.im);
}

}  // namespace crscl
