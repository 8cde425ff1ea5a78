#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "crscl/complex.hpp"

namespace crscl::test {

// Counts nextafter steps from p to q. Independent of the bit-pattern
// arithmetic used by ulp_distance; only sensible for short distances.
template <std::floating_point T>
std::uint64_t enumerate_steps(T p, T q, std::uint64_t limit = 1u << 20) {
  std::uint64_t n = 0;
  T v = p;
  const T dir = q > p ? std::numeric_limits<T>::infinity() : -std::numeric_limits<T>::infinity();
  while (v != q && n < limit) {
    v = std::nextafter(v, dir);
    ++n;
  }
  return n;
}

// Random value with uniformly random significand, sign and exponent in
// [lo, hi].
template <std::floating_point T>
T random_normal(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  std::uniform_real_distribution<double> m(1.0, 2.0);
  const double v = std::ldexp(m(rng), e(rng));
  return static_cast<T>(rng() & 1 ? -v : v);
}

template <std::floating_point T>
bool same_value(Complex<T> a, Complex<T> b) {
  auto eq = [](T x, T y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  return eq(a.re, b.re) && eq(a.im, b.im);
}

}  // namespace crscl::test
