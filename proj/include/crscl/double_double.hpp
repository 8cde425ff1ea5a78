#pragma once

#include <cmath>

namespace crscl {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2. Roughly 106 significant
/// bits; used only as the reference arithmetic for binary64 problems.
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double hi) : hi_(hi) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double to_double() const { return hi_ + lo_; }

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
  }

  static DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend DoubleDouble operator-(DoubleDouble x) { return {-x.hi_, -x.lo_}; }

  friend DoubleDouble operator+(DoubleDouble x, DoubleDouble y) {
    DoubleDouble s = two_sum(x.hi_, y.hi_);
    const DoubleDouble t = two_sum(x.lo_, y.lo_);
    s.lo_ += t.hi_;
    s = fast_two_sum(s.hi_, s.lo_);
    s.lo_ += t.lo_;
    return fast_two_sum(s.hi_, s.lo_);
  }

  friend DoubleDouble operator-(DoubleDouble x, DoubleDouble y) { return x + (-y); }

  friend DoubleDouble operator*(DoubleDouble x, DoubleDouble y) {
    DoubleDouble p = two_prod(x.hi_, y.hi_);
    p.lo_ += x.hi_ * y.lo_ + x.lo_ * y.hi_;
    return fast_two_sum(p.hi_, p.lo_);
  }

  friend DoubleDouble operator/(DoubleDouble x, DoubleDouble y) {
    const double q1 = x.hi_ / y.hi_;
    if (!std::isfinite(q1) || q1 == 0.0) return {q1, 0.0};
    const DoubleDouble r = x - y * DoubleDouble(q1);
    const double q2 = r.hi_ / y.hi_;
    const DoubleDouble r2 = r - y * DoubleDouble(q2);
    const double q3 = r2.hi_ / y.hi_;
    DoubleDouble q = fast_two_sum(q1, q2);
    return q + DoubleDouble(q3);
  }

  friend DoubleDouble ldexp(DoubleDouble x, int e) {
    return {std::ldexp(x.hi_, e), std::ldexp(x.lo_, e)};
  }

 private:
  static DoubleDouble fast_two_sum(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return {s, 0.0};
    return {s, b - (s - a)};
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace crscl
