#include "crscl/vector_scaling.hpp"

#include <cmath>

namespace crscl {

std::string_view to_string(Division d) {
  return d == Division::Smith ? "smith" : "textbook";
}

template <std::floating_point T>
void scal_real(StridedVector<T> x, T c, FlopCounter* counter) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex<T>& v = x[i];
    v.re *= c;
    v.im *= c;
  }
  if (counter) counter->real_mul += 2 * n;
}

template <std::floating_point T>
void scal_imaginary(StridedVector<T> x, T t, FlopCounter* counter) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex<T>& v = x[i];
    const T re = v.re;
    v.re = -(v.im * t);
    v.im = re * t;
  }
  if (counter) counter->real_mul += 2 * n;
}

template <std::floating_point T>
void scal_complex(StridedVector<T> x, Complex<T> c, FlopCounter* counter) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = x[i] * c;
  }
  if (counter) {
    counter->real_mul += 4 * n;
    counter->real_add += 2 * n;
    counter->complex_mul += n;
  }
}

template <std::floating_point T>
void apply_plan(StridedVector<T> x, const ScalePlan<T>& plan, FlopCounter* counter) {
  for (const ScaleStep<T>& step : plan.steps()) {
    switch (step.kind) {
      case StepKind::RealFactor: scal_real(x, step.value.re, counter); break;
      case StepKind::ImaginaryFactor: scal_imaginary(x, step.value.im, counter); break;
      case StepKind::ComplexFactor: scal_complex(x, step.value, counter); break;
    }
  }
}

template <std::floating_point T>
void rscl(StridedVector<T> x, T a, const FpEnv<T>& env, FlopCounter* counter) {
  if (x.size() == 0) return;
  const ScalePlan<T> plan = reciprocal_plan(Complex<T>{a, T(0)}, env);
  if (counter) counter->real_div += static_cast<std::uint64_t>(plan.division_count);
  apply_plan(x, plan, counter);
}

template <std::floating_point T>
void crscl(StridedVector<T> x, Complex<T> a, const FpEnv<T>& env, FlopCounter* counter) {
  if (x.size() == 0) return;
  const ScalePlan<T> plan = reciprocal_plan(a, env);
  if (counter) counter->real_div += static_cast<std::uint64_t>(plan.division_count);
  apply_plan(x, plan, counter);
}

template <std::floating_point T>
Complex<T> smith_div(Complex<T> num, Complex<T> den) {
  const T c = den.re;
  const T d = den.im;
  if (std::fabs(c) >= std::fabs(d)) {
    const T r = d / c;
    const T t = c + d * r;
    return {(num.re + num.im * r) / t, (num.im - num.re * r) / t};
  }
  const T r = c / d;
  const T t = d + c * r;
  return {(num.re * r + num.im) / t, (num.im * r - num.re) / t};
}

template <std::floating_point T>
Complex<T> textbook_div(Complex<T> num, Complex<T> den) {
  const T t = den.re * den.re + den.im * den.im;
  return {(num.re * den.re + num.im * den.im) / t, (num.im * den.re - num.re * den.im) / t};
}

template <std::floating_point T>
void naive_div_scale(StridedVector<T> x, Complex<T> a, Division division, FlopCounter* counter) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = divide(x[i], a, division);
  }
  if (counter) {
    if (division == Division::Smith) {
      counter->real_div += 3 * n;
      counter->real_mul += 3 * n;
      counter->real_add += 3 * n;
    } else {
      counter->real_div += 2 * n;
      counter->real_mul += 6 * n;
      counter->real_add += 3 * n;
    }
    counter->complex_div += n;
  }
}

#define CRSCL_INSTANTIATE(T)                                                                \
  template void scal_real(StridedVector<T>, T, FlopCounter*);                              \
  template void scal_imaginary(StridedVector<T>, T, FlopCounter*);                         \
  template void scal_complex(StridedVector<T>, Complex<T>, FlopCounter*);                  \
  template void apply_plan(StridedVector<T>, const ScalePlan<T>&, FlopCounter*);           \
  template void rscl(StridedVector<T>, T, const FpEnv<T>&, FlopCounter*);                  \
  template void crscl(StridedVector<T>, Complex<T>, const FpEnv<T>&, FlopCounter*);        \
  template Complex<T> smith_div(Complex<T>, Complex<T>);                                   \
  template Complex<T> textbook_div(Complex<T>, Complex<T>);                                \
  template void naive_div_scale(StridedVector<T>, Complex<T>, Division, FlopCounter*);

CRSCL_INSTANTIATE(float)
CRSCL_INSTANTIATE(double)

#undef CRSCL_INSTANTIATE

}  // namespace crscl
