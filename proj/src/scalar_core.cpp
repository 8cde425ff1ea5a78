#include "crscl/scalar_core.hpp"

#include <cassert>
#include <cmath>

namespace crscl {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::RealDenominator: return "RealDenominator";
    case CaseTag::ImaginaryDenominator: return "ImaginaryDenominator";
    case CaseTag::FullSafe: return "FullSafe";
    case CaseTag::FullSmall: return "FullSmall";
    case CaseTag::FullInfOperand: return "FullInfOperand";
    case CaseTag::FullInfRescue: return "FullInfRescue";
    case CaseTag::FullLarge: return "FullLarge";
  }
  return "?";
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::RealFactor: return "RealFactor";
    case StepKind::ImaginaryFactor: return "ImaginaryFactor";
    case StepKind::ComplexFactor: return "ComplexFactor";
  }
  return "?";
}

template <std::floating_point T>
void ScalePlan<T>::push(ScaleStep<T> step) {
  assert(size_ < steps_.size());
  steps_[size_++] = step;
}

template <std::floating_point T>
UrUi<T> compute_uv(Complex<T> a) {
  const T ar = a.re;
  const T ai = a.im;
  return {ar + ai * (ai / ar), ai + ar * (ar / ai)};
}

namespace {

template <std::floating_point T>
T abs_of(T v) {
  return std::fabs(v);
}

template <std::floating_point T>
class PlanBuilder {
 public:
  explicit PlanBuilder(const FpEnv<T>& env) : env_(env) {}

  T quot(T num, T den) {
    ++plan_.division_count;
    return num / den;
  }

  void real(T v) { plan_.push({StepKind::RealFactor, {v, T(0)}}); }
  void imaginary(T v) { plan_.push({StepKind::ImaginaryFactor, {T(0), v}}); }
  void complex(T re, T im) { plan_.push({StepKind::ComplexFactor, {re, im}}); }

  // Real or purely imaginary denominator d. Out of the safe range the
  // reciprocal is split into a power-of-two pass and a corrected factor,
  // ordered so the intermediate lies between x and the result.
  template <class Emit>
  void one_part(T d, Emit emit) {
    if (safe_range(d, env_)) {
      emit(quot(T(1), d));
    } else if (abs_of(d) < env_.sfmin) {
      emit(quot(env_.sfmin, d));
      real(env_.safmax);
    } else {
      real(env_.sfmin);
      emit(quot(T(1), env_.sfmin * d));
    }
  }

  ScalePlan<T> finish(CaseTag tag) {
    plan_.tag = tag;
    return plan_;
  }

  const FpEnv<T>& env() const { return env_; }

 private:
  const FpEnv<T>& env_;
  ScalePlan<T> plan_;
};

}  // namespace

template <std::floating_point T>
ScalePlan<T> reciprocal_plan(Complex<T> a, const FpEnv<T>& env) {
  PlanBuilder<T> b(env);
  const T ar = a.re;
  const T ai = a.im;
  const T sfmin = env.sfmin;

  if (ai == T(0)) {
    b.one_part(ar, [&](T v) { b.real(v); });
    return b.finish(CaseTag::RealDenominator);
  }
  if (ar == T(0)) {
    b.one_part(ai, [&](T v) { b.imaginary(-v); });
    return b.finish(CaseTag::ImaginaryDenominator);
  }

  // Both parts nonzero. The two quotients are kept for the rescue branch
  // so the whole plan stays within four divisions.
  const T r1 = b.quot(ai, ar);
  const T r2 = b.quot(ar, ai);
  const T ur = ar + ai * r1;
  const T ui = ai + ar * r2;

  if (safe_range(ur, env) && safe_range(ui, env)) {
    b.complex(b.quot(T(1), ur), -b.quot(T(1), ui));
    return b.finish(CaseTag::FullSafe);
  }
  if (abs_of(ur) < sfmin || abs_of(ui) < sfmin) {
    // Both UR and UI are small here, and at least one part of a is
    // subnormal. sfmin/UR and sfmin/UI are formed from a scaled by 1/sfmin
    // (exact) so that no product rounds below the normal range.
    const T ars = ar * env.safmax;
    const T ais = ai * env.safmax;
    b.complex(b.quot(T(1), ars + ais * r1), -b.quot(T(1), ais + ars * r2));
    b.real(env.safmax);
    return b.finish(CaseTag::FullSmall);
  }
  if (!std::isfinite(ar) || !std::isfinite(ai)) {
    // UR and UI are both infinite or both NaN.
    b.complex(b.quot(T(1), ur), -b.quot(T(1), ui));
    return b.finish(CaseTag::FullInfOperand);
  }

  T urs;
  T uis;
  CaseTag tag;
  if (std::isinf(ur) || std::isinf(ui)) {
    // sfmin*UR and sfmin*UI rebuilt from scaled terms so no intermediate
    // reaches the overflowed magnitude.
    urs = sfmin * ar + ai * (sfmin * r1);
    uis = sfmin * ai + ar * (sfmin * r2);
    tag = CaseTag::FullInfRescue;
  } else {
    urs = sfmin * ur;
    uis = sfmin * ui;
    tag = CaseTag::FullLarge;
  }
  if (abs_of(urs) >= sfmin && abs_of(uis) >= sfmin) {
    b.real(sfmin);
    b.complex(b.quot(T(1), urs), -b.quot(T(1), uis));
  } else {
    // The parts of 1/a are further apart than the exponent range allows
    // under a common sfmin scale. The smaller one is below the normal
    // range anyway, so drop the scale and let it round.
    b.complex(b.quot(T(1), ur), -b.quot(T(1), ui));
  }
  return b.finish(tag);
}

template class ScalePlan<float>;
template class ScalePlan<double>;
template UrUi<float> compute_uv(Complex<float>);
template UrUi<double> compute_uv(Complex<double>);
template ScalePlan<float> reciprocal_plan(Complex<float>, const FpEnv<float>&);
template ScalePlan<double> reciprocal_plan(Complex<double>, const FpEnv<double>&);

}  // namespace crscl
