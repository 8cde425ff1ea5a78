#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "crscl/complex.hpp"
#include "crscl/fp_env.hpp"

namespace crscl {

/// Branch taken when building the reciprocal of a complex scalar a = ar + ai*i.
enum class CaseTag {
  RealDenominator,       // ai == 0
  ImaginaryDenominator,  // ar == 0, ai != 0
  FullSafe,              // UR and UI both in the safe range
  FullSmall,             // |UR| or |UI| below sfmin
  FullInfOperand,        // ar or ai is not finite
  FullInfRescue,         // ar, ai finite but UR or UI overflowed
  FullLarge,             // ar, ai, UR, UI finite, |UR| or |UI| above 1/sfmin
};

inline constexpr std::array kAllCaseTags = {
    CaseTag::RealDenominator, CaseTag::ImaginaryDenominator, CaseTag::FullSafe,
    CaseTag::FullSmall,       CaseTag::FullInfOperand,       CaseTag::FullInfRescue,
    CaseTag::FullLarge,
};

std::string_view to_string(CaseTag tag);

enum class StepKind { RealFactor, ImaginaryFactor, ComplexFactor };

std::string_view to_string(StepKind kind);

/// One multiplier pass over the vector. For RealFactor `value.im` is zero,
/// for ImaginaryFactor `value.re` is zero.
template <std::floating_point T>
struct ScaleStep {
  StepKind kind;
  Complex<T> value;
};

/// Ordered multiplier passes whose product is 1/a.
template <std::floating_point T>
class ScalePlan {
 public:
  CaseTag tag{CaseTag::RealDenominator};
  int division_count{0};  // real divisions spent building the plan

  std::span<const ScaleStep<T>> steps() const { return {steps_.data(), size_}; }
  std::size_t size() const { return size_; }

  void push(ScaleStep<T> step);

 private:
  std::array<ScaleStep<T>, 2> steps_{};
  std::size_t size_{0};
};

template <std::floating_point T>
struct UrUi {
  T ur;
  T ui;
};

/// UR = AR + AI*(AI/AR), UI = AI + AR*(AR/AI), with exactly that
/// evaluation order. Then 1/a = 1/UR - i/UI.
/// Requires a.re != 0 and a.im != 0.
template <std::floating_point T>
UrUi<T> compute_uv(Complex<T> a);

/// Builds the multiplier plan for scaling by 1/a. Accepts every bit
/// pattern of `a`; a == 0 yields infinite factors, NaN parts yield NaN
/// factors. Uses at most four real divisions and no complex division.
template <std::floating_point T>
ScalePlan<T> reciprocal_plan(Complex<T> a, const FpEnv<T>& env);

extern template class ScalePlan<float>;
extern template class ScalePlan<double>;
extern template UrUi<float> compute_uv(Complex<float>);
extern template UrUi<double> compute_uv(Complex<double>);
extern template ScalePlan<float> reciprocal_plan(Complex<float>, const FpEnv<float>&);
extern template ScalePlan<double> reciprocal_plan(Complex<double>, const FpEnv<double>&);

}  // namespace crscl
