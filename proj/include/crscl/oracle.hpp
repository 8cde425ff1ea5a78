#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crscl/complex.hpp"
#include "crscl/double_double.hpp"
#include "crscl/fp_env.hpp"
#include "crscl/scalar_core.hpp"
#include "crscl/vector_scaling.hpp"

namespace crscl {

// ---------------------------------------------------------------------------
// Reference arithmetic
// ---------------------------------------------------------------------------

/// binary64 serves as reference for binary32 and double-double for binary64.
template <std::floating_point T>
struct ReferenceArith;

template <>
struct ReferenceArith<float> {
  using type = double;
};

template <>
struct ReferenceArith<double> {
  using type = DoubleDouble;
};

template <class W>
struct WideComplex {
  W re{};
  W im{};
};

template <std::floating_point T>
using Reference = WideComplex<typename ReferenceArith<T>::type>;

/// x/a in the reference arithmetic, not yet rounded to T.
template <std::floating_point T>
Reference<T> exact_quotient(Complex<T> x, Complex<T> a);

template <>
Reference<float> exact_quotient(Complex<float> x, Complex<float> a);
template <>
Reference<double> exact_quotient(Complex<double> x, Complex<double> a);

/// x/a computed in the reference arithmetic and rounded once to T.
template <std::floating_point T>
Complex<T> exact_reciprocal_scale(Complex<T> x, Complex<T> a);

/// |computed - exact| / |exact|. nullopt when exact is zero or not finite
/// (the sample is outside the metric's domain, not a failure).
template <std::floating_point T>
std::optional<double> relative_error(Complex<T> computed, const Reference<T>& exact);

template <std::floating_point T>
std::optional<double> relative_error(Complex<T> computed, Complex<T> exact);

struct PartErrors {
  std::optional<double> re;
  std::optional<double> im;
};

/// Componentwise relative errors; a part whose exact value is zero or not
/// finite yields nullopt.
template <std::floating_point T>
PartErrors relative_error_parts(Complex<T> computed, const Reference<T>& exact);

/// Number of representable steps from p to q. -0 and +0 are the same
/// point. nullopt for NaN or for operands on opposite sides of zero.
template <std::floating_point T>
std::optional<std::uint64_t> ulp_distance(T p, T q);

// ---------------------------------------------------------------------------
// Case generation
// ---------------------------------------------------------------------------

enum class ProfileName { Safe, HugeDenominator, TinyDenominator, MixedExtreme, SubnormalParts, SpecialValues };

inline constexpr ProfileName kAllProfiles[] = {
    ProfileName::Safe,         ProfileName::HugeDenominator, ProfileName::TinyDenominator,
    ProfileName::MixedExtreme, ProfileName::SubnormalParts,  ProfileName::SpecialValues,
};

std::string_view to_string(ProfileName p);
/// Accepts safe, huge, tiny, mixed, subnormal, special.
ProfileName parse_profile(std::string_view text);

struct CaseProfile {
  ProfileName name = ProfileName::Safe;
  std::uint64_t seed = 0;
  std::size_t count = 0;  // number of (a, x) cases
};

template <std::floating_point T>
struct Case {
  Complex<T> a;
  std::vector<Complex<T>> x;
};

/// {±0, ±min subnormal, ±sfmin, ±1, ±1/sfmin, ±max, ±Inf, NaN}.
template <std::floating_point T>
std::vector<T> special_values();

inline constexpr std::size_t kSpecialCrossSize = 15 * 15;

/// Deterministic case stream. Same profile (name, seed, count) gives the same
/// cases bit for bit on every platform: only the mt19937_64 bit stream is
/// used, never the library distributions. SpecialValues walks the cross
/// product of special_values() for a, wrapping after kSpecialCrossSize cases.
template <std::floating_point T>
std::vector<Case<T>> gen_cases(const CaseProfile& profile);

// ---------------------------------------------------------------------------
// Differential reports
// ---------------------------------------------------------------------------

enum class Engine { Crscl, NaiveSmith, NaiveTextbook };

std::string_view to_string(Engine e);
/// Accepts crscl, naive_smith (smith), naive_textbook (textbook).
Engine parse_engine(std::string_view text);

template <std::floating_point T>
void run_engine(Engine engine, StridedVector<T> x, Complex<T> a, FlopCounter* counter = nullptr);

struct Failure {
  std::string a[2];
  std::string x[2];
  std::string computed[2];
  std::string exact[2];
  double rel_err = 0.0;
  std::string case_tag;
  std::string reason;
};

struct ErrorReport {
  std::string engine;
  std::string precision;
  std::string profile;
  std::uint64_t samples = 0;
  std::uint64_t excluded = 0;
  std::uint64_t included_full = 0;   // both parts of a nonzero, modulus metric
  std::uint64_t included_parts = 0;  // real or imaginary a, per-part metric
  std::uint64_t violations = 0;
  std::uint64_t nan_rule_violations = 0;
  double max_rel_err = 0.0;        // modulus metric, bound sqrt(2)*gamma_6
  double max_rel_err_parts = 0.0;  // per-part metric, bound gamma_2
  double bound = 0.0;
  double bound_parts = 0.0;
  std::uint64_t max_ulp_re = 0;
  std::uint64_t max_ulp_im = 0;
  std::map<std::string, std::uint64_t> case_histogram;
  FlopCounter flops;
  std::vector<Failure> failures;

  static constexpr std::size_t kMaxFailures = 100;

  /// Associative merge of two reports on the same engine and precision.
  void merge(const ErrorReport& other);
};

/// Runs `engine` over gen_cases(profile) and compares every element against
/// exact_quotient.
///
/// A sample is excluded when x or a is zero or not finite, when the exact
/// quotient is not finite or has modulus outside [sfmin, max], or when
/// evaluating that element raised the IEEE underflow or overflow flag (the
/// error bounds assume neither happens). Included samples with a real or
/// imaginary a are held to gamma_2 per part; the rest to sqrt(2)*gamma_6
/// in modulus.
///
/// For every sample with finite x, a != 0 and a representable quotient, the
/// NaN rule is checked: the result has a NaN part iff a has a NaN part or
/// both parts of a are infinite.
template <std::floating_point T>
ErrorReport error_report(Engine engine, const CaseProfile& profile);

ErrorReport error_report(Engine engine, const CaseProfile& profile, Precision precision);

/// True iff the plan for `a` must carry a NaN factor.
template <std::floating_point T>
bool nan_expected(Complex<T> a);

}  // namespace crscl
