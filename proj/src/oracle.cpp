#include "crscl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cfenv>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "crscl/io.hpp"

namespace crscl {

// ---------------------------------------------------------------------------
// Reference arithmetic
// ---------------------------------------------------------------------------

namespace {

double hi_of(double v) { return v; }
double hi_of(const DoubleDouble& v) { return v.hi(); }
double lo_of(double) { return 0.0; }
double lo_of(const DoubleDouble& v) { return v.lo(); }

template <class W>
double diff(double computed, const W& exact) {
  return (computed - hi_of(exact)) - lo_of(exact);
}

template <std::floating_point T>
Reference<T> textbook_wide(Complex<T> x, Complex<T> a) {
  const double ar = a.re, ai = a.im, xr = x.re, xi = x.im;
  const double den = ar * ar + ai * ai;
  return {(xr * ar + xi * ai) / den, (xi * ar - xr * ai) / den};
}

}  // namespace

template <>
Reference<float> exact_quotient(Complex<float> x, Complex<float> a) {
  // binary32 products are exact in binary64; each part rounds three times.
  return textbook_wide(x, a);
}

namespace {

// Double-double mantissa with a separate exponent. Keeps every intermediate
// near 1 so lo parts never fall into the subnormal range.
struct ScaledDD {
  DoubleDouble m;
  int e = 0;

  static ScaledDD of(double v) {
    if (v == 0) return {};
    const int k = std::ilogb(v);
    return ScaledDD{DoubleDouble(std::ldexp(v, -k)), k};
  }

  ScaledDD& normalize() {
    if (m.hi() == 0) {
      e = 0;
      return *this;
    }
    const int k = std::ilogb(m.hi());
    m = ldexp(m, -k);
    e += k;
    return *this;
  }

  friend ScaledDD operator*(const ScaledDD& x, const ScaledDD& y) {
    ScaledDD r{x.m * y.m, x.e + y.e};
    return r.normalize();
  }

  friend ScaledDD operator/(const ScaledDD& x, const ScaledDD& y) {
    ScaledDD r{x.m / y.m, x.e - y.e};
    return r.normalize();
  }

  friend ScaledDD operator+(const ScaledDD& x, const ScaledDD& y) {
    if (x.m.hi() == 0) return y;
    if (y.m.hi() == 0) return x;
    const int top = std::max(x.e, y.e);
    ScaledDD r{ldexp(x.m, x.e - top) + ldexp(y.m, y.e - top), top};
    return r.normalize();
  }

  friend ScaledDD operator-(const ScaledDD& x, const ScaledDD& y) {
    return x + ScaledDD{-y.m, y.e};
  }

  DoubleDouble value() const { return ldexp(m, e); }
};

}  // namespace

template <>
Reference<double> exact_quotient(Complex<double> x, Complex<double> a) {
  const bool zero_a = a.re == 0 && a.im == 0;
  const bool zero_x = x.re == 0 && x.im == 0;
  if (!is_finite(x) || !is_finite(a) || zero_a || zero_x) return textbook_wide(x, a);

  const ScaledDD ar = ScaledDD::of(a.re), ai = ScaledDD::of(a.im);
  const ScaledDD xr = ScaledDD::of(x.re), xi = ScaledDD::of(x.im);
  const ScaledDD den = ar * ar + ai * ai;
  const ScaledDD nr = xr * ar + xi * ai;
  const ScaledDD ni = xi * ar - xr * ai;
  return {(nr / den).value(), (ni / den).value()};
}

template <std::floating_point T>
Complex<T> exact_reciprocal_scale(Complex<T> x, Complex<T> a) {
  const Reference<T> q = exact_quotient(x, a);
  if constexpr (sizeof(T) == 4) {
    return {static_cast<T>(q.re), static_cast<T>(q.im)};
  } else {
    return {q.re.to_double(), q.im.to_double()};
  }
}

template <std::floating_point T>
std::optional<double> relative_error(Complex<T> computed, const Reference<T>& exact) {
  const double er = hi_of(exact.re), ei = hi_of(exact.im);
  if (!std::isfinite(er) || !std::isfinite(ei) || (er == 0 && ei == 0)) return std::nullopt;
  const double num = std::hypot(diff(static_cast<double>(computed.re), exact.re),
                                diff(static_cast<double>(computed.im), exact.im));
  if (std::isnan(num)) return std::numeric_limits<double>::infinity();
  return num / std::hypot(er, ei);
}

template <std::floating_point T>
std::optional<double> relative_error(Complex<T> computed, Complex<T> exact) {
  using W = typename ReferenceArith<T>::type;
  return relative_error(computed, Reference<T>{W(static_cast<double>(exact.re)),
                                               W(static_cast<double>(exact.im))});
}

template <std::floating_point T>
PartErrors relative_error_parts(Complex<T> computed, const Reference<T>& exact) {
  auto part = [](T c, const auto& e) -> std::optional<double> {
    const double h = hi_of(e);
    if (!std::isfinite(h) || h == 0) return std::nullopt;
    const double d = std::fabs(diff(static_cast<double>(c), e));
    if (std::isnan(d)) return std::numeric_limits<double>::infinity();
    return d / std::fabs(h);
  };
  return {part(computed.re, exact.re), part(computed.im, exact.im)};
}

template <std::floating_point T>
std::optional<std::uint64_t> ulp_distance(T p, T q) {
  if (std::isnan(p) || std::isnan(q)) return std::nullopt;
  if (p == q) return 0;
  if ((p < 0 && q > 0) || (p > 0 && q < 0)) return std::nullopt;
  using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const auto bp = std::bit_cast<Bits>(std::fabs(p));
  const auto bq = std::bit_cast<Bits>(std::fabs(q));
  return bp > bq ? bp - bq : bq - bp;
}

// ---------------------------------------------------------------------------
// Case generation
// ---------------------------------------------------------------------------

std::string_view to_string(ProfileName p) {
  switch (p) {
    case ProfileName::Safe: return "safe";
    case ProfileName::HugeDenominator: return "huge";
    case ProfileName::TinyDenominator: return "tiny";
    case ProfileName::MixedExtreme: return "mixed";
    case ProfileName::SubnormalParts: return "subnormal";
    case ProfileName::SpecialValues: return "special";
  }
  return "?";
}

ProfileName parse_profile(std::string_view text) {
  for (const ProfileName p : kAllProfiles) {
    if (text == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown profile '" + std::string(text) + "'");
}

template <std::floating_point T>
std::vector<T> special_values() {
  const FpEnv<T> env = fp_env<T>();
  const T inf = std::numeric_limits<T>::infinity();
  return {T(0),       -T(0),      env.min_subnormal, -env.min_subnormal, env.sfmin,
          -env.sfmin, T(1),       -T(1),             env.safmax,         -env.safmax,
          env.overflow, -env.overflow, inf,          -inf,               std::numeric_limits<T>::quiet_NaN()};
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [lo, hi]; the modulo bias is far below anything measured here.
  int uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  bool chance(unsigned num, unsigned den) { return gen_() % den < num; }

 private:
  std::mt19937_64 gen_;
};

template <std::floating_point T>
struct Format {
  static constexpr int digits = std::numeric_limits<T>::digits;
  static constexpr int emin = std::numeric_limits<T>::min_exponent - 1;  // -126 / -1022
  static constexpr int emax = std::numeric_limits<T>::max_exponent - 1;  // 127 / 1023
  static constexpr int esub = emin - (digits - 1);                       // -149 / -1074
};

// Random significand in [1, 2) times 2^e, random sign. Exponents below emin
// round into the subnormal range.
template <std::floating_point T>
T draw(Rng& rng, int e) {
  constexpr int frac_bits = Format<T>::digits - 1;
  const std::uint64_t frac = rng.bits() >> (64 - frac_bits);
  const T mant = T(1) + std::ldexp(static_cast<T>(frac), -frac_bits);
  const T v = std::ldexp(mant, e);
  return rng.chance(1, 2) ? -v : v;
}

template <std::floating_point T>
int exponent_of(Complex<T> a) {
  const T m = std::max(std::fabs(a.re), std::fabs(a.im));
  if (m == 0 || !std::isfinite(m)) return 0;
  return std::ilogb(m);
}

constexpr std::size_t kLengths[] = {0, 1, 2, 7, 64};

// x entries whose quotient by a spreads over the normal range.
template <std::floating_point T>
std::vector<Complex<T>> draw_x(Rng& rng, Complex<T> a, bool subnormal_parts) {
  using F = Format<T>;
  const std::size_t n = kLengths[rng.uniform(0, 4)];
  const int ea = exponent_of(a);
  const int lo = std::max(F::emin, ea + F::emin + 2);
  const int hi = std::max(lo, std::min(F::emax, ea + F::emax - 2));
  std::vector<Complex<T>> x(n);
  for (auto& z : x) {
    const int ex = rng.uniform(lo, hi);
    auto part = [&]() -> T {
      if (rng.chance(1, 16)) return T(0);
      if (subnormal_parts && rng.chance(1, 3)) return draw<T>(rng, rng.uniform(F::esub, F::emin - 1));
      return draw<T>(rng, std::max(F::esub, ex - rng.uniform(0, 8)));
    };
    if (rng.chance(1, 2)) {
      z = {draw<T>(rng, ex), part()};
    } else {
      z = {part(), draw<T>(rng, ex)};
    }
  }
  return x;
}

template <std::floating_point T>
Complex<T> draw_safe(Rng& rng) {
  using F = Format<T>;
  const int lo = F::emin / 2, hi = F::emax / 2;
  const int pick = rng.uniform(0, 7);
  if (pick == 0) return {draw<T>(rng, rng.uniform(lo, hi)), T(0)};
  if (pick == 1) return {T(0), draw<T>(rng, rng.uniform(lo, hi))};
  return {draw<T>(rng, rng.uniform(lo, hi)), draw<T>(rng, rng.uniform(lo, hi))};
}

template <std::floating_point T>
T uv_max(Complex<T> a) {
  const auto [ur, ui] = compute_uv(a);
  return std::max(std::fabs(ur), std::fabs(ui));
}

template <std::floating_point T>
T uv_min(Complex<T> a) {
  const auto [ur, ui] = compute_uv(a);
  return std::min(std::fabs(ur), std::fabs(ui));
}

template <std::floating_point T>
Complex<T> draw_huge(Rng& rng, const FpEnv<T>& env) {
  using F = Format<T>;
  const int pick = rng.uniform(0, 7);
  if (pick <= 1) {
    T v;
    do v = draw<T>(rng, rng.uniform(F::emax - 1, F::emax));
    while (std::fabs(v) <= env.safmax);
    return pick == 0 ? Complex<T>{v, T(0)} : Complex<T>{T(0), v};
  }
  for (;;) {
    const int big = rng.uniform(F::emax / 2, F::emax);
    const int small = rng.uniform(F::emin / 2, big);
    const T p = draw<T>(rng, big);
    const T q = draw<T>(rng, small);
    const Complex<T> a = rng.chance(1, 2) ? Complex<T>{p, q} : Complex<T>{q, p};
    if (uv_max(a) > env.safmax) return a;
  }
}

template <std::floating_point T>
Complex<T> draw_tiny(Rng& rng, const FpEnv<T>& env) {
  using F = Format<T>;
  const int pick = rng.uniform(0, 7);
  if (pick <= 1) {
    const T v = draw<T>(rng, rng.uniform(F::esub, F::emin - 1));
    return pick == 0 ? Complex<T>{v, T(0)} : Complex<T>{T(0), v};
  }
  for (;;) {
    const Complex<T> a{draw<T>(rng, rng.uniform(F::esub, F::emin)),
                       draw<T>(rng, rng.uniform(F::esub, F::emin))};
    if (a.re != 0 && a.im != 0 && uv_min(a) < env.sfmin) return a;
  }
}

template <std::floating_point T>
Complex<T> draw_mixed(Rng& rng) {
  using F = Format<T>;
  const T tiny = draw<T>(rng, rng.uniform(F::esub, F::emin / 2));
  const T huge = draw<T>(rng, rng.uniform(F::emax / 2, F::emax));
  return rng.chance(1, 2) ? Complex<T>{tiny, huge} : Complex<T>{huge, tiny};
}

template <std::floating_point T>
Complex<T> draw_subnormal(Rng& rng) {
  using F = Format<T>;
  auto part = [&]() -> T {
    const int pick = rng.uniform(0, 9);
    if (pick == 0) return T(0);
    if (pick <= 5) return draw<T>(rng, rng.uniform(F::esub, F::emin - 1));
    return draw<T>(rng, rng.uniform(F::emin, F::emin + F::digits));
  };
  for (;;) {
    const Complex<T> a{part(), part()};
    if (a.re != 0 || a.im != 0) return a;
  }
}

}  // namespace

template <std::floating_point T>
std::vector<Case<T>> gen_cases(const CaseProfile& profile) {
  const FpEnv<T> env = fp_env<T>();
  Rng rng(profile.seed);
  const std::vector<T> specials = special_values<T>();
  std::vector<Case<T>> out;
  out.reserve(profile.count);
  for (std::size_t i = 0; i < profile.count; ++i) {
    Case<T> c;
    switch (profile.name) {
      case ProfileName::Safe: c.a = draw_safe<T>(rng); break;
      case ProfileName::HugeDenominator: c.a = draw_huge<T>(rng, env); break;
      case ProfileName::TinyDenominator: c.a = draw_tiny<T>(rng, env); break;
      case ProfileName::MixedExtreme: c.a = draw_mixed<T>(rng); break;
      case ProfileName::SubnormalParts: c.a = draw_subnormal<T>(rng); break;
      case ProfileName::SpecialValues: {
        const std::size_t k = i % kSpecialCrossSize;
        c.a = {specials[k / specials.size()], specials[k % specials.size()]};
        break;
      }
    }
    if (profile.name == ProfileName::SpecialValues) {
      const std::size_t n = kLengths[rng.uniform(0, 4)];
      c.x.resize(n);
      for (auto& z : c.x) {
        z.re = rng.chance(1, 5) ? T(0) : draw<T>(rng, rng.uniform(-3, 0));
        z.im = rng.chance(1, 5) ? T(0) : draw<T>(rng, rng.uniform(-3, 0));
      }
    } else {
      c.x = draw_x<T>(rng, c.a, profile.name == ProfileName::SubnormalParts);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Crscl: return "crscl";
    case Engine::NaiveSmith: return "naive_smith";
    case Engine::NaiveTextbook: return "naive_textbook";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "crscl") return Engine::Crscl;
  if (text == "naive_smith" || text == "smith") return Engine::NaiveSmith;
  if (text == "naive_textbook" || text == "textbook") return Engine::NaiveTextbook;
  throw std::invalid_argument("unknown engine '" + std::string(text) + "'");
}

template <std::floating_point T>
void run_engine(Engine engine, StridedVector<T> x, Complex<T> a, FlopCounter* counter) {
  switch (engine) {
    case Engine::Crscl: crscl(x, a, fp_env<T>(), counter); break;
    case Engine::NaiveSmith: naive_div_scale(x, a, Division::Smith, counter); break;
    case Engine::NaiveTextbook: naive_div_scale(x, a, Division::Textbook, counter); break;
  }
}

template <std::floating_point T>
bool nan_expected(Complex<T> a) {
  return std::isnan(a.re) || std::isnan(a.im) || (std::isinf(a.re) && std::isinf(a.im));
}

void ErrorReport::merge(const ErrorReport& o) {
  samples += o.samples;
  excluded += o.excluded;
  included_full += o.included_full;
  included_parts += o.included_parts;
  violations += o.violations;
  nan_rule_violations += o.nan_rule_violations;
  max_rel_err = std::max(max_rel_err, o.max_rel_err);
  max_rel_err_parts = std::max(max_rel_err_parts, o.max_rel_err_parts);
  bound = std::max(bound, o.bound);
  bound_parts = std::max(bound_parts, o.bound_parts);
  max_ulp_re = std::max(max_ulp_re, o.max_ulp_re);
  max_ulp_im = std::max(max_ulp_im, o.max_ulp_im);
  for (const auto& [k, v] : o.case_histogram) case_histogram[k] += v;
  flops += o.flops;
  for (const auto& f : o.failures) {
    if (failures.size() >= kMaxFailures) break;
    failures.push_back(f);
  }
  if (profile != o.profile) profile = profile.empty() ? o.profile : "mixed-profiles";
}

namespace {

template <std::floating_point T>
double to_approx(const Reference<T>& q, bool real) {
  return hi_of(real ? q.re : q.im);
}

template <std::floating_point T>
Failure make_failure(Complex<T> a, Complex<T> x, Complex<T> y, Complex<T> exact, double err,
                     CaseTag tag, std::string reason) {
  Failure f;
  f.a[0] = format_hex(a.re);
  f.a[1] = format_hex(a.im);
  f.x[0] = format_hex(x.re);
  f.x[1] = format_hex(x.im);
  f.computed[0] = format_hex(y.re);
  f.computed[1] = format_hex(y.im);
  f.exact[0] = format_hex(exact.re);
  f.exact[1] = format_hex(exact.im);
  f.rel_err = err;
  f.case_tag = std::string(to_string(tag));
  f.reason = std::move(reason);
  return f;
}

// Applies the scaling to a single element with the IEEE flags cleared and
// reports whether underflow or overflow was raised. For crscl only the
// vector pass is observed: plan construction is not part of the
// per-element error model.
template <std::floating_point T>
bool replay_raises(Engine engine, Complex<T>& z, Complex<T> a, const ScalePlan<T>& plan) {
  StridedVector<T> one(std::span<Complex<T>>(&z, 1));
  std::feclearexcept(FE_ALL_EXCEPT);
  if (engine == Engine::Crscl) {
    apply_plan(one, plan);
  } else {
    run_engine(engine, one, a);
  }
  return std::fetestexcept(FE_UNDERFLOW | FE_OVERFLOW) != 0;
}

}  // namespace

template <std::floating_point T>
ErrorReport error_report(Engine engine, const CaseProfile& profile) {
  const FpEnv<T> env = fp_env<T>();
  ErrorReport rep;
  rep.engine = std::string(to_string(engine));
  rep.precision = std::string(to_string(precision_of<T>));
  rep.profile = std::string(to_string(profile.name));
  rep.bound = std::sqrt(2.0) * gamma(6, env);
  rep.bound_parts = gamma(2, env);
  const double overflow = static_cast<double>(env.overflow);
  const double sfmin = static_cast<double>(env.sfmin);

  auto record = [&rep](Failure f) {
    if (rep.failures.size() < ErrorReport::kMaxFailures) rep.failures.push_back(std::move(f));
  };

  for (const Case<T>& c : gen_cases<T>(profile)) {
    std::vector<Complex<T>> y = c.x;
    run_engine(engine, StridedVector<T>(std::span<Complex<T>>(y)), c.a, &rep.flops);
    const ScalePlan<T> plan = reciprocal_plan(c.a, env);
    const bool a_zero = c.a.re == 0 && c.a.im == 0;
    const bool a_ok = is_finite(c.a) && !a_zero;
    const bool per_part =
        plan.tag == CaseTag::RealDenominator || plan.tag == CaseTag::ImaginaryDenominator;

    for (std::size_t k = 0; k < c.x.size(); ++k) {
      const Complex<T> x = c.x[k];
      const Complex<T> yk = y[k];
      ++rep.samples;
      ++rep.case_histogram[std::string(to_string(plan.tag))];

      const Reference<T> exact = exact_quotient(x, c.a);
      const double emod = std::hypot(to_approx<T>(exact, true), to_approx<T>(exact, false));

      if (is_finite(x) && !a_zero && (!is_finite(c.a) || emod <= overflow)) {
        if (is_nan(yk) != nan_expected(c.a)) {
          ++rep.nan_rule_violations;
          record(make_failure(c.a, x, yk, exact_reciprocal_scale(x, c.a), 0.0, plan.tag, "nan-rule"));
        }
      }

      const bool x_zero = x.re == 0 && x.im == 0;
      if (!a_ok || !is_finite(x) || x_zero || !std::isfinite(emod) || emod < sfmin ||
          emod > overflow) {
        ++rep.excluded;
        continue;
      }

      Complex<T> z = x;
      const bool raised = replay_raises(engine, z, c.a, plan);
      if (!bit_equal(z, yk)) {
        ++rep.violations;
        record(make_failure(c.a, x, yk, exact_reciprocal_scale(x, c.a), 0.0, plan.tag,
                            "vector and single-element results differ"));
      }
      if (raised) {
        ++rep.excluded;
        continue;
      }

      const Complex<T> rounded = exact_reciprocal_scale(x, c.a);
      if (const auto d = ulp_distance(yk.re, rounded.re)) rep.max_ulp_re = std::max(rep.max_ulp_re, *d);
      if (const auto d = ulp_distance(yk.im, rounded.im)) rep.max_ulp_im = std::max(rep.max_ulp_im, *d);

      double err;
      bool bad;
      if (per_part) {
        const PartErrors pe = relative_error_parts(yk, exact);
        err = std::max(pe.re.value_or(0.0), pe.im.value_or(0.0));
        ++rep.included_parts;
        rep.max_rel_err_parts = std::max(rep.max_rel_err_parts, err);
        bad = !(err <= rep.bound_parts);
      } else {
        err = relative_error(yk, exact).value_or(std::numeric_limits<double>::infinity());
        ++rep.included_full;
        rep.max_rel_err = std::max(rep.max_rel_err, err);
        bad = !(err <= rep.bound);
      }
      if (bad) {
        ++rep.violations;
        record(make_failure(c.a, x, yk, rounded, err, plan.tag, "bound"));
      }
    }
  }
  return rep;
}

ErrorReport error_report(Engine engine, const CaseProfile& profile, Precision precision) {
  return precision == Precision::Binary32 ? error_report<float>(engine, profile)
                                          : error_report<double>(engine, profile);
}

#define CRSCL_INSTANTIATE(T)                                                                 \
  template Complex<T> exact_reciprocal_scale(Complex<T>, Complex<T>);                        \
  template std::optional<double> relative_error(Complex<T>, const Reference<T>&);            \
  template std::optional<double> relative_error(Complex<T>, Complex<T>);                     \
  template PartErrors relative_error_parts(Complex<T>, const Reference<T>&);                 \
  template std::optional<std::uint64_t> ulp_distance(T, T);                                  \
  template std::vector<T> special_values();                                                  \
  template std::vector<Case<T>> gen_cases(const CaseProfile&);                               \
  template void run_engine(Engine, StridedVector<T>, Complex<T>, FlopCounter*);              \
  template bool nan_expected(Complex<T>);                                                    \
  template ErrorReport error_report<T>(Engine, const CaseProfile&);

CRSCL_INSTANTIATE(float)
CRSCL_INSTANTIATE(double)

#undef CRSCL_INSTANTIATE

}  // namespace crscl
