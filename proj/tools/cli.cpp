#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "crscl/io.hpp"
#include "crscl/lu_factor.hpp"
#include "crscl/scalar_core.hpp"
#include "crscl/vector_scaling.hpp"

namespace crscl::cli {

namespace {

using nlohmann::ordered_json;

template <class F>
decltype(auto) dispatch(Precision p, F&& f) {
  if (p == Precision::Binary32) return f.template operator()<float>();
  return f.template operator()<double>();
}

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs `body` against the configured output: stdout when no path is set.
template <class Body>
int with_output(const RunConfig& config, std::ostream& out, std::ostream& err, Body body) {
  if (config.output.empty() || config.output == "-") return body(out);
  std::ofstream file(config.output);
  if (!file) {
    err << "error: cannot open '" << config.output << "' for writing\n";
    return kExitUsage;
  }
  const int rc = body(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << config.output << "'\n";
    return kExitUsage;
  }
  return rc;
}

template <std::floating_point T>
std::string format_complex(Complex<T> z) {
  std::string s = format_hex(z.re);
  if (std::signbit(z.im)) {
    s += " - " + format_hex(-z.im);
  } else {
    s += " + " + format_hex(z.im);
  }
  return s + " i";
}

template <std::floating_point T>
ordered_json hex_pair(Complex<T> z) {
  return ordered_json::array({format_hex(z.re), format_hex(z.im)});
}

// ---------------------------------------------------------------------------
// reproduce-issues
// ---------------------------------------------------------------------------

template <std::floating_point T>
ordered_json factor_json(const DenseMatrix<T>& a, const LuResult<T>& r) {
  ordered_json lu = ordered_json::array();
  for (std::size_t i = 0; i < r.lu.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < r.lu.cols(); ++j) row.push_back(hex_pair(r.lu(i, j)));
    lu.push_back(std::move(row));
  }
  return {{"info", r.info}, {"ipiv", r.ipiv}, {"backward_error", backward_error(a, r)}, {"lu", lu}};
}

template <std::floating_point T>
void print_factor(std::ostream& out, std::string_view name, const DenseMatrix<T>& a,
                  const LuResult<T>& r) {
  out << "  " << name << ": info=" << r.info << " backward_error=" << backward_error(a, r)
      << " ipiv=[";
  for (std::size_t j = 0; j < r.ipiv.size(); ++j) out << (j ? "," : "") << r.ipiv[j];
  out << "]\n";
  for (std::size_t i = 0; i < r.lu.rows(); ++i) {
    out << "    ";
    for (std::size_t j = 0; j < r.lu.cols(); ++j) {
      out << (j ? "  |  " : "") << format_complex(r.lu(i, j));
    }
    out << '\n';
  }
}

struct Mismatch {
  std::string what;
  std::string expected;
  std::string got;
};

template <std::floating_point T>
std::vector<Mismatch> check_issue(std::string_view label, const LuResult<T>& naive,
                                  const LuResult<T>& fixed) {
  std::vector<Mismatch> bad;
  auto expect_info = [&](std::string_view who, const LuResult<T>& r, int want) {
    if (r.info != want) {
      bad.push_back({std::string(who) + " info", std::to_string(want), std::to_string(r.info)});
    }
  };
  auto expect_bits = [&](std::string_view what, Complex<T> got, Complex<T> want) {
    if (!bit_equal(got, want)) bad.push_back({std::string(what), format_complex(want), format_complex(got)});
  };
  expect_info("naive", naive, 2);
  expect_info("crscl", fixed, 0);
  const auto [big, b] = issue_constants<T>();
  if (label == "issue1") {
    expect_bits("crscl L21", fixed.l(1, 0), {T(0.5), T(-0.5)});
    expect_bits("crscl U22", fixed.u(1, 1), {-big / 2, big / 2});
  } else {
    expect_bits("crscl L21", fixed.l(1, 0), {T(1), -(T(1) / b)});
    const Complex<T> want{T(1) / b, T(1)};
    const Complex<T> got = fixed.u(1, 1);
    const double err = relative_error(got, want).value_or(std::numeric_limits<double>::infinity());
    if (!(err <= std::ldexp(1.0, -20))) {
      bad.push_back({"crscl U22 (rel. err <= 2^-20)", format_complex(want), format_complex(got)});
    }
  }
  return bad;
}

template <std::floating_point T>
int reproduce(const RunConfig& config, std::ostream& out) {
  const FpEnv<T> env = fp_env<T>();
  bool all_ok = true;
  ordered_json issues = ordered_json::array();
  const bool text = config.format == OutputFormat::Text;

  for (const auto& issue : issue_matrices<T>()) {
    const LuResult<T> naive = getf2_naive(issue.matrix, env, Division::Smith);
    const LuResult<T> fixed = getf2(issue.matrix, env);
    const auto bad = check_issue<T>(issue.label, naive, fixed);
    all_ok = all_ok && bad.empty();

    if (text) {
      out << issue.label << " (" << to_string(precision_of<T>) << ")\n";
      print_factor(out, "naive (smith)", issue.matrix, naive);
      print_factor(out, "crscl", issue.matrix, fixed);
      out << issue.label << ": naive info=" << naive.info << ", crscl info=" << fixed.info
          << ", L21=" << format_complex(fixed.l(1, 0)) << '\n';
      for (const auto& m : bad) {
        out << "MISMATCH " << issue.label << ' ' << m.what << "\n- expected: " << m.expected
            << "\n+ got:      " << m.got << '\n';
      }
      out << '\n';
    } else {
      ordered_json mismatches = ordered_json::array();
      for (const auto& m : bad) {
        mismatches.push_back({{"what", m.what}, {"expected", m.expected}, {"got", m.got}});
      }
      issues.push_back({{"label", issue.label},
                        {"naive", factor_json(issue.matrix, naive)},
                        {"crscl", factor_json(issue.matrix, fixed)},
                        {"pass", bad.empty()},
                        {"mismatches", mismatches}});
    }
  }

  if (!config.matrix.empty()) {
    std::ifstream in(config.matrix);
    if (!in) throw UsageError("cannot open matrix file '" + config.matrix + "'");
    AnyMatrix any = read_matrix(in);
    std::visit(
        [&](const auto& m) {
          using U = typename std::decay_t<decltype(m.data())>::value_type;
          using R = decltype(U{}.re);
          const FpEnv<R> e = fp_env<R>();
          const auto naive = getf2_naive(m, e, Division::Smith);
          const auto fixed = getf2(m, e);
          if (text) {
            out << config.matrix << " (" << to_string(precision_of<R>) << ")\n";
            print_factor(out, "naive (smith)", m, naive);
            print_factor(out, "crscl", m, fixed);
            out << '\n';
          } else {
            issues.push_back({{"label", config.matrix},
                              {"naive", factor_json(m, naive)},
                              {"crscl", factor_json(m, fixed)}});
          }
        },
        any);
  }

  if (text) {
    out << (all_ok ? "PASS" : "FAIL") << '\n';
  } else {
    ordered_json doc = {{"command", "reproduce-issues"},
                        {"precision", std::string(to_string(precision_of<T>))},
                        {"pass", all_ok},
                        {"issues", issues}};
    out << doc.dump(2) << '\n';
  }
  return all_ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// scale
// ---------------------------------------------------------------------------

template <std::floating_point T>
int scale(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::istringstream fields(config.denominator);
  std::string re_text, im_text, extra;
  fields >> re_text >> im_text;
  if (re_text.empty() || im_text.empty() || (fields >> extra)) {
    throw UsageError("denominator must be two numbers \"re im\"");
  }
  const auto re = parse_real<T>(re_text);
  const auto im = parse_real<T>(im_text);
  if (!re || !im) throw UsageError("bad denominator '" + config.denominator + "'");
  const Complex<T> a{*re, *im};

  std::vector<Complex<T>> x;
  try {
    if (config.input.empty() || config.input == "-") {
      x = read_vector<T>(std::cin);
    } else {
      std::ifstream in(config.input);
      if (!in) throw UsageError("cannot open input '" + config.input + "'");
      x = read_vector<T>(in);
    }
  } catch (const ParseError& e) {
    const std::string name = config.input.empty() ? "<stdin>" : config.input;
    throw UsageError(name + ":" + std::to_string(e.line()) + ": " + e.what());
  }

  const FpEnv<T> env = fp_env<T>();
  if (config.explain) {
    const ScalePlan<T> plan = reciprocal_plan(a, env);
    err << "case: " << to_string(plan.tag) << '\n';
    err << "divisions: " << plan.division_count << '\n';
    std::size_t i = 1;
    for (const auto& step : plan.steps()) {
      err << "step " << i++ << ": " << to_string(step.kind) << ' ' << format_hex(step.value.re)
          << ' ' << format_hex(step.value.im) << '\n';
    }
  }
  crscl(StridedVector<T>(std::span<Complex<T>>(x)), a, env);
  return with_output(config, out, err, [&](std::ostream& o) {
    write_vector<T>(o, x);
    return kExitPass;
  });
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

template <std::floating_point T>
std::vector<BenchRow> bench_impl(const RunConfig& config) {
  const FpEnv<T> env = fp_env<T>();
  std::vector<std::size_t> sizes = config.sizes;
  if (sizes.empty()) sizes = {100, 10000, 1000000};
  std::vector<Engine> engines = config.engines;
  if (engines.empty()) engines = {Engine::Crscl, Engine::NaiveSmith, Engine::NaiveTextbook};
  const int reps = std::max(1, config.repetitions);

  std::vector<BenchRow> rows;
  for (const std::size_t n : sizes) {
    // Same seed, same inputs for every engine. Denominator: first safe-profile
    // case whose plan is FullSafe.
    CaseProfile prof{ProfileName::Safe, config.seed, 64};
    Complex<T> a{T(3), T(4)};
    for (const auto& c : gen_cases<T>(prof)) {
      if (reciprocal_plan(c.a, env).tag == CaseTag::FullSafe) {
        a = c.a;
        break;
      }
    }
    std::vector<Complex<T>> x;
    x.reserve(n);
    CaseProfile xs{ProfileName::Safe, config.seed + 1, 0};
    while (x.size() < n) {
      xs.count = 256;
      for (const auto& c : gen_cases<T>(xs)) {
        for (const auto& z : c.x) {
          if (x.size() < n) x.push_back(z);
        }
      }
      xs.seed += 1;
    }

    for (const Engine e : engines) {
      BenchRow row;
      row.engine = std::string(to_string(e));
      row.n = n;
      std::vector<Complex<T>> buf = x;
      run_engine(e, StridedVector<T>(std::span<Complex<T>>(buf)), a, &row.counts);
      if (n > 0) {
        std::uint64_t per_element_div = row.counts.real_div / n;
        row.setup_divisions = row.counts.real_div - per_element_div * n;
        row.flops_per_element = (row.counts.real_mul + row.counts.real_add) / n + per_element_div;
      }
      std::vector<double> times;
      for (int r = 0; r < reps; ++r) {
        buf = x;
        const auto t0 = std::chrono::steady_clock::now();
        run_engine(e, StridedVector<T>(std::span<Complex<T>>(buf)), a);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      row.median_ns = times[times.size() / 2];
      row.ns_per_element =
          n == 0 ? std::numeric_limits<double>::quiet_NaN() : row.median_ns / static_cast<double>(n);
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// argument parsing
// ---------------------------------------------------------------------------

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw UsageError("unknown format '" + s + "'");
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw UsageError("bad seed '" + s + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

ordered_json report_json(const ErrorReport& r) {
  ordered_json hist = ordered_json::object();
  for (const auto& [k, v] : r.case_histogram) hist[k] = v;
  ordered_json failures = ordered_json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"a", {f.a[0], f.a[1]}},
                        {"x", {f.x[0], f.x[1]}},
                        {"computed", {f.computed[0], f.computed[1]}},
                        {"exact", {f.exact[0], f.exact[1]}},
                        {"rel_err", f.rel_err},
                        {"case", f.case_tag},
                        {"reason", f.reason}});
  }
  return {{"command", "stress"},
          {"precision", r.precision},
          {"engine", r.engine},
          {"profile", r.profile},
          {"samples", r.samples},
          {"excluded", r.excluded},
          {"included_full", r.included_full},
          {"included_parts", r.included_parts},
          {"violations", r.violations},
          {"nan_rule_violations", r.nan_rule_violations},
          {"max_rel_err", r.max_rel_err},
          {"bound", r.bound},
          {"max_rel_err_parts", r.max_rel_err_parts},
          {"bound_parts", r.bound_parts},
          {"max_ulp_re", r.max_ulp_re},
          {"max_ulp_im", r.max_ulp_im},
          {"case_histogram", hist},
          {"flops",
           {{"real_mul", r.flops.real_mul},
            {"real_add", r.flops.real_add},
            {"real_div", r.flops.real_div},
            {"complex_mul", r.flops.complex_mul},
            {"complex_div", r.flops.complex_div}}},
          {"failures", failures}};
}

ErrorReport stress_report(const RunConfig& config, Engine engine) {
  std::vector<ProfileName> profiles = config.profiles;
  if (profiles.empty()) profiles.assign(std::begin(kAllProfiles), std::end(kAllProfiles));
  ErrorReport merged;
  bool first = true;
  for (const ProfileName p : profiles) {
    // Distinct stream per profile, all derived from the one seed.
    const std::uint64_t seed = config.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(p);
    ErrorReport r = error_report(engine, CaseProfile{p, seed, config.count}, config.precision);
    if (first) {
      merged = std::move(r);
      first = false;
    } else {
      merged.merge(r);
    }
  }
  if (profiles.size() > 1) merged.profile = "all";
  return merged;
}

int cmd_stress(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Engine> engines = config.engines;
  if (engines.empty()) engines = {Engine::Crscl};
  std::vector<ErrorReport> reports;
  bool ok = true;
  for (const Engine e : engines) {
    reports.push_back(stress_report(config, e));
    const ErrorReport& r = reports.back();
    if (e == Engine::Crscl && (r.violations > 0 || r.nan_rule_violations > 0)) ok = false;
  }

  const int rc = with_output(config, out, err, [&](std::ostream& o) {
    switch (config.format) {
      case OutputFormat::Json: {
        if (reports.size() == 1) {
          o << report_json(reports.front()).dump(2) << '\n';
        } else {
          ordered_json arr = ordered_json::array();
          for (const auto& r : reports) arr.push_back(report_json(r));
          o << arr.dump(2) << '\n';
        }
        break;
      }
      case OutputFormat::Csv: {
        o << "command,precision,engine,profile,samples,excluded,violations,nan_rule_violations,"
             "max_rel_err,bound,max_rel_err_parts,bound_parts,max_ulp_re,max_ulp_im\n";
        for (const auto& r : reports) {
          o << "stress," << r.precision << ',' << r.engine << ',' << r.profile << ',' << r.samples
            << ',' << r.excluded << ',' << r.violations << ',' << r.nan_rule_violations << ','
            << r.max_rel_err << ',' << r.bound << ',' << r.max_rel_err_parts << ','
            << r.bound_parts << ',' << r.max_ulp_re << ',' << r.max_ulp_im << '\n';
        }
        break;
      }
      case OutputFormat::Text: {
        for (const auto& r : reports) {
          o << r.engine << " " << r.precision << " profile=" << r.profile << ": samples=" << r.samples
            << " excluded=" << r.excluded << " violations=" << r.violations
            << " nan_rule_violations=" << r.nan_rule_violations << "\n  max_rel_err=" << r.max_rel_err
            << " (bound " << r.bound << ")  max_rel_err_parts=" << r.max_rel_err_parts
            << " (bound " << r.bound_parts << ")  max_ulp=(" << r.max_ulp_re << ", "
            << r.max_ulp_im << ")\n  cases:";
          for (const auto& [k, v] : r.case_histogram) o << ' ' << k << '=' << v;
          o << "\n  complex_div=" << r.flops.complex_div << " real_div=" << r.flops.real_div << '\n';
          for (const auto& f : r.failures) {
            o << "  FAIL [" << f.reason << "] " << f.case_tag << " a=(" << f.a[0] << ", " << f.a[1]
              << ") x=(" << f.x[0] << ", " << f.x[1] << ") computed=(" << f.computed[0] << ", "
              << f.computed[1] << ") exact=(" << f.exact[0] << ", " << f.exact[1]
              << ") rel_err=" << f.rel_err << '\n';
          }
        }
        break;
      }
    }
    return kExitPass;
  });
  if (rc != kExitPass) return rc;
  return ok ? kExitPass : kExitFail;
}

std::vector<BenchRow> bench_rows(const RunConfig& config) {
  return dispatch(config.precision, [&]<class T>() { return bench_impl<T>(config); });
}

ordered_json bench_json(const RunConfig& config, const std::vector<BenchRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json ns = std::isnan(r.ns_per_element) ? ordered_json("n/a") : ordered_json(r.ns_per_element);
    arr.push_back({{"engine", r.engine},
                   {"n", r.n},
                   {"median_ns", r.median_ns},
                   {"ns_per_element", ns},
                   {"flops_per_element", r.flops_per_element},
                   {"setup_divisions", r.setup_divisions},
                   {"complex_div", r.counts.complex_div}});
  }
  return {{"command", "bench"},
          {"precision", std::string(to_string(config.precision))},
          {"repetitions", std::max(1, config.repetitions)},
          {"claim", "reciprocal scaling: 6 flops/element in the safe case; "
                    "naive complex division: at least 13 operations including two divisions"},
          {"rows", arr}};
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto rows = bench_rows(config);
  return with_output(config, out, err, [&](std::ostream& o) {
    if (config.format == OutputFormat::Json) {
      o << bench_json(config, rows).dump(2) << '\n';
    } else if (config.format == OutputFormat::Csv) {
      o << "engine,n,median_ns,ns_per_element,flops_per_element,setup_divisions,complex_div\n";
      for (const auto& r : rows) {
        o << r.engine << ',' << r.n << ',' << r.median_ns << ',';
        if (std::isnan(r.ns_per_element)) o << "n/a"; else o << r.ns_per_element;
        o << ',' << r.flops_per_element << ',' << r.setup_divisions << ',' << r.counts.complex_div << '\n';
      }
    } else {
      o << "engine            n        ns/element   flops/element  setup divs  complex divs\n";
      for (const auto& r : rows) {
        char line[160];
        if (std::isnan(r.ns_per_element)) {
          std::snprintf(line, sizeof line, "%-15s %9zu %13s %15llu %11llu %13llu\n", r.engine.c_str(),
                        r.n, "n/a", static_cast<unsigned long long>(r.flops_per_element),
                        static_cast<unsigned long long>(r.setup_divisions),
                        static_cast<unsigned long long>(r.counts.complex_div));
        } else {
          std::snprintf(line, sizeof line, "%-15s %9zu %13.3f %15llu %11llu %13llu\n", r.engine.c_str(),
                        r.n, r.ns_per_element, static_cast<unsigned long long>(r.flops_per_element),
                        static_cast<unsigned long long>(r.setup_divisions),
                        static_cast<unsigned long long>(r.counts.complex_div));
        }
        o << line;
      }
      o << "claim: crscl uses 6 flops/element in the safe case; a naive complex division "
           "uses at least 13 operations including two divisions\n";
    }
    return kExitPass;
  });
}

int cmd_reproduce_issues(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return with_output(config, out, err, [&](std::ostream& o) {
    return dispatch(config.precision, [&]<class T>() { return reproduce<T>(config, o); });
  });
}

int cmd_scale(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return dispatch(config.precision, [&]<class T>() { return scale<T>(config, out, err); });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex reciprocal scaling kernels: issue reproduction, stress, bench, scale"};
  app.require_subcommand(1);

  RunConfig config;
  std::string precision = "binary32";
  std::string format = "text";
  std::string seed_text;
  std::vector<std::string> profiles;
  std::vector<std::string> engines;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--precision", precision, "binary32 or binary64");
    sub->add_option("--format", format, "text, json or csv");
    sub->add_option("--out", config.output, "output path (default stdout)");
    sub->add_option("--seed", seed_text, "generator seed (default: $CRSCL_SEED or 1)");
  };

  CLI::App* repro = app.add_subcommand("reproduce-issues", "factor the two breakdown matrices");
  common(repro);
  repro->add_option("--matrix", config.matrix, "also factor this matrix file");

  CLI::App* stress = app.add_subcommand("stress", "error-bound conformance sweep");
  common(stress);
  stress->add_option("--profile", profiles, "safe|huge|tiny|mixed|subnormal|special|all");
  stress->add_option("--count", config.count, "cases per profile");
  stress->add_option("--engine", engines, "crscl|naive_smith|naive_textbook (repeatable)");

  CLI::App* bench = app.add_subcommand("bench", "time crscl against naive division");
  common(bench);
  bench->add_option("--engine", engines, "crscl|naive_smith|naive_textbook (repeatable)");
  bench->add_option("--size", config.sizes, "vector length (repeatable)");
  bench->add_option("--repetitions", config.repetitions, "timed repetitions (median reported)");

  CLI::App* scale_cmd = app.add_subcommand("scale", "scale a vector file by 1/a");
  common(scale_cmd);
  scale_cmd->add_option("--input", config.input, "vector file (default stdin)");
  scale_cmd->add_option("-a,--denominator", config.denominator, "\"re im\"")->required();
  scale_cmd->add_flag("--explain", config.explain, "print the case and plan on stderr");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    config.precision = parse_precision(precision);
    config.format = parse_format(format);
    if (seed_text.empty()) {
      if (const char* env = std::getenv("CRSCL_SEED")) seed_text = env;
    }
    if (!seed_text.empty()) config.seed = parse_seed(seed_text);
    for (const auto& p : profiles) {
      if (p == "all") {
        config.profiles.clear();
        break;
      }
      config.profiles.push_back(parse_profile(p));
    }
    for (const auto& e : engines) config.engines.push_back(parse_engine(e));

    if (repro->parsed()) return cmd_reproduce_issues(config, out, err);
    if (stress->parsed()) return cmd_stress(config, out, err);
    if (bench->parsed()) return cmd_bench(config, out, err);
    return cmd_scale(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace crscl::cli
