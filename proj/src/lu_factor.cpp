#include "crscl/lu_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "crscl/double_double.hpp"

namespace crscl {

template <std::floating_point T>
DenseMatrix<T> DenseMatrix<T>::from_rows(const std::vector<std::vector<Complex<T>>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("from_rows: empty");
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <std::floating_point T>
Complex<T> LuResult<T>::l(std::size_t i, std::size_t j) const {
  if (i == j) return {T(1), T(0)};
  if (i < j) return {};
  return lu(i, j);
}

template <std::floating_point T>
Complex<T> LuResult<T>::u(std::size_t i, std::size_t j) const {
  if (i > j) return {};
  return lu(i, j);
}

namespace {

template <std::floating_point T>
T cabs1(Complex<T> z) {
  return std::fabs(z.re) + std::fabs(z.im);
}

template <std::floating_point T, class ScaleColumn>
LuResult<T> factor(DenseMatrix<T> a, ScaleColumn scale_column) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);
  std::vector<int> ipiv(k);
  int info = 0;

  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = j;
    T best = cabs1(a(j, j));
    for (std::size_t i = j + 1; i < m; ++i) {
      const T v = cabs1(a(i, j));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    ipiv[j] = static_cast<int>(p + 1);

    const Complex<T> pivot = a(p, j);
    if (pivot.re != T(0) || pivot.im != T(0)) {
      if (p != j) {
        for (std::size_t c = 0; c < n; ++c) std::swap(a(j, c), a(p, c));
      }
      if (j + 1 < m) {
        scale_column(StridedVector<T>(a.data(), j + 1 + j * m, 1, m - j - 1), a(j, j));
      }
    } else if (info == 0) {
      info = static_cast<int>(j + 1);
    }

    if (j + 1 < k) {
      // Rank-1 update of the trailing block; zero multipliers are skipped.
      for (std::size_t c = j + 1; c < n; ++c) {
        const Complex<T> u = a(j, c);
        if (u.re == T(0) && u.im == T(0)) continue;
        for (std::size_t r = j + 1; r < m; ++r) a(r, c) = a(r, c) - a(r, j) * u;
      }
    }
  }
  return LuResult<T>{std::move(a), std::move(ipiv), info};
}

// Wider accumulator for residual evaluation.
template <std::floating_point T>
struct Wide;

template <>
struct Wide<float> {
  using type = double;
  static double prod(double a, double b) { return a * b; }
  static double value(double v) { return v; }
};

template <>
struct Wide<double> {
  using type = DoubleDouble;
  static DoubleDouble prod(double a, double b) { return DoubleDouble::two_prod(a, b); }
  static double value(DoubleDouble v) { return v.to_double(); }
};

}  // namespace

template <std::floating_point T>
LuResult<T> getf2(DenseMatrix<T> a, const FpEnv<T>& env) {
  return factor(std::move(a),
                [&env](StridedVector<T> col, Complex<T> pivot) { crscl(col, pivot, env); });
}

template <std::floating_point T>
LuResult<T> getf2_naive(DenseMatrix<T> a, const FpEnv<T>& env, Division division) {
  return factor(std::move(a), [&env, division](StridedVector<T> col, Complex<T> pivot) {
    if (std::hypot(pivot.re, pivot.im) >= env.sfmin) {
      scal_complex(col, divide(Complex<T>{T(1), T(0)}, pivot, division));
    } else {
      for (std::size_t i = 0; i < col.size(); ++i) col[i] = divide(col[i], pivot, division);
    }
  });
}

template <std::floating_point T>
double backward_error(const DenseMatrix<T>& a, const LuResult<T>& r) {
  using W = Wide<T>;
  using Acc = typename W::type;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);
  if (r.lu.rows() != m || r.lu.cols() != n || r.ipiv.size() != k) {
    throw std::invalid_argument("backward_error: factorization does not match the matrix");
  }

  DenseMatrix<T> pa = a;
  for (std::size_t j = 0; j < k; ++j) {
    const auto p = static_cast<std::size_t>(r.ipiv[j] - 1);
    if (p != j) {
      for (std::size_t c = 0; c < n; ++c) std::swap(pa(j, c), pa(p, c));
    }
  }

  // Common power-of-two scale keeps moduli and sums finite near overflow.
  T biggest = 0;
  for (const auto& z : a.data()) biggest = std::max({biggest, std::fabs(z.re), std::fabs(z.im)});
  for (const auto& z : r.lu.data()) {
    if (std::isfinite(z.re)) biggest = std::max(biggest, std::fabs(z.re));
    if (std::isfinite(z.im)) biggest = std::max(biggest, std::fabs(z.im));
  }
  const int shift = (biggest > 0 && std::isfinite(biggest)) ? -std::ilogb(biggest) : 0;
  auto scaled = [shift](T v) { return std::ldexp(static_cast<double>(v), shift); };

  double norm_a = 0.0;
  double norm_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Acc re = Acc(scaled(pa(i, j).re));
      Acc im = Acc(scaled(pa(i, j).im));
      const std::size_t last = std::min({i, j, k - 1});
      for (std::size_t t = 0; t <= last; ++t) {
        const Complex<T> l = r.l(i, t);
        const Complex<T> u = r.u(t, j);
        const double lr = l.re, li = l.im;
        const double ur = scaled(u.re), ui = scaled(u.im);
        re = re - W::prod(lr, ur) + W::prod(li, ui);
        im = im - W::prod(lr, ui) - W::prod(li, ur);
      }
      norm_res = std::max(norm_res, std::hypot(W::value(re), W::value(im)));
      norm_a = std::max(norm_a, std::hypot(scaled(pa(i, j).re), scaled(pa(i, j).im)));
    }
  }
  if (std::isnan(norm_res)) return norm_res;
  if (norm_a == 0.0) return norm_res == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double eps = static_cast<double>(std::numeric_limits<T>::epsilon()) / 2;
  return norm_res / (static_cast<double>(n) * eps * norm_a);
}

template <std::floating_point T>
IssueConstants<T> issue_constants() {
  if constexpr (sizeof(T) == 4) {
    return {std::ldexp(T(1), 127), std::ldexp(T(1), 75)};
  } else {
    return {std::ldexp(T(1), 1023), std::ldexp(T(1), 538)};
  }
}

template <std::floating_point T>
std::vector<IssueMatrix<T>> issue_matrices() {
  const auto [big, b] = issue_constants<T>();
  const T z = 0;
  std::vector<IssueMatrix<T>> out;
  out.push_back({"issue1",
                 DenseMatrix<T>::from_rows({{{big, big}, {big, z}}, {{big, z}, {z, z}}}),
                 "exact L21 = 0.5-0.5i, U22 = -M(0.5-0.5i); classic variant gives info=2"});
  out.push_back({"issue2",
                 DenseMatrix<T>::from_rows({{{b, T(1)}, {b, z}}, {{b, z}, {b, z}}}),
                 "L21 = 1-i/b, U22 ~ 1/b+i; classic variant gives L21=1 and info=2"});
  return out;
}

#define CRSCL_INSTANTIATE(T)                                                          \
  template class DenseMatrix<T>;                                                      \
  template struct LuResult<T>;                                                        \
  template LuResult<T> getf2(DenseMatrix<T>, const FpEnv<T>&);                        \
  template LuResult<T> getf2_naive(DenseMatrix<T>, const FpEnv<T>&, Division);        \
  template double backward_error(const DenseMatrix<T>&, const LuResult<T>&);          \
  template IssueConstants<T> issue_constants();                                       \
  template std::vector<IssueMatrix<T>> issue_matrices();

CRSCL_INSTANTIATE(float)
CRSCL_INSTANTIATE(double)

#undef CRSCL_INSTANTIATE

}  // namespace crscl
