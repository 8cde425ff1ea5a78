#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "crscl/complex.hpp"
#include "crscl/fp_env.hpp"
#include "crscl/vector_scaling.hpp"

namespace crscl {

/// Column-major m x n complex matrix; element (i, j) lives at i + j*m.
template <std::floating_point T>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("DenseMatrix: empty dimensions");
  }

  static DenseMatrix from_rows(const std::vector<std::vector<Complex<T>>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex<T>& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  const Complex<T>& operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

  std::span<Complex<T>> data() { return data_; }
  std::span<const Complex<T>> data() const { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex<T>> data_;
};

/// Packed factors: L strictly below the diagonal (unit diagonal implied),
/// U on and above. `ipiv` is 1-based. `info` is 0 on success, otherwise the
/// 1-based index of the first exactly-zero pivot.
template <std::floating_point T>
struct LuResult {
  DenseMatrix<T> lu;
  std::vector<int> ipiv;
  int info = 0;

  Complex<T> l(std::size_t i, std::size_t j) const;
  Complex<T> u(std::size_t i, std::size_t j) const;
};

/// Unblocked LU with partial pivoting; the subcolumn under each pivot is
/// scaled with crscl. Pivot = largest |re|+|im|, first row on ties.
template <std::floating_point T>
LuResult<T> getf2(DenseMatrix<T> a, const FpEnv<T>& env);

/// The classic variant: when |pivot| >= sfmin multiply by the reciprocal
/// 1/pivot obtained by `division`, otherwise divide each entry.
template <std::floating_point T>
LuResult<T> getf2_naive(DenseMatrix<T> a, const FpEnv<T>& env, Division division);

/// max|P A - L U| / (n * u * max|A|), entries measured by modulus and the
/// residual accumulated in wider arithmetic (binary64 for binary32 inputs,
/// double-double for binary64 inputs).
template <std::floating_point T>
double backward_error(const DenseMatrix<T>& a, const LuResult<T>& r);

template <std::floating_point T>
struct IssueMatrix {
  std::string label;
  DenseMatrix<T> matrix;
  std::string expected;
};

/// The two matrices on which the classic variant breaks down:
///  issue1 = [[M+Mi, M], [M, 0]] with M close to half the overflow limit,
///  issue2 = [[b+i, b], [b, b]] with 1/b^2 below half the smallest subnormal.
/// binary32: M = 2^127, b = 2^75. binary64: M = 2^1023, b = 2^538.
template <std::floating_point T>
std::vector<IssueMatrix<T>> issue_matrices();

template <std::floating_point T>
struct IssueConstants {
  T m;
  T b;
};

template <std::floating_point T>
IssueConstants<T> issue_constants();

}  // namespace crscl
