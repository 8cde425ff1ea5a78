#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "crscl/complex.hpp"
#include "crscl/fp_env.hpp"
#include "crscl/scalar_core.hpp"

namespace crscl {

/// BLAS-style view: n elements starting at `offset`, `stride` apart.
/// Elements between the addressed ones are never read or written.
template <std::floating_point T>
class StridedVector {
 public:
  StridedVector(std::span<Complex<T>> buffer, std::size_t offset, std::size_t stride,
                std::size_t n)
      : data_(buffer.data()), offset_(offset), stride_(stride), n_(n) {
    if (stride == 0) throw std::invalid_argument("StridedVector: stride must be positive");
    if (n > 0 && offset + (n - 1) * stride >= buffer.size()) {
      throw std::out_of_range("StridedVector: addressed elements exceed the buffer");
    }
  }

  explicit StridedVector(std::span<Complex<T>> buffer)
      : StridedVector(buffer, 0, 1, buffer.size()) {}

  std::size_t size() const { return n_; }
  std::size_t stride() const { return stride_; }

  Complex<T>& operator[](std::size_t i) const { return data_[offset_ + i * stride_]; }

 private:
  Complex<T>* data_;
  std::size_t offset_;
  std::size_t stride_;
  std::size_t n_;
};

/// Operation tallies. Kernels add their per-call totals once, after the loop.
struct FlopCounter {
  std::uint64_t real_mul = 0;
  std::uint64_t real_add = 0;
  std::uint64_t real_div = 0;
  std::uint64_t complex_mul = 0;
  std::uint64_t complex_div = 0;

  std::uint64_t flops() const { return real_mul + real_add + real_div; }

  FlopCounter& operator+=(const FlopCounter& o) {
    real_mul += o.real_mul;
    real_add += o.real_add;
    real_div += o.real_div;
    complex_mul += o.complex_mul;
    complex_div += o.complex_div;
    return *this;
  }
  bool operator==(const FlopCounter&) const = default;
};

enum class Division { Smith, Textbook };

std::string_view to_string(Division d);

/// x_k <- x_k * c. Two real multiplications per element.
template <std::floating_point T>
void scal_real(StridedVector<T> x, T c, FlopCounter* counter = nullptr);

/// x_k <- x_k * (t i), computed as (-im*t, re*t). No products with an
/// explicit zero are formed, so finite*Inf never turns into NaN here.
template <std::floating_point T>
void scal_imaginary(StridedVector<T> x, T t, FlopCounter* counter = nullptr);

/// x_k <- x_k * c with the 4-mul/2-add product.
template <std::floating_point T>
void scal_complex(StridedVector<T> x, Complex<T> c, FlopCounter* counter = nullptr);

/// Applies each plan step in order with the kernel matching its kind.
template <std::floating_point T>
void apply_plan(StridedVector<T> x, const ScalePlan<T>& plan, FlopCounter* counter = nullptr);

/// Scales x by 1/a for real a: one pass when a is in the safe range, two
/// otherwise.
template <std::floating_point T>
void rscl(StridedVector<T> x, T a, const FpEnv<T>& env, FlopCounter* counter = nullptr);

/// Scales x by 1/a for complex a without any complex division.
template <std::floating_point T>
void crscl(StridedVector<T> x, Complex<T> a, const FpEnv<T>& env,
           FlopCounter* counter = nullptr);

/// Smith's two-branch division num/den.
template <std::floating_point T>
Complex<T> smith_div(Complex<T> num, Complex<T> den);

/// ((re*ar + im*ai) + (im*ar - re*ai) i) / (ar^2 + ai^2).
template <std::floating_point T>
Complex<T> textbook_div(Complex<T> num, Complex<T> den);

template <std::floating_point T>
Complex<T> divide(Complex<T> num, Complex<T> den, Division d) {
  return d == Division::Smith ? smith_div(num, den) : textbook_div(num, den);
}

/// Reference loop x_k <- x_k / a, one complex division per element.
template <std::floating_point T>
void naive_div_scale(StridedVector<T> x, Complex<T> a, Division division,
                     FlopCounter* counter = nullptr);

}  // namespace crscl
