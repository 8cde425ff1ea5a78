#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crscl/complex.hpp"
#include "crscl/fp_env.hpp"
#include "crscl/lu_factor.hpp"

namespace crscl {

/// Hex-float text such as "0x1.8p1", "-0x1p-149", "0x0p0", "inf", "nan".
/// Parsing the result back gives the same bits for every non-NaN value.
template <std::floating_point T>
std::string format_hex(T v);

/// Accepts hex-float with a 0x prefix, or decimal, with optional sign;
/// also inf / infinity / nan. The whole token must be consumed.
template <std::floating_point T>
std::optional<T> parse_real(std::string_view text);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Vector file: one "re im" pair per line; blank lines and '#' comments
/// are ignored.
template <std::floating_point T>
std::vector<Complex<T>> read_vector(std::istream& in);

template <std::floating_point T>
void write_vector(std::ostream& out, std::span<const Complex<T>> values);

/// Matrix file: header "m n precision", then m*n lines "re im" in
/// column-major order.
using AnyMatrix = std::variant<DenseMatrix<float>, DenseMatrix<double>>;

AnyMatrix read_matrix(std::istream& in);

template <std::floating_point T>
void write_matrix(std::ostream& out, const DenseMatrix<T>& m);

}  // namespace crscl
