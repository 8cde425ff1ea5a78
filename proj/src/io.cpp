#include "crscl/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace crscl {

template <std::floating_point T>
std::string format_hex(T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  std::string_view raw(buf, static_cast<std::size_t>(res.ptr - buf));
  std::string out;
  if (!raw.empty() && raw.front() == '-') {
    out.push_back('-');
    raw.remove_prefix(1);
  }
  if (raw == "inf" || raw.starts_with("nan")) {
    out.append(raw.substr(0, 3));
    return out;
  }
  out += "0x";
  for (const char c : raw) {
    if (c != '+') out.push_back(c);
  }
  return out;
}

template <std::floating_point T>
std::optional<T> parse_real(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty() || text.front() == '-' || text.front() == '+') return std::nullopt;

  auto fmt = std::chars_format::general;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    fmt = std::chars_format::hex;
  }
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value, fmt);
  // Out-of-range decimal/hex literals report result_out_of_range; they are
  // rejected rather than silently clamped.
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return negative ? -value : value;
}

namespace {

bool blank_or_comment(std::string_view line) {
  for (const char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

std::vector<std::string_view> fields(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <std::floating_point T>
Complex<T> parse_pair(std::string_view line, std::size_t lineno) {
  const auto f = fields(line);
  if (f.size() != 2) throw ParseError(lineno, "expected two numbers \"re im\"");
  const auto re = parse_real<T>(f[0]);
  const auto im = parse_real<T>(f[1]);
  if (!re) throw ParseError(lineno, "bad number '" + std::string(f[0]) + "'");
  if (!im) throw ParseError(lineno, "bad number '" + std::string(f[1]) + "'");
  return {*re, *im};
}

template <std::floating_point T>
DenseMatrix<T> read_matrix_body(std::istream& in, std::size_t rows, std::size_t cols,
                                std::size_t& lineno) {
  DenseMatrix<T> m(rows, cols);
  std::size_t filled = 0;
  std::string line;
  while (filled < rows * cols && std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    m.data()[filled++] = parse_pair<T>(line, lineno);
  }
  if (filled != rows * cols) throw ParseError(lineno, "matrix file ends early");
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank_or_comment(line)) throw ParseError(lineno, "unexpected data after the matrix");
  }
  return m;
}

}  // namespace

template <std::floating_point T>
std::vector<Complex<T>> read_vector(std::istream& in) {
  std::vector<Complex<T>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    out.push_back(parse_pair<T>(line, lineno));
  }
  return out;
}

template <std::floating_point T>
void write_vector(std::ostream& out, std::span<const Complex<T>> values) {
  for (const auto& z : values) out << format_hex(z.re) << ' ' << format_hex(z.im) << '\n';
}

AnyMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank_or_comment(line)) break;
    line.clear();
  }
  const auto f = fields(line);
  if (f.size() != 3) throw ParseError(lineno, "expected header \"m n precision\"");
  auto dim = [&](std::string_view s) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
      throw ParseError(lineno, "bad dimension '" + std::string(s) + "'");
    }
    return v;
  };
  const std::size_t rows = dim(f[0]);
  const std::size_t cols = dim(f[1]);
  Precision p;
  try {
    p = parse_precision(f[2]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  if (p == Precision::Binary32) return read_matrix_body<float>(in, rows, cols, lineno);
  return read_matrix_body<double>(in, rows, cols, lineno);
}

template <std::floating_point T>
void write_matrix(std::ostream& out, const DenseMatrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << to_string(precision_of<T>) << '\n';
  write_vector<T>(out, m.data());
}

#define CRSCL_INSTANTIATE(T)                                                     \
  template std::string format_hex(T);                                            \
  template std::optional<T> parse_real(std::string_view);                        \
  template std::vector<Complex<T>> read_vector(std::istream&);                   \
  template void write_vector(std::ostream&, std::span<const Complex<T>>);        \
  template void write_matrix(std::ostream&, const DenseMatrix<T>&);

CRSCL_INSTANTIATE(float)
CRSCL_INSTANTIATE(double)

#undef CRSCL_INSTANTIATE

}  // namespace crscl
