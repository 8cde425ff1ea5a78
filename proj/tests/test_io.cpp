#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "crscl/io.hpp"

using namespace crscl;

TEST_CASE("hex formatting") {
  CHECK(format_hex(3.0f) == "0x1.8p1");
  CHECK(format_hex(-4.0) == "-0x1p2");
  CHECK(format_hex(0.0f) == "0x0p0");
  CHECK(format_hex(-0.0) == "-0x0p0");
  CHECK(format_hex(std::ldexp(1.0f, 127)) == "0x1p127");
  CHECK(format_hex(std::ldexp(1.0, -1074)) == "0x0.0000000000001p-1022");
  CHECK(format_hex(std::numeric_limits<float>::infinity()) == "inf");
  CHECK(format_hex(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_hex(std::numeric_limits<float>::quiet_NaN()) == "nan");
}

TEST_CASE("parsing") {
  CHECK(parse_real<float>("0x1.8p1").value() == 3.0f);
  CHECK(parse_real<float>("-0x1p2").value() == -4.0f);
  CHECK(parse_real<double>("  0.1 ").value() == 0.1);
  CHECK(parse_real<double>("+2.5e-3").value() == 2.5e-3);
  CHECK(parse_real<float>("0").value() == 0.0f);
  CHECK(std::signbit(parse_real<double>("-0x0p0").value()));
  CHECK(std::isinf(parse_real<float>("inf").value()));
  CHECK(std::isinf(parse_real<double>("-infinity").value()));
  CHECK(std::isnan(parse_real<double>("nan").value()));
  CHECK_FALSE(parse_real<float>("").has_value());
  CHECK_FALSE(parse_real<float>("abc").has_value());
  CHECK_FALSE(parse_real<float>("1.5x").has_value());
  CHECK_FALSE(parse_real<float>("0x").has_value());
  CHECK_FALSE(parse_real<float>("--1").has_value());
  // Out of range for binary32.
  CHECK_FALSE(parse_real<float>("0x1p200").has_value());
  CHECK(parse_real<double>("0x1p200").value() == std::ldexp(1.0, 200));
}

TEST_CASE_TEMPLATE("format then parse is the identity on bits", T, float, double) {
  using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100000; ++k) {
    const T v = std::bit_cast<T>(static_cast<Bits>(rng()));
    if (std::isnan(v)) continue;
    const auto back = parse_real<T>(format_hex(v));
    REQUIRE(back.has_value());
    CHECK(std::bit_cast<Bits>(*back) == std::bit_cast<Bits>(v));
  }
}

TEST_CASE("vector files") {
  std::istringstream in("# header\n0x1p127 0x1p127\n\n  1.5   -2  \n# tail\n0 -0x0p0\n");
  const auto v = read_vector<float>(in);
  REQUIRE(v.size() == 3);
  CHECK(bit_equal(v[0], Complex<float>{std::ldexp(1.0f, 127), std::ldexp(1.0f, 127)}));
  CHECK(bit_equal(v[1], Complex<float>{1.5f, -2.0f}));
  CHECK(bit_equal(v[2], Complex<float>{0.0f, -0.0f}));

  std::ostringstream out;
  write_vector<float>(out, v);
  CHECK(out.str() == "0x1p127 0x1p127\n0x1.8p0 -0x1p1\n0x0p0 -0x0p0\n");
  std::istringstream again(out.str());
  const auto w = read_vector<float>(again);
  REQUIRE(w.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(bit_equal(v[i], w[i]));

  std::istringstream empty("");
  CHECK(read_vector<double>(empty).empty());
}

TEST_CASE("malformed vector files report the line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_vector<float>(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 2\n3\n") == 2);
  CHECK(line_of("1 2\n\n# c\n1 2 3\n") == 4);
  CHECK(line_of("zz 1\n") == 1);
  CHECK(line_of("1 0x1p999\n") == 1);
  CHECK(line_of("1 2\n3 4\n") == 0);
}

TEST_CASE("matrix files") {
  auto m = DenseMatrix<double>::from_rows({{{1, 2}, {3, 4}, {5, 6}}, {{-1, 0.5}, {0, 0}, {1e-300, 7}}});
  std::ostringstream out;
  write_matrix(out, m);
  std::istringstream in(out.str());
  const AnyMatrix any = read_matrix(in);
  REQUIRE(std::holds_alternative<DenseMatrix<double>>(any));
  const auto& back = std::get<DenseMatrix<double>>(any);
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(bit_equal(back(i, j), m(i, j)));
  }

  std::istringstream f32("2 1 binary32\n0x1p127 0\n1 1\n");
  CHECK(std::holds_alternative<DenseMatrix<float>>(read_matrix(f32)));

  std::istringstream short_body("2 2 binary32\n1 1\n2 2\n");
  CHECK_THROWS_AS(read_matrix(short_body), ParseError);
  std::istringstream bad_header("2 x binary32\n");
  CHECK_THROWS_AS(read_matrix(bad_header), ParseError);
  std::istringstream bad_precision("1 1 binary16\n1 1\n");
  CHECK_THROWS_AS(read_matrix(bad_precision), ParseError);
}
