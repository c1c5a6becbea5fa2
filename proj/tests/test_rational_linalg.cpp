#include <doctest.h>

#include "threefold/linalg.hpp"

#include <random>

using namespace threefold;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(is_integer(Rational(4, 2)));
  CHECK_THROWS_AS(to_integer(Rational(1, 3)), std::domain_error);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-5, 5);
  auto cofactor = [](auto&& self, const std::vector<std::vector<Integer>>& m) -> Integer {
    if (m.size() == 1) return m[0][0];
    Integer s = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::vector<std::vector<Integer>> minor;
      for (std::size_t i = 1; i < m.size(); ++i) {
        std::vector<Integer> row;
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != j) row.push_back(m[i][k]);
        minor.push_back(row);
      }
      const Integer t = m[0][j] * self(self, minor);
      s += (j % 2 == 0) ? t : Integer(-t);
    }
    return s;
  };
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 5;
    std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(n));
    for (auto& r : rows)
      for (auto& x : r) x = e(rng);
    const IntegerMatrix m = IntegerMatrix::from_rows(rows);
    const Integer expected = cofactor(cofactor, rows);
    CHECK(determinant(m) == expected);
    CHECK(determinant(to_rational(m)) == Rational(expected));
  }
}

TEST_CASE("inverse, rank and null space") {
  const RationalMatrix m = RationalMatrix::from_rows({{2, 1}, {1, 1}});
  const auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(*inv * m == RationalMatrix::identity(2));
  const RationalMatrix s = RationalMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  CHECK(rank(s) == 1);
  CHECK_FALSE(inverse(RationalMatrix::from_rows({{1, 2}, {2, 4}})));
  for (const auto& v : null_space(s)) CHECK(s * v == RationalVector(2));
  CHECK(null_space(s).size() == 2);
}

TEST_CASE("characteristic polynomial satisfies Cayley-Hamilton") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = e(rng);
    const auto p = characteristic_polynomial(m);
    REQUIRE(p.size() == n + 1);
    CHECK(p.back() == 1);
    const RationalMatrix r = to_rational(m);
    RationalMatrix acc(n, n);
    RationalMatrix power = RationalMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc(i, j) += Rational(p[k]) * power(i, j);
      power = power * r;
    }
    CHECK(acc == RationalMatrix(n, n));
  }
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(RationalMatrix::from_rows({{1, 2}, {3}}), DimensionError);
  CHECK_THROWS_AS(RationalMatrix(2, 3) * RationalMatrix(2, 3), DimensionError);
}
