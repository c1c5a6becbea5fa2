#include <doctest.h>

#include "threefold/intersection_ring.hpp"

#include <random>

using namespace threefold;

namespace {

// Degree-3 truncation of (1+h)^(n+1) / prod(1 + d h), with plain long arithmetic.
std::vector<long> chern_series(int n, const std::vector<int>& degrees) {
  std::vector<long> c(4, 0);
  for (int k = 0; k <= 3; ++k) {
    long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n + 1 - i) / (i + 1);
    c[k] = b;
  }
  for (int d : degrees) {
    // divide by (1 + d h): c'_k = c_k - d c'_{k-1}
    std::vector<long> q(4, 0);
    for (int k = 0; k <= 3; ++k) q[k] = c[k] - (k ? d * q[k - 1] : 0);
    c = q;
  }
  return c;
}

DivisorClass random_divisor(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(-4, 4);
  DivisorClass d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = Rational(e(rng), 1 + (e(rng) + 4) % 3);
  return d;
}

}  // namespace

TEST_CASE("projective space") {
  const ThreefoldModel p3 = make_base(BaseSpec::p3());
  const DivisorClass h = p3.divisor("h");
  CHECK(triple(p3, h, h, h) == 1);
  CHECK(p3.c1 == Rational(4) * h);
  CHECK(p3.c2 == Rational(6) * p3.curve("l"));
  CHECK(p3.euler == 4);
  CHECK(p3.base_flags.count(kPicardRankOne));
  CHECK(validate(p3).empty());
  // c1^3 of P^3 is 64.
  CHECK(triple(p3, p3.c1, p3.c1, p3.c1) == 64);
}

TEST_CASE("P2 x P1 tables") {
  const ThreefoldModel m = make_base(BaseSpec::p2xp1());
  const DivisorClass a = m.divisor("A"), b = m.divisor("B");
  const CurveClass f1 = m.curve("f1"), f2 = m.curve("f2");
  CHECK(multiply_divisors(m, a, a) == m.zero_curve());
  CHECK(multiply_divisors(m, a, b) == f1);
  CHECK(multiply_divisors(m, b, b) == f2);
  CHECK(pair(m, a, f1) == 0);
  CHECK(pair(m, a, f2) == 1);
  CHECK(pair(m, b, f1) == 1);
  CHECK(pair(m, b, f2) == 0);
  CHECK(m.c1 == Rational(2) * a + Rational(3) * b);
  CHECK(m.c2 == Rational(6) * f1 + Rational(3) * f2);
  // c1^3 = 54 for P^2 x P^1, and chi = 2 + 2 rho here.
  CHECK(triple(m, m.c1, m.c1, m.c1) == 54);
  CHECK(m.euler == 6);
}

TEST_CASE("P1 x P1 x P1") {
  const ThreefoldModel m = make_base(BaseSpec::p1cubed());
  const DivisorClass h1 = m.divisor("H1"), h2 = m.divisor("H2"), h3 = m.divisor("H3");
  CHECK(triple(m, h1, h2, h3) == 1);
  CHECK(triple(m, h1, h1, h2) == 0);
  CHECK(triple(m, m.c1, m.c1, m.c1) == 48);
  CHECK(m.euler == 8);
  CHECK(validate(m).empty());
}

TEST_CASE("complete intersections against the Chern series") {
  for (int n = 4; n <= 7; ++n) {
    std::vector<int> degrees(static_cast<std::size_t>(n - 3), 1);
    for (int d = 1; d <= 4; ++d) {
      degrees.front() = d;
      const ThreefoldModel m = make_base(BaseSpec::complete_intersection(n, degrees));
      long deg = 1;
      for (int x : degrees) deg *= x;
      const auto s = chern_series(n, degrees);
      const DivisorClass h = m.divisor("h");
      CHECK(triple(m, h, h, h) == deg);
      CHECK(m.c1 == Rational(s[1]) * h);
      CHECK(pair(m, h, m.c2) == s[2] * deg);
      CHECK(m.euler == s[3] * deg);
      CHECK(complete_intersection_c2_coefficient(n, degrees) == s[2]);
    }
  }
  // Smooth quadric and cubic threefolds in P^4.
  CHECK(make_base(BaseSpec::complete_intersection(4, {2})).euler == 4);
  CHECK(make_base(BaseSpec::complete_intersection(4, {3})).euler == -6);
  CHECK(make_base(BaseSpec::complete_intersection(5, {2, 2})).euler == 0);
  CHECK_THROWS_AS(make_base(BaseSpec::complete_intersection(5, {2})), ValidationError);
  CHECK_THROWS_AS(make_base(BaseSpec::complete_intersection(4, {0})), ValidationError);
}

TEST_CASE("products are symmetric and bilinear") {
  std::mt19937 rng(23);
  for (const auto& spec : {BaseSpec::p3(), BaseSpec::p2xp1(), BaseSpec::p1cubed()}) {
    const ThreefoldModel m = make_base(spec);
    for (int t = 0; t < 20; ++t) {
      const auto a = random_divisor(rng, m.size()), b = random_divisor(rng, m.size()), c = random_divisor(rng, m.size());
      const Rational s(Rational(2, 3));
      CHECK(triple(m, a, b, c) == triple(m, c, a, b));
      CHECK(triple(m, a, b, c) == triple(m, b, a, c));
      CHECK(triple(m, a + s * b, b, c) == triple(m, a, b, c) + s * triple(m, b, b, c));
      CHECK(multiply_divisors(m, a, b) == multiply_divisors(m, b, a));
    }
  }
}

TEST_CASE("custom tables are validated") {
  CustomTables t;
  t.divisor_names = {"h"};
  t.curve_names = {"l"};
  t.products = {{{Rational(1)}}};
  t.pairing = {{Rational(0)}};
  t.c1 = {Rational(4)};
  t.c2 = {Rational(6)};
  t.euler = 4;
  CHECK_THROWS_AS(make_base(BaseSpec::from_tables(t)), ValidationError);
  t.pairing = {{Rational(1)}};
  const ThreefoldModel m = make_base(BaseSpec::from_tables(t));
  CHECK(same_intersection_data(m, make_base(BaseSpec::p3())));
  t.divisor_names = {"h", "h"};
  CHECK_THROWS_AS(make_base(BaseSpec::from_tables(t)), ValidationError);
}

TEST_CASE("formatting") {
  const ThreefoldModel m = make_base(BaseSpec::p2xp1());
  CHECK(format_divisor(m, m.c1) == "2*A + 3*B");
  CHECK(format_curve(m, -m.curve("f1")) == "-f1");
  CHECK(format_divisor(m, m.zero_divisor()) == "0");
}
