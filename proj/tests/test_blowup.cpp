#include <doctest.h>

#include "threefold/blowup.hpp"

#include <random>

using namespace threefold;

namespace {

Rational cube(const ThreefoldModel& m, const DivisorClass& d) { return triple(m, d, d, d); }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  return Rational(num(rng), den(rng));
}

DivisorClass random_divisor(std::mt19937& rng, std::size_t n) {
  DivisorClass d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = random_rational(rng);
  return d;
}

CurveClass random_curve(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(-3, 5);
  CurveClass c(n);
  while (c.is_zero())
    for (std::size_t i = 0; i < n; ++i) c[i] = Rational(e(rng));
  return c;
}

}  // namespace

TEST_CASE("point blowup of P3") {
  const ThreefoldModel p3 = make_base(BaseSpec::p3());
  const ThreefoldModel x = blow_up_point(p3);
  const DivisorClass e = x.divisor("E1");
  CHECK(cube(x, e) == 1);
  CHECK(multiply_divisors(x, e, e) == -x.curve("L1"));
  CHECK(pair(x, e, x.curve("L1")) == -1);
  CHECK(cube(x, x.c1) == 56);
  CHECK(x.euler == 6);
  CHECK(x.picard == 2);
  CHECK(x.c1 == pullback_divisor(p3, x, p3.c1) - Rational(2) * e);
  CHECK(validate(x).empty());
  CHECK(x.history.size() == 1);
  CHECK(x.history[0].kind == StepKind::point);
  CHECK(x.point_count() == 1);
}

TEST_CASE("curve blowups of P3 change c1^3 by the degree and genus") {
  struct Row {
    int degree, genus;
    int expected;
  };
  const ThreefoldModel p3 = make_base(BaseSpec::p3());
  for (const Row r : {Row{1, 0, 54}, Row{2, 0, 46}, Row{3, 0, 38}, Row{4, 1, 32}}) {
    CurveCenterSpec spec;
    spec.curve_class = Rational(r.degree) * p3.curve("l");
    spec.genus = r.genus;
    const ThreefoldModel x = blow_up_curve(p3, spec);
    CHECK(cube(x, x.c1) == r.expected);
    CHECK(cube(x, x.c1) == 64 - 8 * r.degree + 2 * r.genus - 2);
    CHECK(x.euler == 4 + 2 - 2 * r.genus);
    const DivisorClass f = x.divisor("F1");
    CHECK(cube(x, f) == -(4 * r.degree + 2 * r.genus - 2));
    CHECK(pair(x, f, x.curve("M1")) == -1);
    CHECK(pair(x, x.c1, x.curve("M1")) == 1);
    CHECK(x.history.back().gamma == 4 * r.degree + 2 * r.genus - 2);
    CHECK(validate(x).empty());
  }
}

// c1.c2 = 24 chi(O) is a birational invariant; every tower below starts from
// a rational threefold.
TEST_CASE("c1.c2 stays 24 along towers") {
  std::mt19937 rng(5);
  for (const auto& spec : {BaseSpec::p3(), BaseSpec::p2xp1(), BaseSpec::p1cubed()}) {
    ThreefoldModel m = make_base(spec);
    CHECK(pair(m, m.c1, m.c2) == 24);
    for (int step = 0; step < 4; ++step) {
      if (step % 2 == 0) {
        m = blow_up_point(m);
      } else {
        CurveCenterSpec c;
        c.curve_class = random_curve(rng, m.size());
        c.genus = static_cast<int>(rng() % 3);
        m = blow_up_curve(m, c);
      }
      CHECK(pair(m, m.c1, m.c2) == 24);
      CHECK(validate(m).empty());
    }
  }
}

TEST_CASE("exceptional divisor identities over random centers") {
  std::mt19937 rng(11);
  std::vector<ThreefoldModel> bases = {make_base(BaseSpec::p3()), make_base(BaseSpec::p2xp1()),
                                       make_base(BaseSpec::p1cubed())};
  bases.push_back(blow_up_point(bases[0]));
  bases.push_back(blow_up_point(bases[3]));
  for (int t = 0; t < 60; ++t) {
    const ThreefoldModel& y = bases[static_cast<std::size_t>(t) % bases.size()];
    CurveCenterSpec c;
    c.curve_class = random_curve(rng, y.size());
    c.genus = static_cast<int>(rng() % 4);
    const Rational g = pair(y, y.c1, c.curve_class) + Rational(2 * c.genus - 2);
    CHECK(gamma(y, c) == g);
    const ThreefoldModel x = blow_up_curve(y, c);
    const std::string fname = x.history.back().exceptional_divisor;
    const DivisorClass f = x.divisor(fname);
    const DivisorClass xi = random_divisor(rng, y.size());
    const Rational alpha = random_rational(rng);
    const DivisorClass d = pullback_divisor(y, x, xi) - alpha * f;
    CHECK(triple(x, d, d, f) == Rational(2) * alpha * pair(y, xi, c.curve_class) - alpha * alpha * g);
    CHECK(pushforward_curve(y, x, multiply_divisors(x, f, f)) == -c.curve_class);
    CHECK(cube(x, f) == -g);
    // projection formula
    const CurveClass z = random_curve(rng, x.size());
    CHECK(pair(x, pullback_divisor(y, x, xi), z) == pair(y, xi, pushforward_curve(y, x, z)));
    CHECK(pushforward_divisor(y, x, pullback_divisor(y, x, xi)) == xi);
    CHECK(pushforward_curve(y, x, pullback_curve(y, x, c.curve_class)) == c.curve_class);
    CHECK(x.euler == y.euler + 2 - 2 * c.genus);
  }
}

TEST_CASE("coordinate maps refuse unrelated models") {
  const ThreefoldModel p3 = make_base(BaseSpec::p3());
  const ThreefoldModel x2 = blow_up_point(blow_up_point(p3));
  CHECK_THROWS_AS(pullback_divisor(p3, x2, p3.c1), std::invalid_argument);
  CHECK(truncate(x2.c1, 1) == p3.c1);
  CHECK_THROWS_AS(truncate(p3.c1, 2), DimensionError);
}

TEST_CASE("tower evaluation and line strict transforms") {
  const ThreefoldModel p3 = make_base(BaseSpec::p3());
  const ThreefoldModel x2 = blow_up_point(blow_up_point(p3));
  const auto line = line_strict_transform(x2, {1, 2}, 1);
  CHECK(line.curve_class == x2.curve("l") - x2.curve("L1") - x2.curve("L2"));
  CHECK(pair(x2, x2.c1, line.curve_class) == 0);
  CHECK_THROWS_AS(line_strict_transform(x2, {1, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(line_strict_transform(x2, {3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(line_strict_transform(x2, {1}, 0), std::invalid_argument);

  BlowupTower tower{BaseSpec::p3(), {BlowupStep::point(), BlowupStep::point()}};
  auto models = tower.evaluate();
  REQUIRE(models.size() == 3);
  CHECK(same_intersection_data(models[2], x2));

  CurveCenterSpec bad;
  bad.curve_class = p3.zero_curve();
  CHECK_THROWS_AS(blow_up_curve(p3, bad), std::invalid_argument);
  bad.curve_class = p3.curve("l");
  bad.genus = -1;
  CHECK_THROWS_AS(blow_up_curve(p3, bad), std::invalid_argument);
  CHECK_THROWS_AS(apply_step(p3, BlowupStep{StepKind::curve, std::nullopt}), std::invalid_argument);
}
