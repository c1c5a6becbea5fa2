#include <doctest.h>

#include "threefold/linear_program.hpp"

#include <optional>
#include <random>

using namespace threefold;

namespace {

LinearForm make(std::vector<int> coeffs, int constant, std::string label = "") {
  LinearForm f;
  for (int c : coeffs) f.coeffs.push_back(Rational(c));
  f.constant = constant;
  f.label = std::move(label);
  return f;
}

// Brute-force maximum over vertices of {x : inequalities >= 0} in two
// variables, for bounded feasible regions.
std::optional<Rational> vertex_maximum(const std::vector<LinearForm>& ineq, const RationalVector& obj) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < ineq.size(); ++i)
    for (std::size_t j = i + 1; j < ineq.size(); ++j) {
      const Rational a = ineq[i].coeffs[0], b = ineq[i].coeffs[1], c = -ineq[i].constant;
      const Rational d = ineq[j].coeffs[0], e = ineq[j].coeffs[1], f = -ineq[j].constant;
      const Rational det = a * e - b * d;
      if (det.is_zero()) continue;
      const RationalVector x = {(c * e - b * f) / det, (a * f - c * d) / det};
      bool ok = true;
      for (const auto& h : ineq)
        if (h.evaluate(x) < 0) ok = false;
      if (!ok) continue;
      const Rational v = obj[0] * x[0] + obj[1] * x[1];
      if (!best || v > *best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("small optimum with certificate") {
  ConstraintSystem s;
  s.variables = {"x", "y"};
  s.add_inequality(make({-1, 0}, 4, "x<=4"));
  s.add_inequality(make({0, -1}, 3, "y<=3"));
  s.add_inequality(make({-1, -1}, 5, "x+y<=5"));
  s.add_inequality(make({1, 0}, 0, "x>=0"));
  s.add_inequality(make({0, 1}, 0, "y>=0"));
  const RationalVector obj = {Rational(2), Rational(1)};
  const auto r = rational_feasible(s, obj);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.maximum == 9);
  CHECK(replay(s, obj, r));
  const std::string text = serialize_certificate(s, r.certificate);
  CHECK(text.find("bound: 9") != std::string::npos);

  // A tampered certificate must not replay.
  auto forged = r;
  forged.certificate.bound = 8;
  CHECK_FALSE(replay(s, obj, forged));
}

TEST_CASE("infeasible and unbounded systems") {
  ConstraintSystem s;
  s.variables = {"x"};
  s.add_inequality(make({1}, -2, "x>=2"));
  s.add_inequality(make({-1}, 1, "x<=1"));
  const auto r = rational_feasible(s, "x");
  CHECK(r.status == LpStatus::infeasible);
  CHECK(r.certificate.bound < 0);
  CHECK(replay(s, {Rational(1)}, r));

  ConstraintSystem u;
  u.variables = {"x", "y"};
  u.add_inequality(make({1, 0}, 0));
  u.add_equality(make({1, -1}, 0));
  const auto ur = rational_feasible(u, "y");
  CHECK(ur.status == LpStatus::unbounded);
  CHECK(replay(u, {Rational(0), Rational(1)}, ur));
}

TEST_CASE("equalities pin free variables") {
  ConstraintSystem s;
  s.variables = {"a", "b"};
  s.add_equality(make({1, 1}, -3));
  s.add_inequality(make({1, 0}, 1));
  s.add_inequality(make({-1, 0}, 2));
  const auto r = rational_feasible(s, "b");
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.maximum == 4);
  CHECK(r.point[0] == -1);
  CHECK(replay(s, {Rational(0), Rational(1)}, r));
  CHECK(s.index("b") == 1);
  CHECK_THROWS(s.index("c"));
}

TEST_CASE("random polygons against vertex enumeration") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coeff(-5, 5), rhs(0, 10);
  int compared = 0;
  for (int t = 0; t < 300; ++t) {
    ConstraintSystem s;
    s.variables = {"x", "y"};
    // a bounding box keeps every instance bounded
    s.add_inequality(make({1, 0}, 6));
    s.add_inequality(make({-1, 0}, 6));
    s.add_inequality(make({0, 1}, 6));
    s.add_inequality(make({0, -1}, 6));
    const int extra = 1 + t % 5;
    for (int k = 0; k < extra; ++k) s.add_inequality(make({coeff(rng), coeff(rng)}, rhs(rng) - 3));
    const RationalVector obj = {Rational(coeff(rng)), Rational(coeff(rng))};
    const auto r = rational_feasible(s, obj);
    CHECK(replay(s, obj, r));
    const auto oracle = vertex_maximum(s.inequalities, obj);
    if (!oracle) {
      CHECK(r.status == LpStatus::infeasible);
      continue;
    }
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.maximum == *oracle);
    ++compared;
  }
  CHECK(compared > 100);
}
