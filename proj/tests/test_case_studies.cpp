#include <doctest.h>

#include "threefold/case_studies.hpp"
#include "threefold/intersection_ring.hpp"

#include <numeric>

using namespace threefold;

namespace {

IntegerMatrix rotation() { return IntegerMatrix::from_rows({{Integer(0), Integer(-1)}, {Integer(1), Integer(0)}}); }

}  // namespace

TEST_CASE("fixed points on tori") {
  // det(R - I) = 2 and det(R^2 - I) = det(-2I) = 4 on each factor.
  const auto a = block_diagonal({rotation(), rotation(), rotation()});
  CHECK(a.rows() == 6);
  CHECK(torus_fixed_points(a) == 2 * 2 * 2);
  CHECK(torus_fixed_points(a * a) == 4 * 4 * 4);
  CHECK(torus_fixed_points(IntegerMatrix::from_rows({{Integer(2)}})) == 1);
  CHECK_THROWS_AS(torus_fixed_points(IntegerMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("quotient of the cube of the square-lattice curve") {
  const auto r = ueno_report();
  const long fixed = 8, period_two = 64 - fixed;
  const long singular = fixed + period_two / 2;  // orbits of size two
  const long chi_open = (0 - 64) / 4;
  const long chi_quotient = chi_open + singular;
  CHECK(r.fixed_points == fixed);
  CHECK(r.period2_points == 56);
  CHECK(r.singular_points == singular);
  CHECK(r.singular_points == 36);
  CHECK(r.chi_open == chi_open);
  CHECK(r.chi_quotient == 20);
  CHECK(r.chi_resolution == chi_quotient - singular + 3 * singular);
  CHECK(r.chi_resolution == 92);
  CHECK(r.picard_resolution == 9 + singular);
  CHECK(r.identity_check);
  CHECK(r.chi_resolution == 2 + 2 * r.picard_resolution);
}

TEST_CASE("Euler budgets") {
  for (auto [chi0, rho0] : {std::pair{4, 1}, std::pair{6, 2}, std::pair{8, 3}}) {
    const auto b = euler_budget(chi0, rho0, 92, 45);
    CHECK(b.num_blowups == 45 - rho0);
    CHECK(b.genus_slack == 0);
    CHECK(b.feasible);
    CHECK(b.all_centers_rational_forced);
  }
  const auto two = euler_budget(4, 1, 90, 45);
  CHECK(two.genus_slack == 2);
  CHECK(two.feasible);
  CHECK_FALSE(two.all_centers_rational_forced);
  CHECK_FALSE(euler_budget(4, 1, 91, 45).feasible);
  CHECK_FALSE(euler_budget(4, 1, 100, 45).feasible);
  CHECK_THROWS_AS(euler_budget(4, 2, 10, 1), std::invalid_argument);
}

TEST_CASE("tower audits") {
  const ThreefoldModel p3 = make_base(BaseSpec::p3());
  const ThreefoldModel x2 = blow_up_point(blow_up_point(p3));
  BlowupTower t{BaseSpec::p3(), {BlowupStep::point(), BlowupStep::point(), BlowupStep::curve(line_strict_transform(x2, {1, 2}, 1))}};
  const auto a = audit_tower(t);
  CHECK(a.budget.num_blowups == 3);
  CHECK(a.budget.genus_slack == 0);
  CHECK(a.consistent);
  CHECK(a.open_cases.empty());

  CurveCenterSpec quartic;
  quartic.curve_class = Rational(4) * p3.curve("l");
  quartic.genus = 1;
  const auto q = audit_tower({BaseSpec::p3(), {BlowupStep::curve(quartic)}});
  CHECK(q.twice_genus_sum == 2);
  CHECK(q.budget.genus_slack == 2);
  CHECK(q.consistent);

  const ThreefoldModel x1 = blow_up_point(p3);
  CurveCenterSpec steep;
  steep.curve_class = x1.curve("l") - Rational(3) * x1.curve("L1");  // c1.C = -2
  const auto o = audit_tower({BaseSpec::p3(), {BlowupStep::point(), BlowupStep::curve(steep)}});
  CHECK(o.open_cases.size() == 1);
}

TEST_CASE("complete intersection c2") {
  // Whitney expansion by hand for a few classical cases.
  CHECK(ci_c2(4, {5}).c2_coeff == 10);  // quintic
  CHECK(ci_c2(4, {5}).c1_coeff == 0);
  CHECK(ci_c2(4, {2}).c2_coeff == 4);
  CHECK(ci_c2(5, {3, 3}).c2_coeff == 6);
  CHECK(ci_c2(7, {2, 2, 2, 2}).c2_coeff == 4);
  for (int n = 4; n <= 8; ++n) {
    std::vector<int> d(static_cast<std::size_t>(n - 3), 1);
    for (int top = 1; top <= 6; ++top) {
      d.back() = top;
      const auto r = ci_c2(n, d);
      CHECK(r.positive);
      CHECK(r.c2_coeff > 0);
      const int sum = std::accumulate(d.begin(), d.end(), 0);
      CHECK(Rational(r.c2_coeff) == g_quadratic(n, Rational(sum)) + ci_bracket(n, d));
      CHECK(ci_bracket(n, d) >= 0);
    }
  }
  CHECK_THROWS_AS(ci_c2(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(ci_c2(5, {2}), std::invalid_argument);
  CHECK_THROWS_AS(ci_c2(4, {0}), std::invalid_argument);
}

TEST_CASE("the quadratic g at its boundary values") {
  for (int n = 4; n <= 12; ++n) {
    CHECK(g_quadratic(n, Rational(n - 3)) == 6);
    CHECK(g_quadratic(n, Rational(n - 1)) == Rational(2 * (n - 2), n - 3));
    // expanding the quadratic at x = n gives 3n / (2(n-3)), still positive
    CHECK(g_quadratic(n, Rational(n)) == Rational(3 * n, 2 * (n - 3)));
    CHECK(g_quadratic(n, Rational(n - 2)) > 3);
  }
  CHECK_THROWS_AS(g_quadratic(3, Rational(1)), std::invalid_argument);
}
