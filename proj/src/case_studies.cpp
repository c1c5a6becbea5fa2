#include "threefold/case_studies.hpp"

#include <stdexcept>

namespace threefold {
namespace {

constexpr int kGroupOrder = 4;        // order of sqrt(-1)
constexpr int kResolutionFiberChi = 3;  // chi(P^2)

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

IntegerMatrix product(const IntegerMatrix& a, const IntegerMatrix& b) { return to_integer(to_rational(a) * to_rational(b)); }

}  // namespace

Integer torus_fixed_points(const IntegerMatrix& a) {
  if (!a.square()) throw DimensionError("matrix must be square");
  const Integer d = determinant(a - IntegerMatrix::identity(a.rows()));
  if (d.is_zero()) throw std::invalid_argument("det(A - I) = 0: fixed points are not isolated");
  return abs_value(d);
}

IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!b.square()) throw DimensionError("blocks must be square");
    n += b.rows();
  }
  IntegerMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

UenoReport ueno_report() {
  const IntegerMatrix rotation = IntegerMatrix::from_rows({{0, -1}, {1, 0}});
  const IntegerMatrix a = block_diagonal({rotation, rotation, rotation});
  const std::size_t factors = a.rows() / 2;

  UenoReport r;
  r.fixed_points = torus_fixed_points(a);
  const Integer fixed_by_square = torus_fixed_points(product(a, a));
  r.period2_points = fixed_by_square - r.fixed_points;
  // Period-2 points pair up into orbits of size 2.
  r.singular_points = r.fixed_points + r.period2_points / 2;

  // Lefschetz number of the identity on the torus.
  const Integer chi_torus = determinant(IntegerMatrix::identity(a.rows()) - IntegerMatrix::identity(a.rows()));
  r.chi_open = (chi_torus - fixed_by_square) / kGroupOrder;
  r.chi_quotient = r.chi_open + r.singular_points;
  r.chi_resolution = r.chi_quotient - r.singular_points + r.singular_points * kResolutionFiberChi;

  // dz_i ^ dzbar_j picks up i * (-i) = 1, so every one of them is invariant.
  const Integer invariant_11 = Integer(factors) * Integer(factors);
  r.picard_resolution = invariant_11 + r.singular_points;
  r.identity_check = r.chi_resolution == 2 + 2 * r.picard_resolution;
  return r;
}

EulerBudget euler_budget(const Integer& chi0, const Integer& rho0, const Integer& chi, const Integer& rho) {
  if (rho < rho0) throw std::invalid_argument("target Picard number is below the base");
  EulerBudget b;
  b.num_blowups = rho - rho0;
  b.genus_slack = chi0 + 2 * b.num_blowups - chi;
  if (b.genus_slack < 0) {
    b.feasible = false;
    b.note = "infeasible: no tower of smooth blowups reaches the target Euler number";
  } else if (b.genus_slack % 2 != 0) {
    b.feasible = false;
    b.note = "infeasible: the slack is a sum of 2g and must be even";
  } else {
    b.all_centers_rational_forced = b.genus_slack.is_zero();
    b.note = b.all_centers_rational_forced ? "every curve center must be rational"
                                           : "total genus of curve centers is " + to_string(Integer(b.genus_slack / 2));
  }
  return b;
}

TowerAudit audit_tower(const BlowupTower& tower) {
  const auto models = tower.evaluate();
  const ThreefoldModel& base = models.front();
  const ThreefoldModel& top = models.back();
  TowerAudit a;
  a.budget = euler_budget(base.euler, base.picard, top.euler, top.picard);
  for (std::size_t k = 0; k < top.history.size(); ++k) {
    const BlowupRecord& rec = top.history[k];
    if (rec.kind != StepKind::curve) continue;
    a.twice_genus_sum += 2 * rec.genus;
    if (rec.genus == 0 && rec.c1_dot_center == -2) {
      a.open_cases.push_back("step " + std::to_string(k + 1) + ": rational center with c1.C = -2, unresolved");
    }
  }
  a.consistent = a.budget.genus_slack == a.twice_genus_sum;
  return a;
}

CiC2 ci_c2(int n, const std::vector<int>& degrees) {
  if (n < 4) throw std::invalid_argument("need n >= 4");
  if (static_cast<int>(degrees.size()) != n - 3) {
    throw std::invalid_argument("expected " + std::to_string(n - 3) + " degrees, got " + std::to_string(degrees.size()));
  }
  Integer sum = 0;
  for (int d : degrees) {
    if (d < 1) throw std::invalid_argument("degrees must be positive");
    sum += d;
  }
  CiC2 r;
  r.c1_coeff = Integer(n + 1) - sum;
  r.c2_coeff = complete_intersection_c2_coefficient(n, degrees);
  r.positive = r.c2_coeff > 0;
  return r;
}

Rational g_quadratic(int n, const Rational& x) {
  if (n <= 3) throw std::invalid_argument("g is defined for n >= 4");
  return Rational(n * (n + 1), 2) - (n + 1) * x + Rational(n - 2, 2 * (n - 3)) * x * x;
}

Rational ci_bracket(int n, const std::vector<int>& degrees) {
  if (n <= 3) throw std::invalid_argument("need n >= 4");
  Integer sum = 0, pairs = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    sum += degrees[i];
    for (std::size_t j = i + 1; j < degrees.size(); ++j) pairs += Integer(degrees[i]) * degrees[j];
  }
  return Rational(n - 4, 2 * (n - 3)) * Rational(sum * sum) - Rational(pairs);
}

}  // namespace threefold
