#pragma once

#include "threefold/blowup.hpp"

#include <string>
#include <vector>

namespace threefold {

/// Number of fixed points of z -> Az on R^m / Z^m, which is |det(A - I)|.
/// Throws std::invalid_argument when det(A - I) = 0.
Integer torus_fixed_points(const IntegerMatrix& a);

IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks);

struct UenoReport {
  Integer fixed_points;
  Integer period2_points;
  Integer singular_points;
  Integer chi_open;  // Euler number of the free part of the quotient
  Integer chi_quotient;
  Integer chi_resolution;
  Integer picard_resolution;
  bool identity_check = false;  // chi = 2 + 2 rho
};

/// E^3 modulo the diagonal action of sqrt(-1), resolved by one P^2 per
/// singular point. The rotation matrix on a single curve is the only input.
UenoReport ueno_report();

struct EulerBudget {
  Integer num_blowups;
  Integer genus_slack;  // sum of 2g over the curve centers
  bool feasible = true;
  bool all_centers_rational_forced = false;
  std::string note;
};

/// Throws std::invalid_argument when rho < rho0.
EulerBudget euler_budget(const Integer& chi0, const Integer& rho0, const Integer& chi, const Integer& rho);

struct TowerAudit {
  EulerBudget budget;
  Integer twice_genus_sum;
  bool consistent = false;  // genus_slack == twice_genus_sum
  std::vector<std::string> open_cases;
};

/// Budget of a concrete tower from its base to its top model, checked
/// against the genera of its centers. Rational centers with c1.C = -2 are
/// listed as unresolved.
TowerAudit audit_tower(const BlowupTower& tower);

struct CiC2 {
  Integer c1_coeff;
  Integer c2_coeff;
  bool positive = false;
};

/// Complete intersection of n - 3 hypersurfaces in P^n. Throws
/// std::invalid_argument for n < 4, a wrong number of degrees, or a
/// non-positive degree.
CiC2 ci_c2(int n, const std::vector<int>& degrees);

/// n(n+1)/2 - (n+1)x + (n-2)/(2(n-3)) x^2. Throws std::invalid_argument for n <= 3.
Rational g_quadratic(int n, const Rational& x);

/// ((n-4)/(2(n-3))) (sum d)^2 - sum_{i<j} d_i d_j.
Rational ci_bracket(int n, const std::vector<int>& degrees);

}  // namespace threefold
