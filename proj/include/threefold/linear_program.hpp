#pragma once

#include "threefold/linalg.hpp"

#include <string>
#include <vector>

namespace threefold {

/// coeffs . x + constant, compared against zero.
struct LinearForm {
  RationalVector coeffs;
  Rational constant = 0;
  std::string label;

  Rational evaluate(const RationalVector& x) const;
};

/// Named free variables with equalities (form = 0) and inequalities (form >= 0).
struct ConstraintSystem {
  std::vector<std::string> variables;
  std::vector<LinearForm> equalities;
  std::vector<LinearForm> inequalities;

  std::size_t index(const std::string& name) const;
  LinearForm form(std::string label) const;
  void add_equality(LinearForm f);
  void add_inequality(LinearForm f);
};

enum class LpStatus { optimal, unbounded, infeasible };

/// Multipliers z (free, one per equality) and y >= 0 (one per inequality).
/// For `optimal`: objective + sum z_i g_i + sum y_j h_j is identically `bound`,
/// so objective <= bound on the polyhedron.
/// For `infeasible`: sum z_i g_i + sum y_j h_j is identically `bound` < 0.
struct Certificate {
  RationalVector equality_multipliers;
  RationalVector inequality_multipliers;
  Rational bound = 0;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational maximum = 0;
  RationalVector point;
  Certificate certificate;
  /// unbounded: a direction keeping every constraint and increasing the objective.
  RationalVector ray;
};

/// Exact two-phase simplex with Bland's rule.
LpResult rational_feasible(const ConstraintSystem& system, const RationalVector& objective);
LpResult rational_feasible(const ConstraintSystem& system, const std::string& objective_variable);

/// Re-checks the certificate (or ray) of a result against the system.
bool replay(const ConstraintSystem& system, const RationalVector& objective, const LpResult& result);

/// One "label: p/q" line per constraint with a non-zero multiplier, then "bound: p/q".
std::string serialize_certificate(const ConstraintSystem& system, const Certificate& certificate);

}  // namespace threefold
