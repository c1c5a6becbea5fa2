#pragma once

#include "threefold/blowup.hpp"
#include "threefold/linear_program.hpp"

#include <string>
#include <vector>

namespace threefold {

enum class Condition { A, B };
enum class VerdictStatus { holds_by_theorem, unknown, hypotheses_unverified };

std::string to_string(Condition c);
std::string to_string(VerdictStatus s);

struct Witness {
  std::string key;
  std::string value;
};

struct TraceEntry {
  int step = 0;  // 1-based step of the tower; 0 for the base
  std::string theorem;
  std::string case_tag;
  std::vector<Witness> witnesses;
};

struct ConditionVerdict {
  Condition condition = Condition::A;
  VerdictStatus status = VerdictStatus::hypotheses_unverified;
  /// Tag that established the condition on the base ("T3", "T4" or "asserted").
  std::string seed;
  std::vector<TraceEntry> trace;
  std::vector<std::string> notes;

  /// "T5,T5,T7".
  std::string trace_tags() const;
};

/// Flags a user may put on a custom base to assert a condition outright.
inline const char* kAssertConditionA = "condition-A";
inline const char* kAssertConditionB = "condition-B";

ConditionVerdict seed_verdict(const ThreefoldModel& base, Condition condition);

/// One inductive step. A verdict that does not hold is returned unchanged.
ConditionVerdict propagate_condition(const ConditionVerdict& verdict, const ThreefoldModel& before,
                                     const BlowupStep& step);

ConditionVerdict check_tower(const BlowupTower& tower, Condition condition);

struct Picard1Result {
  ConditionVerdict a;
  ConditionVerdict b;
  std::vector<Rational> alphas;
};

/// Points first, then curves. Throws std::invalid_argument when a curve has
/// H.C <= 0 or a point follows a curve.
Picard1Result check_picard1(const BlowupTower& tower);

/// Points first, then disjoint curves. Throws std::invalid_argument on a point after a curve.
ConditionVerdict check_c2_positive_tower(const BlowupTower& tower, Condition condition);

struct P3LinesResult {
  int n = 0;
  bool forced = false;
  ConstraintSystem system;
  RationalVector objective;
  LpResult lp;
  /// Engine-derived coefficients of zeta.c2 and zeta.c1^2, for inspection.
  LinearForm zeta_c2;
  LinearForm zeta_c1_squared;

  std::string verdict_text() const;
};

/// n points of P^3 in general position plus all connecting lines.
ConstraintSystem p3_points_lines_system(int n, LinearForm* zeta_c2 = nullptr, LinearForm* zeta_c1_squared = nullptr);
P3LinesResult check_p3_points_lines(int n);

struct GeneralizedConfig {
  int n = 0;  // number of points blown up in P^3
  std::vector<int> degrees;
  std::vector<int> genera;
  /// e_dot_d[l][j] = E_l . D_j.
  std::vector<std::vector<Rational>> e_dot_d;
  Rational lambda = 1;
};

struct GeneralizedResult {
  bool holds = false;
  bool row_sums_ok = false;
  bool ratio_ok = false;
  bool per_curve_ok = false;
  Rational gamma = 0;
  std::vector<Rational> c1_dot_d;
};

/// Checks the three hypotheses of the generalized points-and-curves criterion.
/// Throws std::invalid_argument when lambda <= 0 or the table is mis-sized.
GeneralizedResult check_generalized(const GeneralizedConfig& config);

/// The points-and-lines configuration with lambda = n - 1.
GeneralizedConfig lines_configuration(int n);

}  // namespace threefold
