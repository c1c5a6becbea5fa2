#pragma once

#include "threefold/algebraic.hpp"
#include "threefold/intersection_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace threefold {

/// A on the divisor basis and the induced B = P^-1 A^-T P on the curve basis.
struct AutomorphismAction {
  IntegerMatrix divisor_matrix;
  RationalMatrix curve_matrix;
};

/// Every violated lattice condition; empty when A is acceptable.
/// Throws DimensionError unless A is square of size picard.
std::vector<std::string> validate_action(const ThreefoldModel& model, const IntegerMatrix& a);

/// Throws std::invalid_argument when A is not invertible over the integers.
AutomorphismAction make_action(const ThreefoldModel& model, const IntegerMatrix& a);

/// Spectral radius of an integer matrix as a certified real algebraic number.
/// The interval has width <= max_width.
AlgebraicReal spectral_radius(const IntegerMatrix& m, const Rational& max_width);

struct DegreeReport {
  AlgebraicReal lambda1;
  AlgebraicReal lambda2;
  double entropy = 0;
  bool primitive_hint = false;
  Polynomial char_poly_a;  // det(xI - A)
  Polynomial char_poly_b;  // det(xI - B), or of A^-1 in raw mode
  /// lambda1^2 >= lambda2, decided exactly.
  bool log_concave = false;
};

/// Model mode. Throws std::invalid_argument when validate_action reports anything.
DegreeReport dynamical_degrees(const ThreefoldModel& model, const IntegerMatrix& a);

/// Raw mode: any unimodular A, with lambda2 read from A^-1.
DegreeReport dynamical_degrees(const IntegerMatrix& a);

struct ObstructionResult {
  enum class Status { consistent, not_unimodular, contradiction };
  Status status = Status::consistent;
  std::vector<Rational> rational_roots;
  std::string detail;
};

/// Integer coefficients, low-to-high. Throws std::invalid_argument for a
/// non-monic input.
ObstructionResult rationality_obstruction(const std::vector<Integer>& char_poly);

std::string to_string(ObstructionResult::Status s);

struct Residual {
  std::string name;
  double value = 0;
  bool within = false;
};

struct EigenclassReport {
  enum class Status { checked, entropy_zero, not_certified };
  Status status = Status::checked;
  std::string message;
  /// Unit-length leading eigenvector of A, largest entry positive.
  std::vector<double> leading_eigenvector;
  double tolerance = 1e-8;
  std::vector<Residual> part1;
  /// Filled only when lambda1 != lambda2 is certified.
  std::vector<Residual> part2;

  bool all_within() const;
};

EigenclassReport eigenclass_constraints(const ThreefoldModel& model, const IntegerMatrix& a, double tolerance = 1e-8);

/// Triple products T[i][j][k] of the basis divisors, flattened.
std::vector<Rational> triple_tensor(const ThreefoldModel& model);

/// Whitespace-separated integer rows, blank lines and '#' comments ignored.
/// Throws std::invalid_argument on malformed or ragged input.
IntegerMatrix parse_integer_matrix(const std::string& text);

}  // namespace threefold
