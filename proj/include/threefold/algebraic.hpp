#pragma once

#include "threefold/polynomial.hpp"

#include <optional>

namespace threefold {

/// A real algebraic number: a square-free integer polynomial together with an
/// interval (lo, hi] containing exactly one of its roots, or lo == hi when the
/// number is that rational endpoint.
class AlgebraicReal {
 public:
  AlgebraicReal(Polynomial square_free, RootInterval interval);
  static AlgebraicReal rational(const Rational& value);

  const Polynomial& polynomial() const { return poly_; }
  const RootInterval& interval() const { return interval_; }
  Rational lo() const { return interval_.lo; }
  Rational hi() const { return interval_.hi; }
  Rational width() const { return interval_.hi - interval_.lo; }

  void refine(const Rational& max_width);
  double approx() const;

  /// The same number presented by the minimal polynomial; found by
  /// enumerating conjugate-closed root subsets and confirmed by exact division.
  AlgebraicReal with_minimal_polynomial() const;

  AlgebraicReal squared() const;
  AlgebraicReal negated() const;

  /// Exact comparison: -1, 0 or 1.
  friend int compare(AlgebraicReal a, AlgebraicReal b);

 private:
  bool contains_root_of(const Polynomial& q, const Rational& lo, const Rational& hi) const;
  Polynomial poly_;
  RootInterval interval_;
};

/// Minimal polynomial (monic, integer) of the real root isolated by `root`
/// among the roots of the square-free integer polynomial `p`. Falls back to
/// `p` itself when the degree exceeds the enumeration limit.
Polynomial minimal_polynomial_of_root(const Polynomial& p, const RootInterval& root);

}  // namespace threefold
