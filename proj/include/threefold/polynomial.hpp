#pragma once

#include "threefold/rational.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace threefold {

/// Univariate polynomial with exact rational coefficients, stored low-to-high
/// degree with no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial from_integers(const std::vector<Integer>& coefficients);
  static Polynomial monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  std::complex<long double> operator()(std::complex<long double> z) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Scaled to coprime integer coefficients with positive leading coefficient.
  Polynomial primitive() const;
  bool has_integer_coefficients() const;
  std::vector<Integer> integer_coefficients() const;

  /// p(-x).
  Polynomial reflect() const;
  /// p(c x).
  Polynomial scale_argument(const Rational& c) const;
  /// x^deg p(1/x).
  Polynomial reciprocal() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// "x^2 - x - 1" style rendering.
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Product of the distinct irreducible factors, made primitive.
Polynomial square_free_part(const Polynomial& p);

/// Polynomial whose roots are the squares of the roots of p (Graeffe step).
Polynomial graeffe(const Polynomial& p);

/// Sturm chain of a square-free polynomial.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& p);
  /// Sign variations at x.
  int variations(const Rational& x) const;
  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count(const Rational& lo, const Rational& hi) const;
  const Polynomial& polynomial() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

/// Upper bound on the modulus of every complex root (Cauchy).
Rational root_bound(const Polynomial& p);

/// A real root isolated in (lo, hi], or exactly lo when lo == hi.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// All real roots of a square-free polynomial, ascending, each isolated to width <= max_width.
std::vector<RootInterval> isolate_real_roots(const Polynomial& square_free, const Rational& max_width);

/// Shrinks an isolating interval of a square-free polynomial until width <= max_width.
RootInterval refine_root(const SturmChain& chain, RootInterval root, const Rational& max_width);

/// Number of roots (with multiplicity) strictly outside the disk |z| <= radius.
/// Returns nullopt when the Schur-Cohn recursion degenerates, which always
/// happens for a root on the circle (and occasionally without one).
std::optional<int> count_roots_outside_disk(const Polynomial& p, const Rational& radius);

/// Numerical complex roots of a square-free polynomial (Aberth iteration).
std::vector<std::complex<long double>> complex_roots(const Polynomial& square_free);

/// Exact test that `divisor` divides `p`.
bool divides(const Polynomial& divisor, const Polynomial& p);

}  // namespace threefold
