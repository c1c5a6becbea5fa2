#include "threefold/lattice_dynamics.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace threefold {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

Quad to_quad(const Rational& r) { return Quad(numerator(r)) / Quad(denominator(r)); }

Polynomial char_poly(const RationalMatrix& m) { return Polynomial(characteristic_polynomial(m)); }

// Exterior square: eigenvalues z_i z_j (i < j). A non-real eigenvalue z of
// maximal modulus contributes z conj(z) = rho^2.
RationalMatrix exterior_square(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  RationalMatrix s(pairs.size(), pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r)
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [k, l] = pairs[r];
      const auto [i, j] = pairs[c];
      s(r, c) = m(k, i) * m(l, j) - m(l, i) * m(k, j);
    }
  return s;
}

Polynomial substitute_square(const Polynomial& q) {
  std::vector<Rational> c(q.coefficients().size() * 2, Rational(0));
  for (std::size_t k = 0; k < q.coefficients().size(); ++k) c[2 * k] = q.coefficients()[k];
  return Polynomial(std::move(c));
}

AlgebraicReal larger(AlgebraicReal a, AlgebraicReal b) { return compare(a, b) >= 0 ? a : b; }

// rho^2 is the larger of (max |real eigenvalue|)^2 and the largest real root
// of the exterior-square characteristic polynomial; rho itself is then the
// largest real root of that polynomial in x^2.
AlgebraicReal radius_exact(const RationalMatrix& m, std::optional<AlgebraicReal> real_part) {
  if (m.rows() >= 2) {
    const Polynomial sf = square_free_part(substitute_square(char_poly(exterior_square(m))));
    const auto roots = isolate_real_roots(sf, Rational(1, 16));
    if (!roots.empty()) {
      AlgebraicReal c(sf, roots.back());
      real_part = real_part ? larger(*real_part, c) : c;
    }
  }
  if (!real_part) throw std::logic_error("no eigenvalue modulus found");
  return *real_part;
}

AlgebraicReal radius(const RationalMatrix& m, const Polynomial& p, const Rational& max_width) {
  if (m.rows() == 0) throw DimensionError("empty matrix");
  const Polynomial sf = square_free_part(p);
  const auto roots = isolate_real_roots(sf, Rational(1, 16));
  std::optional<AlgebraicReal> best;
  std::optional<AlgebraicReal> found;
  if (!roots.empty()) {
    best = larger(AlgebraicReal(sf, roots.back()), AlgebraicReal(sf, roots.front()).negated());
    // Certified when nothing lies outside the disk through hi and the only
    // roots outside the disk through lo are real.
    AlgebraicReal r = *best;
    if (!r.interval().exact() && r.lo() > 0) {
      const SturmChain chain(sf);
      for (int bits : {10, 40}) {
        r.refine(Rational(Integer(1), Integer(1) << bits));
        const auto outside_hi = count_roots_outside_disk(sf, r.hi());
        const auto outside_lo = count_roots_outside_disk(sf, r.lo());
        const int real = chain.count(r.lo(), r.hi()) + chain.count(-r.hi(), -r.lo());
        if (outside_hi && outside_lo && *outside_hi == 0 && *outside_lo == real) {
          found = r;
          break;
        }
      }
    }
  }
  AlgebraicReal r = found ? *found : radius_exact(m, best);
  r = r.with_minimal_polynomial();
  r.refine(max_width);
  return r;
}

Rational max_width_default() { return Rational(Integer(1), Integer(10000000000)); }

bool is_unimodular(const IntegerMatrix& a) {
  const Integer d = determinant(a);
  return d == 1 || d == -1;
}

IntegerMatrix integer_inverse(const IntegerMatrix& a) {
  if (!is_unimodular(a)) throw std::invalid_argument("matrix is not unimodular");
  return to_integer(*inverse(to_rational(a)));
}

bool has_root_in(const Polynomial& q, const AlgebraicReal& x) {
  if (q.degree() < 1) return false;
  if (x.interval().exact()) return q(x.lo()).is_zero();
  return SturmChain(square_free_part(q)).count(x.lo(), x.hi()) >= 1;
}

DegreeReport finish(AlgebraicReal l1, AlgebraicReal l2, Polynomial pa, Polynomial pb) {
  DegreeReport r{std::move(l1), std::move(l2), 0, false, std::move(pa), std::move(pb), false};
  r.entropy = std::log(std::max(r.lambda1.approx(), r.lambda2.approx()));
  r.primitive_hint = compare(r.lambda1, r.lambda2) != 0;
  r.log_concave = compare(r.lambda1.squared(), r.lambda2) >= 0;
  return r;
}

std::vector<Quad> solve(std::vector<std::vector<Quad>> m, std::vector<Quad> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    if (m[c][c] == 0) m[c][c] = Quad(1e-60);  // exact eigenvalue hit
    for (std::size_t r = c + 1; r < n; ++r) {
      const Quad f = m[r][c] / m[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Quad> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Quad s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return x;
}

void normalize(std::vector<Quad>& v) {
  Quad norm = 0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    norm += v[i] * v[i];
    if (abs(v[i]) > abs(v[big])) big = i;
  }
  norm = sqrt(norm);
  const Quad s = v[big] < 0 ? -norm : norm;
  for (auto& x : v) x /= s;
}

}  // namespace

std::vector<Rational> triple_tensor(const ThreefoldModel& model) {
  const std::size_t n = model.size();
  std::vector<Rational> t(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const CurveClass& c = model.mul2[i][j];
      for (std::size_t a = 0; a < n; ++a) {
        if (c[a].is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!model.pairing(k, a).is_zero()) t[(i * n + j) * n + k] += model.pairing(k, a) * c[a];
      }
    }
  return t;
}

std::vector<std::string> validate_action(const ThreefoldModel& model, const IntegerMatrix& a) {
  const std::size_t n = model.size();
  if (!a.square() || a.rows() != n) {
    throw DimensionError("action matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  std::vector<std::string> out;
  const Integer det = determinant(a);
  if (det != 1 && det != -1) out.push_back("det = " + to_string(det));

  const RationalMatrix ar = to_rational(a);
  const auto t = triple_tensor(model);
  // Apply A in each slot in turn: T'(i,j,k) = T(A e_i, A e_j, A e_k).
  auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  std::vector<Rational> s1(t.size()), s2(t.size()), s3(t.size());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r) {
        if (t[at(p, q, r)].is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!ar(r, k).is_zero()) s1[at(p, q, k)] += ar(r, k) * t[at(p, q, r)];
      }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t k = 0; k < n; ++k) {
        if (s1[at(p, q, k)].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!ar(q, j).is_zero()) s2[at(p, j, k)] += ar(q, j) * s1[at(p, q, k)];
      }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (s2[at(p, j, k)].is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
          if (!ar(p, i).is_zero()) s3[at(i, j, k)] += ar(p, i) * s2[at(p, j, k)];
      }
  for (std::size_t i = 0; i < n && out.size() < 2; ++i)
    for (std::size_t j = i; j < n; ++j) {
      bool done = false;
      for (std::size_t k = j; k < n; ++k) {
        if (s3[at(i, j, k)] == t[at(i, j, k)]) continue;
        const auto& b = model.divisor_basis;
        out.push_back("triple form not preserved: T(A" + b[i].name + ", A" + b[j].name + ", A" + b[k].name +
                      ") = " + to_string(s3[at(i, j, k)]) + " but T(" + b[i].name + ", " + b[j].name + ", " +
                      b[k].name + ") = " + to_string(t[at(i, j, k)]));
        done = true;
        break;
      }
      if (done) break;
    }

  if (ar * model.c1.coefficients() != model.c1.coefficients()) out.push_back("c1 not fixed: A c1 != c1");
  if (!det.is_zero()) {
    const AutomorphismAction act = make_action(model, a);
    if (act.curve_matrix * model.c2.coefficients() != model.c2.coefficients()) {
      out.push_back("c2 not fixed: B c2 != c2");
    }
  }
  return out;
}

AutomorphismAction make_action(const ThreefoldModel& model, const IntegerMatrix& a) {
  if (!a.square() || a.rows() != model.size()) throw DimensionError("action matrix does not match the model");
  const auto a_inv = inverse(to_rational(a));
  if (!a_inv) throw std::invalid_argument("action matrix is singular");
  const auto p_inv = inverse(model.pairing);
  if (!p_inv) throw std::invalid_argument("model pairing is degenerate");
  return {a, *p_inv * a_inv->transpose() * model.pairing};
}

AlgebraicReal spectral_radius(const IntegerMatrix& m, const Rational& max_width) {
  if (!m.square()) throw DimensionError("matrix must be square");
  return radius(to_rational(m), Polynomial::from_integers(characteristic_polynomial(m)), max_width);
}

DegreeReport dynamical_degrees(const ThreefoldModel& model, const IntegerMatrix& a) {
  const auto violations = validate_action(model, a);
  if (!violations.empty()) throw std::invalid_argument("action rejected: " + violations.front());
  const AutomorphismAction act = make_action(model, a);
  Polynomial pa = Polynomial::from_integers(characteristic_polynomial(a));
  Polynomial pb = char_poly(act.curve_matrix);
  AlgebraicReal l1 = radius(to_rational(a), pa, max_width_default());
  AlgebraicReal l2 = radius(act.curve_matrix, pb, max_width_default());
  return finish(std::move(l1), std::move(l2), std::move(pa), std::move(pb));
}

DegreeReport dynamical_degrees(const IntegerMatrix& a) {
  if (!a.square()) throw DimensionError("matrix must be square");
  const IntegerMatrix inv = integer_inverse(a);
  Polynomial pa = Polynomial::from_integers(characteristic_polynomial(a));
  Polynomial pb = Polynomial::from_integers(characteristic_polynomial(inv));
  AlgebraicReal l1 = radius(to_rational(a), pa, max_width_default());
  AlgebraicReal l2 = radius(to_rational(inv), pb, max_width_default());
  return finish(std::move(l1), std::move(l2), std::move(pa), std::move(pb));
}

std::string to_string(ObstructionResult::Status s) {
  switch (s) {
    case ObstructionResult::Status::consistent:
      return "consistent";
    case ObstructionResult::Status::not_unimodular:
      return "not unimodular";
    case ObstructionResult::Status::contradiction:
      return "contradiction";
  }
  return "?";
}

ObstructionResult rationality_obstruction(const std::vector<Integer>& char_poly) {
  if (char_poly.empty() || char_poly.back() != 1) throw std::invalid_argument("polynomial must be monic");
  ObstructionResult r;
  const Polynomial p = Polynomial::from_integers(char_poly);
  const Integer& c0 = char_poly.front();
  if (c0 != 1 && c0 != -1) {
    r.status = ObstructionResult::Status::not_unimodular;
    r.detail = "P(0) = " + to_string(c0);
    return r;
  }
  // Rational roots of a monic integer polynomial divide P(0) = +-1.
  for (const Rational& x : {Rational(-1), Rational(1)})
    if (p(x).is_zero()) r.rational_roots.push_back(x);
  for (const auto& x : r.rational_roots) {
    if (x > 1) {
      r.status = ObstructionResult::Status::contradiction;
      r.detail = "rational root " + to_string(x) + " > 1";
      return r;
    }
  }
  r.detail = r.rational_roots.empty() ? "no rational roots" : "rational roots have modulus 1";
  return r;
}

bool EigenclassReport::all_within() const {
  for (const auto* v : {&part1, &part2})
    for (const auto& r : *v)
      if (!r.within) return false;
  return true;
}

EigenclassReport eigenclass_constraints(const ThreefoldModel& model, const IntegerMatrix& a, double tolerance) {
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  EigenclassReport rep;
  rep.tolerance = tolerance;
  const DegreeReport deg = dynamical_degrees(model, a);
  if (compare(deg.lambda1, AlgebraicReal::rational(1 + Rational(tolerance))) <= 0) {
    rep.status = EigenclassReport::Status::entropy_zero;
    rep.message = "no conclusion: entropy zero regime";
    return rep;
  }
  AlgebraicReal lambda = deg.lambda1;
  if (!has_root_in(gcd(deg.char_poly_a, lambda.polynomial()), lambda)) {
    rep.status = EigenclassReport::Status::not_certified;
    rep.message = "eigenvector not certified: spectral radius is not a real eigenvalue of A";
    return rep;
  }
  if (has_root_in(gcd(deg.char_poly_a, deg.char_poly_a.derivative()), lambda)) {
    rep.status = EigenclassReport::Status::not_certified;
    rep.message = "eigenvector not certified: repeated leading eigenvalue";
    return rep;
  }
  lambda.refine(Rational(Integer(1), Integer(1) << 120));
  const Quad mu = to_quad((lambda.lo() + lambda.hi()) / 2);

  const std::size_t n = model.size();
  std::vector<std::vector<Quad>> shifted(n, std::vector<Quad>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) shifted[i][j] = Quad(a(i, j)) - (i == j ? mu : Quad(0));
  std::vector<Quad> v(n, Quad(1));
  for (int it = 0; it < 4; ++it) {
    v = solve(shifted, v);
    normalize(v);
  }
  for (const auto& x : v) rep.leading_eigenvector.push_back(static_cast<double>(x));

  const auto t = triple_tensor(model);
  std::vector<Quad> tq(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) tq[i] = to_quad(t[i]);
  std::vector<Quad> c1(n), c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    c1[i] = to_quad(model.c1[i]);
    c2[i] = to_quad(model.c2[i]);
  }
  auto tri = [&](const std::vector<Quad>& x, const std::vector<Quad>& y, const std::vector<Quad>& z) {
    Quad s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        for (std::size_t k = 0; k < n; ++k) s += tq[(i * n + j) * n + k] * x[i] * y[j] * z[k];
      }
    }
    return s;
  };
  auto unit = [n](std::size_t k) {
    std::vector<Quad> e(n, Quad(0));
    e[k] = 1;
    return e;
  };
  auto add = [&](std::vector<Residual>& out, std::string name, const Quad& value) {
    const double d = static_cast<double>(abs(value));
    out.push_back({std::move(name), d, d < tolerance});
  };

  Quad zeta_sq = 0;
  for (std::size_t k = 0; k < n; ++k) zeta_sq = std::max(zeta_sq, Quad(abs(tri(v, v, unit(k)))));
  add(rep.part1, "zeta^2", zeta_sq);
  add(rep.part1, "zeta^3", tri(v, v, v));
  add(rep.part1, "zeta^2.c1", tri(v, v, c1));
  add(rep.part1, "zeta.c1^2", tri(v, c1, c1));
  Quad zc2 = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < n; ++b) zc2 += v[i] * to_quad(model.pairing(i, b)) * c2[b];
  add(rep.part1, "zeta.c2", zc2);

  if (deg.primitive_hint) {
    Quad zc1 = 0;
    for (std::size_t k = 0; k < n; ++k) zc1 = std::max(zc1, Quad(abs(tri(v, c1, unit(k)))));
    add(rep.part2, "zeta.c1", zc1);
  }
  rep.message = rep.all_within() ? "leading eigenvector: all residuals within tolerance"
                                 : "leading eigenvector: some residuals exceed tolerance";
  return rep;
}

IntegerMatrix parse_integer_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Integer> row;
    std::string tok;
    while (ls >> tok) {
      const std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
      if (start == tok.size() || !std::all_of(tok.begin() + static_cast<long>(start), tok.end(), ::isdigit)) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": not an integer: " + tok);
      }
      row.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": ragged matrix row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  if (rows.size() != rows.front().size()) throw std::invalid_argument("matrix must be square");
  return IntegerMatrix::from_rows(rows);
}

}  // namespace threefold
