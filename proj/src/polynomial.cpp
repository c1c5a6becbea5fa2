#include "threefold/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace threefold {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::from_integers(const std::vector<Integer>& coefficients) {
  std::vector<Rational> c;
  c.reserve(coefficients.size());
  for (const auto& v : coefficients) c.emplace_back(v);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<long double> Polynomial::operator()(std::complex<long double> z) const {
  std::complex<long double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + std::complex<long double>(it->convert_to<long double>(), 0.0L);
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return (1 / leading()) * (*this);
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  Integer lcm_den = 1;
  for (const auto& c : coeffs_) {
    const Integer d = denominator(c);
    lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, d) * d;
  }
  Integer g = 0;
  for (const auto& c : coeffs_) {
    const Integer n = numerator(c) * (lcm_den / denominator(c));
    g = boost::multiprecision::gcd(g, n);
  }
  Rational scale(lcm_den, g);
  if (leading() < 0) scale = -scale;
  return scale * (*this);
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

std::vector<Integer> Polynomial::integer_coefficients() const {
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_integer(c));
  return out;
}

Polynomial Polynomial::reflect() const {
  std::vector<Rational> c = coeffs_;
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scale_argument(const Rational& s) const {
  std::vector<Rational> c = coeffs_;
  Rational power = 1;
  for (auto& v : c) {
    v *= power;
    power *= s;
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::reciprocal() const {
  std::vector<Rational> c = coeffs_;
  std::reverse(c.begin(), c.end());
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coefficient(k) + b.coefficient(k);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coefficient(k) - b.coefficient(k);
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  std::vector<Rational> c = p.coeffs_;
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool show_coeff = mag != 1 || k == 0;
    if (show_coeff) out += to_string(mag);
    if (k > 0) {
      if (show_coeff) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k)] / lead;
    if (factor.is_zero()) continue;
    quot[static_cast<std::size_t>(k - db)] = factor;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k - db + j)] -= factor * b.coefficient(static_cast<std::size_t>(j));
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).remainder;
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive();
  }
  return x.is_zero() ? x : x.primitive();
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.primitive();
  const Polynomial g = gcd(p, p.derivative());
  return divmod(p, g).quotient.primitive();
}

Polynomial graeffe(const Polynomial& p) {
  std::vector<Rational> even;
  std::vector<Rational> odd;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    (k % 2 == 0 ? even : odd).push_back(p.coefficients()[k]);
  }
  const Polynomial e(even);
  const Polynomial o(odd);
  Polynomial g = e * e - Polynomial({Rational(0), Rational(1)}) * o * o;
  if (p.degree() % 2 == 1) g = Rational(-1) * g;
  return g;
}

SturmChain::SturmChain(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    const Polynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern.
    const Rational lead = r.leading();
    chain_.push_back((-1 / (lead < 0 ? Rational(-lead) : lead)) * r);
  }
}

int SturmChain::variations(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const Rational v = q(x);
    const int s = v.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmChain::count(const Rational& lo, const Rational& hi) const {
  return variations(lo) - variations(hi);
}

Rational root_bound(const Polynomial& p) {
  if (p.degree() <= 0) return 1;
  Rational worst = 0;
  const Rational lead = p.leading();
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = p.coefficient(static_cast<std::size_t>(k)) / lead;
    if (r < 0) r = -r;
    worst = std::max(worst, r);
  }
  return 1 + worst;
}

RootInterval refine_root(const SturmChain& chain, RootInterval root, const Rational& max_width) {
  const Polynomial& p = chain.polynomial();
  while (!root.exact() && root.hi - root.lo > max_width) {
    if (p(root.hi) == 0) {
      root.lo = root.hi;
      break;
    }
    const Rational mid = (root.lo + root.hi) / 2;
    if (p(mid) == 0) {
      root.lo = root.hi = mid;
      break;
    }
    if (chain.count(root.lo, mid) == 1) {
      root.hi = mid;
    } else {
      root.lo = mid;
    }
  }
  if (!root.exact() && p(root.hi) == 0) root.lo = root.hi;
  return root;
}

std::vector<RootInterval> isolate_real_roots(const Polynomial& square_free, const Rational& max_width) {
  std::vector<RootInterval> roots;
  if (square_free.degree() <= 0) return roots;
  const SturmChain chain(square_free);
  const Rational bound = root_bound(square_free);
  std::vector<RootInterval> pending{{-bound, bound}};
  while (!pending.empty()) {
    const RootInterval iv = pending.back();
    pending.pop_back();
    const int n = chain.count(iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      roots.push_back(refine_root(chain, iv, max_width));
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / 2;
    pending.push_back({iv.lo, mid});
    pending.push_back({mid, iv.hi});
  }
  std::sort(roots.begin(), roots.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  return roots;
}

namespace {

// Zeros strictly inside the unit disk, via the Schur-Cohn transform
// T p = a0 p - an p*. Zeros on the circle survive every transform and
// eventually force a0^2 == an^2, which we report as degenerate.
std::optional<int> count_inside_unit_disk(Polynomial p) {
  int flipped_total = 0;
  int sign = 1;  // inside(p_original) = flipped_total + sign * inside(p_current)
  while (true) {
    const int n = p.degree();
    if (n <= 0) return flipped_total;
    const Rational a0 = p.coefficient(0);
    const Rational an = p.leading();
    const Rational delta = a0 * a0 - an * an;
    if (delta == 0) return std::nullopt;
    Polynomial t = a0 * p - an * p.reciprocal();
    if (t.is_zero()) return std::nullopt;
    if (delta < 0) {
      // inside(p) = n - inside(Tp)
      flipped_total += sign * n;
      sign = -sign;
    }
    p = t.primitive();
  }
}

}  // namespace

std::optional<int> count_roots_outside_disk(const Polynomial& p, const Rational& radius) {
  if (radius <= 0) throw std::invalid_argument("disk radius must be positive");
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  const auto inside = count_inside_unit_disk(p.scale_argument(radius).primitive());
  if (!inside) return std::nullopt;
  return p.degree() - *inside;
}

std::vector<std::complex<long double>> complex_roots(const Polynomial& square_free) {
  using C = std::complex<long double>;
  const int n = square_free.degree();
  std::vector<C> z;
  if (n <= 0) return z;
  const Polynomial d = square_free.derivative();
  const long double radius = root_bound(square_free).convert_to<long double>();
  for (int k = 0; k < n; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L;
    z.push_back(std::polar(radius * 0.9L, angle));
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      const C pv = square_free(z[static_cast<std::size_t>(k)]);
      const C dv = d(z[static_cast<std::size_t>(k)]);
      if (pv == C(0)) continue;
      const C ratio = pv / dv;
      C sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
      }
      const C step = ratio / (1.0L - ratio * sum);
      z[static_cast<std::size_t>(k)] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[static_cast<std::size_t>(k)])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

bool divides(const Polynomial& divisor, const Polynomial& p) {
  return divmod(p, divisor).remainder.is_zero();
}

}  // namespace threefold
