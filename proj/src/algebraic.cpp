#include "threefold/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace threefold {
namespace {

constexpr int kMaxEnumerationDegree = 16;

using Complex = std::complex<long double>;

// Real polynomial factor for one root item: (x - r) or (x - z)(x - conj z).
std::vector<long double> item_factor(const Complex& z, bool real_root) {
  if (real_root) return {-z.real(), 1.0L};
  return {std::norm(z), -2.0L * z.real(), 1.0L};
}

std::vector<long double> multiply(const std::vector<long double>& a, const std::vector<long double>& b) {
  std::vector<long double> c(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::optional<Polynomial> round_to_integer_polynomial(const std::vector<long double>& c) {
  std::vector<Rational> out;
  out.reserve(c.size());
  for (long double v : c) {
    const long double r = std::round(v);
    if (std::fabs(v - r) > 1e-6L * std::max(1.0L, std::fabs(v))) return std::nullopt;
    out.emplace_back(Integer(static_cast<long long>(r)));
  }
  return Polynomial(std::move(out));
}

bool has_root_in(const Polynomial& q, const RootInterval& iv) {
  if (iv.exact()) return q(iv.lo) == 0;
  const Polynomial sf = square_free_part(q);
  return SturmChain(sf).count(iv.lo, iv.hi) >= 1;
}

}  // namespace

Polynomial minimal_polynomial_of_root(const Polynomial& p, const RootInterval& root) {
  if (root.exact()) {
    return Polynomial({-root.lo, Rational(1)}).primitive();
  }
  const Polynomial sf = square_free_part(p);
  if (sf.degree() <= 1) return sf;
  if (sf.degree() > kMaxEnumerationDegree || sf.leading() != 1) return sf;

  const auto roots = complex_roots(sf);
  const auto real_count = static_cast<std::size_t>(isolate_real_roots(sf, Rational(1)).size());

  // The real_count roots closest to the real axis are the real ones.
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(roots[a].imag()) < std::fabs(roots[b].imag());
  });
  std::vector<Complex> reals;
  std::vector<Complex> upper;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Complex z = roots[order[k]];
    if (k < real_count) {
      reals.emplace_back(z.real(), 0.0L);
    } else if (z.imag() > 0) {
      upper.push_back(z);
    }
  }

  const long double target = ((root.lo + root.hi) / 2).convert_to<long double>();
  std::size_t target_index = 0;
  for (std::size_t i = 1; i < reals.size(); ++i) {
    if (std::fabs(reals[i].real() - target) < std::fabs(reals[target_index].real() - target)) target_index = i;
  }
  const Complex anchor = reals.empty() ? Complex(target, 0) : reals[target_index];

  struct Item {
    Complex z;
    bool real;
    int degree;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < reals.size(); ++i) {
    if (i != target_index) items.push_back({reals[i], true, 1});
  }
  for (const auto& z : upper) items.push_back({z, false, 2});

  const std::size_t masks = std::size_t{1} << items.size();
  std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(sf.degree()) + 1);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    int deg = 1;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask & (std::size_t{1} << i)) deg += items[i].degree;
    if (deg <= sf.degree()) by_degree[static_cast<std::size_t>(deg)].push_back(mask);
  }
  for (int deg = 1; deg < sf.degree(); ++deg) {
    for (std::size_t mask : by_degree[static_cast<std::size_t>(deg)]) {
      std::vector<long double> c = item_factor(anchor, true);
      for (std::size_t i = 0; i < items.size(); ++i)
        if (mask & (std::size_t{1} << i)) c = multiply(c, item_factor(items[i].z, items[i].real));
      const auto candidate = round_to_integer_polynomial(c);
      if (!candidate) continue;
      if (!divides(*candidate, sf)) continue;
      if (!has_root_in(*candidate, root)) continue;
      return *candidate;
    }
  }
  return sf;
}

AlgebraicReal::AlgebraicReal(Polynomial square_free, RootInterval interval)
    : poly_(std::move(square_free)), interval_(std::move(interval)) {
  if (interval_.hi < interval_.lo) throw std::invalid_argument("empty isolating interval");
}

AlgebraicReal AlgebraicReal::rational(const Rational& value) {
  return AlgebraicReal(Polynomial({-value, Rational(1)}).primitive(), RootInterval{value, value});
}

void AlgebraicReal::refine(const Rational& max_width) {
  if (interval_.exact()) return;
  interval_ = refine_root(SturmChain(poly_), interval_, max_width);
}

double AlgebraicReal::approx() const { return to_double((interval_.lo + interval_.hi) / 2); }

AlgebraicReal AlgebraicReal::with_minimal_polynomial() const {
  if (interval_.exact()) return rational(interval_.lo);
  return AlgebraicReal(minimal_polynomial_of_root(poly_, interval_), interval_);
}

AlgebraicReal AlgebraicReal::negated() const {
  if (interval_.exact()) return rational(-interval_.lo);
  AlgebraicReal self = *this;
  const SturmChain chain(self.poly_);
  // Flipping (lo, hi] gives [-hi, -lo); make sure neither endpoint is a root.
  while (!self.interval_.exact() && (self.poly_(self.interval_.lo) == 0 || self.poly_(self.interval_.hi) == 0)) {
    self.interval_ = refine_root(chain, self.interval_, self.width() / 2);
  }
  if (self.interval_.exact()) return rational(-self.interval_.lo);
  return AlgebraicReal(self.poly_.reflect().primitive(), RootInterval{-self.interval_.hi, -self.interval_.lo});
}

AlgebraicReal AlgebraicReal::squared() const {
  if (interval_.exact()) return rational(interval_.lo * interval_.lo);
  AlgebraicReal self = *this;
  const SturmChain chain(self.poly_);
  while (!self.interval_.exact() && self.interval_.lo < 0 && self.interval_.hi > 0) {
    if (self.poly_(Rational(0)) == 0 && chain.count(self.interval_.lo, Rational(0)) == 1) {
      return rational(0);
    }
    self.interval_ = refine_root(chain, self.interval_, self.width() / 2);
  }
  if (self.interval_.exact()) return rational(self.interval_.lo * self.interval_.lo);
  if (self.interval_.hi <= 0) return self.negated().squared();

  const Polynomial q = square_free_part(graeffe(self.poly_));
  const SturmChain qchain(q);
  while (true) {
    const RootInterval sq{self.interval_.lo * self.interval_.lo, self.interval_.hi * self.interval_.hi};
    if (qchain.count(sq.lo, sq.hi) == 1) return AlgebraicReal(q, sq);
    self.interval_ = refine_root(chain, self.interval_, self.width() / 2);
    if (self.interval_.exact()) return rational(self.interval_.lo * self.interval_.lo);
  }
}

bool AlgebraicReal::contains_root_of(const Polynomial& q, const Rational& lo, const Rational& hi) const {
  if (lo >= hi) return false;
  return has_root_in(q, RootInterval{lo, hi});
}

int compare(AlgebraicReal a, AlgebraicReal b) {
  for (int iter = 0; iter < 4000; ++iter) {
    const auto& ia = a.interval_;
    const auto& ib = b.interval_;
    if (ia.exact() && ib.exact()) return ia.lo < ib.lo ? -1 : (ia.lo > ib.lo ? 1 : 0);
    if (ia.hi < ib.lo || (ia.hi == ib.lo && !ib.exact())) return -1;
    if (ib.hi < ia.lo || (ib.hi == ia.lo && !ia.exact())) return 1;
    if (ia.exact() && ia.lo > ib.lo && ia.lo <= ib.hi && b.poly_(ia.lo) == 0) return 0;
    if (ib.exact() && ib.lo > ia.lo && ib.lo <= ia.hi && a.poly_(ib.lo) == 0) return 0;
    if (!ia.exact() && !ib.exact()) {
      const Polynomial g = gcd(a.poly_, b.poly_);
      if (g.degree() >= 1 && a.contains_root_of(g, std::max(ia.lo, ib.lo), std::min(ia.hi, ib.hi))) return 0;
    }
    if (!ia.exact()) a.refine(a.width() / 2);
    if (!ib.exact()) b.refine(b.width() / 2);
  }
  throw std::runtime_error("algebraic comparison did not terminate");
}

}  // namespace threefold
