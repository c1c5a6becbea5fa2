#include "threefold/intersection_ring.hpp"

#include <algorithm>
#include <sstream>

namespace threefold {
namespace {

BasisElement base_element(std::string name, BasisKind kind) {
  return BasisElement{std::move(name), kind, Origin::base, "", 0};
}

CurveClass curve_of(std::size_t n, std::initializer_list<std::pair<std::size_t, int>> entries) {
  CurveClass c(n);
  for (const auto& [i, v] : entries) c[i] = v;
  return c;
}

ThreefoldModel rank_one(const std::string& label, const Rational& degree, const Rational& c1, const Rational& c2,
                        const Integer& euler) {
  ThreefoldModel m;
  m.label = label;
  m.base_name = label;
  m.divisor_basis = {base_element("h", BasisKind::divisor)};
  m.curve_basis = {base_element("l", BasisKind::curve)};
  m.mul2 = {{CurveClass(RationalVector{degree})}};
  m.pairing = RationalMatrix::from_rows({{Rational(1)}});
  m.c1 = DivisorClass(RationalVector{c1});
  m.c2 = CurveClass(RationalVector{c2});
  m.euler = euler;
  m.picard = 1;
  m.base_flags = {kPicardRankOne, kC2MovablePositive};
  return m;
}

ThreefoldModel make_p2xp1() {
  // A = P2 x pt, B = P1 x P1 (line times P1); f1 = line x pt, f2 = pt x P1.
  ThreefoldModel m;
  m.label = "p2xp1";
  m.base_name = "p2xp1";
  m.divisor_basis = {base_element("A", BasisKind::divisor), base_element("B", BasisKind::divisor)};
  m.curve_basis = {base_element("f1", BasisKind::curve), base_element("f2", BasisKind::curve)};
  m.mul2 = {{CurveClass(2), curve_of(2, {{0, 1}})}, {curve_of(2, {{0, 1}}), curve_of(2, {{1, 1}})}};
  m.pairing = RationalMatrix::from_rows({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  m.c1 = DivisorClass(RationalVector{2, 3});
  m.c2 = CurveClass(RationalVector{6, 3});
  m.euler = 6;
  m.picard = 2;
  m.base_flags = {kC2MovablePositive};
  return m;
}

ThreefoldModel make_p1cubed() {
  ThreefoldModel m;
  m.label = "p1cubed";
  m.base_name = "p1cubed";
  for (int i = 1; i <= 3; ++i) {
    m.divisor_basis.push_back(base_element("H" + std::to_string(i), BasisKind::divisor));
    m.curve_basis.push_back(base_element("l" + std::to_string(i), BasisKind::curve));
  }
  m.mul2.assign(3, std::vector<CurveClass>(3, CurveClass(3)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) m.mul2[i][j][3 - i - j] = 1;
  m.pairing = RationalMatrix::identity(3);
  m.c1 = DivisorClass(RationalVector{2, 2, 2});
  m.c2 = CurveClass(RationalVector{4, 4, 4});
  m.euler = 8;
  m.picard = 3;
  m.base_flags = {kC2MovablePositive};
  return m;
}

// Coefficients of (1+h)^(n+1) / prod(1 + d h) up to h^3.
std::vector<Integer> ci_chern_series(int n, const std::vector<int>& degrees) {
  std::vector<Integer> c(4, 0);
  Integer binom = 1;
  for (int k = 0; k <= 3; ++k) {
    c[static_cast<std::size_t>(k)] = binom;
    binom = binom * (n + 1 - k) / (k + 1);
  }
  for (int d : degrees) {
    // multiply by 1 - d h + d^2 h^2 - d^3 h^3
    std::vector<Integer> next(4, 0);
    for (int i = 0; i <= 3; ++i) {
      Integer p = 1;
      for (int j = 0; i + j <= 3; ++j) {
        next[static_cast<std::size_t>(i + j)] += c[static_cast<std::size_t>(i)] * ((j % 2 == 0) ? p : Integer(-p));
        p *= d;
      }
    }
    c = std::move(next);
  }
  return c;
}

ThreefoldModel make_complete_intersection(int n, const std::vector<int>& degrees) {
  std::vector<std::string> errors;
  if (n < 4) errors.push_back("complete intersection needs n >= 4");
  if (static_cast<int>(degrees.size()) != n - 3) errors.push_back("complete intersection needs exactly n-3 degrees");
  for (int d : degrees)
    if (d < 1) errors.push_back("degrees must be positive");
  if (!errors.empty()) throw ValidationError(errors);

  Integer deg = 1;
  int sum = 0;
  for (int d : degrees) {
    deg *= d;
    sum += d;
  }
  const auto series = ci_chern_series(n, degrees);
  std::ostringstream label;
  label << "ci(" << n << ";";
  for (std::size_t i = 0; i < degrees.size(); ++i) label << (i ? "," : "") << degrees[i];
  label << ")";
  ThreefoldModel m = rank_one(label.str(), Rational(deg), Rational(n + 1 - sum),
                              Rational(complete_intersection_c2_coefficient(n, degrees) * deg), series[3] * deg);
  m.base_name = m.label;
  return m;
}

ThreefoldModel make_custom(const CustomTables& t) {
  std::vector<std::string> errors;
  const std::size_t n = t.divisor_names.size();
  if (t.curve_names.size() != n) errors.push_back("divisor and curve bases must have equal size");
  if (t.products.size() != n) errors.push_back("product table must have one row per divisor");
  for (const auto& row : t.products) {
    if (row.size() != n) errors.push_back("product table row has wrong length");
    for (const auto& entry : row)
      if (entry.size() != t.curve_names.size()) errors.push_back("product entry has wrong length");
  }
  if (t.pairing.size() != n) errors.push_back("pairing table must have one row per divisor");
  for (const auto& row : t.pairing)
    if (row.size() != t.curve_names.size()) errors.push_back("pairing row has wrong length");
  if (t.c1.size() != n) errors.push_back("c1 has wrong length");
  if (t.c2.size() != t.curve_names.size()) errors.push_back("c2 has wrong length");
  if (!errors.empty()) throw ValidationError(errors);

  ThreefoldModel m;
  m.label = t.label;
  m.base_name = "custom";
  for (const auto& name : t.divisor_names) m.divisor_basis.push_back(base_element(name, BasisKind::divisor));
  for (const auto& name : t.curve_names) m.curve_basis.push_back(base_element(name, BasisKind::curve));
  m.mul2.assign(n, std::vector<CurveClass>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.mul2[i][j] = CurveClass(t.products[i][j]);
  m.pairing = RationalMatrix::from_rows(t.pairing);
  m.c1 = DivisorClass(t.c1);
  m.c2 = CurveClass(t.c2);
  m.euler = t.euler;
  m.picard = static_cast<int>(n);
  m.base_flags = t.flags;
  auto violations = validate(m);
  if (!violations.empty()) throw ValidationError(violations);
  return m;
}

template <typename Tag>
std::string format_class(const std::vector<BasisElement>& basis, const ClassVector<Tag>& v) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational& c = v[i];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) out << to_string(mag) << "*";
    out << basis[i].name;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace

Integer complete_intersection_c2_coefficient(int n, const std::vector<int>& degrees) {
  Integer e1 = 0;
  Integer e2 = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    e1 += degrees[i];
    for (std::size_t j = i + 1; j < degrees.size(); ++j) e2 += Integer(degrees[i]) * degrees[j];
  }
  return Integer(n + 1) * n / 2 - e2 - Integer(n + 1) * e1 + e1 * e1;
}

std::size_t ThreefoldModel::divisor_index(const std::string& name) const {
  for (std::size_t i = 0; i < divisor_basis.size(); ++i)
    if (divisor_basis[i].name == name) return i;
  throw std::invalid_argument("unknown divisor basis element: " + name);
}

std::size_t ThreefoldModel::curve_index(const std::string& name) const {
  for (std::size_t i = 0; i < curve_basis.size(); ++i)
    if (curve_basis[i].name == name) return i;
  throw std::invalid_argument("unknown curve basis element: " + name);
}

DivisorClass ThreefoldModel::divisor(const std::string& name) const {
  DivisorClass d(size());
  d[divisor_index(name)] = 1;
  return d;
}

CurveClass ThreefoldModel::curve(const std::string& name) const {
  CurveClass c(size());
  c[curve_index(name)] = 1;
  return c;
}

int ThreefoldModel::point_count() const {
  return static_cast<int>(std::count_if(history.begin(), history.end(),
                                        [](const BlowupRecord& r) { return r.kind == StepKind::point; }));
}

int ThreefoldModel::curve_count() const { return static_cast<int>(history.size()) - point_count(); }

ThreefoldModel make_base(const BaseSpec& spec) {
  switch (spec.kind) {
    case BaseSpec::Kind::p3:
      return rank_one("p3", 1, 4, 6, 4);
    case BaseSpec::Kind::p2xp1:
      return make_p2xp1();
    case BaseSpec::Kind::p1cubed:
      return make_p1cubed();
    case BaseSpec::Kind::complete_intersection:
      return make_complete_intersection(spec.n, spec.degrees);
    case BaseSpec::Kind::custom:
      return make_custom(spec.custom);
  }
  throw std::logic_error("unhandled base kind");
}

std::vector<std::string> validate(const ThreefoldModel& m) {
  std::vector<std::string> out;
  const std::size_t n = m.divisor_basis.size();
  if (m.curve_basis.size() != n) out.push_back("divisor and curve bases have different sizes");
  if (m.picard != static_cast<int>(n)) out.push_back("picard number differs from divisor basis size");
  auto unique_names = [&](const std::vector<BasisElement>& basis, const char* what) {
    std::set<std::string> seen;
    for (const auto& e : basis)
      if (!seen.insert(e.name).second) out.push_back(std::string("duplicate ") + what + " name " + e.name);
  };
  unique_names(m.divisor_basis, "divisor");
  unique_names(m.curve_basis, "curve");
  for (const auto& e : m.divisor_basis)
    if (e.origin != Origin::base && e.step <= 0) out.push_back("element " + e.name + " lacks its blowup step");
  if (!out.empty()) return out;

  if (m.mul2.size() != n || m.pairing.rows() != n || m.pairing.cols() != n || m.c1.size() != n || m.c2.size() != n) {
    out.push_back("table dimensions do not match the basis");
    return out;
  }
  for (const auto& row : m.mul2) {
    if (row.size() != n) {
      out.push_back("product table row has wrong length");
      return out;
    }
    for (const auto& e : row)
      if (e.size() != n) {
        out.push_back("product entry has wrong length");
        return out;
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(m.mul2[i][j] == m.mul2[j][i]))
        out.push_back("mul2 not symmetric at (" + m.divisor_basis[i].name + "," + m.divisor_basis[j].name + ")");
  auto t = [&](std::size_t i, std::size_t j, std::size_t k) {
    Rational s = 0;
    for (std::size_t a = 0; a < n; ++a) s += m.mul2[i][j][a] * m.pairing(k, a);
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t(i, j, k) != t(i, k, j) || t(i, j, k) != t(k, j, i)) {
          out.push_back("triple product not symmetric at (" + m.divisor_basis[i].name + "," +
                        m.divisor_basis[j].name + "," + m.divisor_basis[k].name + ")");
          return out;
        }
  if (n > 0 && determinant(m.pairing) == 0) out.push_back("pairing matrix is singular");
  return out;
}

CurveClass multiply_divisors(const ThreefoldModel& model, const DivisorClass& a, const DivisorClass& b) {
  const std::size_t n = model.size();
  if (a.size() != n || b.size() != n) throw DimensionError("divisor class does not match the model");
  RationalVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      const Rational s = a[i] * b[j];
      const CurveClass& e = model.mul2[i][j];
      for (std::size_t k = 0; k < n; ++k)
        if (!e[k].is_zero()) out[k] += s * e[k];
    }
  }
  return CurveClass(std::move(out));
}

Rational pair(const ThreefoldModel& model, const DivisorClass& d, const CurveClass& c) {
  const std::size_t n = model.size();
  if (d.size() != n || c.size() != n) throw DimensionError("class does not match the model");
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].is_zero()) continue;
    for (std::size_t a = 0; a < n; ++a)
      if (!c[a].is_zero() && !model.pairing(i, a).is_zero()) s += d[i] * model.pairing(i, a) * c[a];
  }
  return s;
}

Rational triple(const ThreefoldModel& model, const DivisorClass& a, const DivisorClass& b, const DivisorClass& c) {
  // Multiply the two sparsest classes first; the result is symmetric.
  auto support = [](const DivisorClass& d) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < d.size(); ++i) k += !d[i].is_zero();
    return k;
  };
  const DivisorClass* v[3] = {&a, &b, &c};
  std::sort(std::begin(v), std::end(v), [&](const DivisorClass* x, const DivisorClass* y) { return support(*x) < support(*y); });
  return pair(model, *v[2], multiply_divisors(model, *v[0], *v[1]));
}

bool same_intersection_data(const ThreefoldModel& a, const ThreefoldModel& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.divisor_basis[i].name != b.divisor_basis[i].name) return false;
    if (a.curve_basis[i].name != b.curve_basis[i].name) return false;
  }
  return a.mul2 == b.mul2 && a.pairing == b.pairing && a.c1 == b.c1 && a.c2 == b.c2 && a.euler == b.euler &&
         a.picard == b.picard;
}

std::string format_divisor(const ThreefoldModel& model, const DivisorClass& d) {
  return format_class(model.divisor_basis, d);
}

std::string format_curve(const ThreefoldModel& model, const CurveClass& c) {
  return format_class(model.curve_basis, c);
}

}  // namespace threefold
