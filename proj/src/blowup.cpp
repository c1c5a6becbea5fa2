#include "threefold/blowup.hpp"

#include <set>
#include <stdexcept>

namespace threefold {
namespace {

template <typename Tag>
ClassVector<Tag> extend(const ClassVector<Tag>& v, const Rational& last = 0) {
  RationalVector c = v.coefficients();
  c.push_back(last);
  return ClassVector<Tag>(std::move(c));
}

// Shared part of both blowups, done in place: bases, products and pairing of
// the pulled-back classes, plus an empty row and column for the new pair.
void extend_shell(ThreefoldModel& x, const std::string& divisor_name, const std::string& curve_name, int step) {
  const std::size_t n = x.size();
  for (auto* basis : {&x.divisor_basis, &x.curve_basis}) {
    for (auto& e : *basis) {
      if (e.origin != Origin::base) continue;
      e.origin = Origin::pullback;
      e.source = e.name;
      e.step = step;
    }
  }
  x.divisor_basis.push_back(BasisElement{divisor_name, BasisKind::divisor, Origin::exceptional, "", step});
  x.curve_basis.push_back(BasisElement{curve_name, BasisKind::curve, Origin::exceptional, "", step});
  for (auto& row : x.mul2) {
    for (auto& e : row) e = extend(e);
    row.emplace_back(n + 1);
  }
  x.mul2.emplace_back(n + 1, CurveClass(n + 1));
  RationalMatrix p(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) p(i, a) = x.pairing(i, a);
  p(n, n) = -1;
  x.pairing = std::move(p);
  x.picard += 1;
}

ThreefoldModel point_impl(ThreefoldModel x) {
  const std::size_t n = x.size();
  const int k = x.point_count() + 1;
  const int step = static_cast<int>(x.history.size()) + 1;
  const std::string e = "E" + std::to_string(k);
  const std::string l = "L" + std::to_string(k);
  extend_shell(x, e, l, step);
  // E.E = -L; pi*xi.E = 0.
  x.mul2[n][n][n] = -1;
  x.c1 = extend(x.c1, -2);
  x.c2 = extend(x.c2);
  x.euler += 2;
  x.history.push_back(BlowupRecord{StepKind::point, e, l, CurveClass(), 0, 0, 0});
  return x;
}

ThreefoldModel curve_impl(ThreefoldModel x, const CurveCenterSpec& center) {
  const std::size_t n = x.size();
  if (center.curve_class.size() != n) throw std::invalid_argument("center class does not match the model");
  if (center.curve_class.is_zero()) throw std::invalid_argument("blowup center has zero class");
  if (center.genus < 0) throw std::invalid_argument("genus must be non-negative");
  if (center.surface_data && center.surface_data->mu < 1) throw std::invalid_argument("multiplicity must be >= 1");

  const CurveClass& c = center.curve_class;
  const Rational c1c = pair(x, x.c1, c);
  const Rational g = c1c + 2 * center.genus - 2;
  RationalVector delta_dot_c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      if (!c[a].is_zero()) delta_dot_c[i] += x.pairing(i, a) * c[a];

  const int k = x.curve_count() + 1;
  const int step = static_cast<int>(x.history.size()) + 1;
  const std::string f = "F" + std::to_string(k);
  const std::string m = "M" + std::to_string(k);
  extend_shell(x, f, m, step);

  // pi*delta . F = (delta . C) M
  for (std::size_t i = 0; i < n; ++i) {
    x.mul2[i][n][n] = delta_dot_c[i];
    x.mul2[n][i][n] = delta_dot_c[i];
  }
  // F.F = -pi^!(C) + gamma M
  x.mul2[n][n] = extend(-c, g);
  x.c1 = extend(x.c1, -1);
  x.c2 = extend(x.c2 + c, -c1c);
  x.euler += 2 - 2 * center.genus;
  x.history.push_back(BlowupRecord{StepKind::curve, f, m, c, center.genus, c1c, g});
  return x;
}

void check_related(const ThreefoldModel& before, const ThreefoldModel& after) {
  bool ok = after.size() == before.size() + 1 && after.history.size() == before.history.size() + 1;
  for (std::size_t i = 0; ok && i < before.size(); ++i) {
    ok = before.divisor_basis[i].name == after.divisor_basis[i].name &&
         before.curve_basis[i].name == after.curve_basis[i].name;
  }
  for (std::size_t k = 0; ok && k < before.history.size(); ++k) ok = before.history[k] == after.history[k];
  if (!ok) throw std::invalid_argument("models are not related by a recorded blowup step");
}

}  // namespace

ThreefoldModel blow_up_point(const ThreefoldModel& y) { return point_impl(y); }
ThreefoldModel blow_up_point(ThreefoldModel&& y) { return point_impl(std::move(y)); }

Rational gamma(const ThreefoldModel& model, const CurveCenterSpec& center) {
  if (center.curve_class.size() != model.size()) throw std::invalid_argument("center class does not match the model");
  return pair(model, model.c1, center.curve_class) + 2 * center.genus - 2;
}

ThreefoldModel blow_up_curve(const ThreefoldModel& y, const CurveCenterSpec& center) {
  return curve_impl(y, center);
}
ThreefoldModel blow_up_curve(ThreefoldModel&& y, const CurveCenterSpec& center) {
  return curve_impl(std::move(y), center);
}

ThreefoldModel apply_step(const ThreefoldModel& model, const BlowupStep& step) {
  if (step.kind == StepKind::point) return blow_up_point(model);
  if (!step.center) throw std::invalid_argument("curve step without a center");
  return blow_up_curve(model, *step.center);
}

std::vector<ThreefoldModel> BlowupTower::evaluate() const {
  std::vector<ThreefoldModel> models{make_base(base)};
  for (const auto& step : steps) models.push_back(apply_step(models.back(), step));
  return models;
}

DivisorClass pullback_divisor(const ThreefoldModel& before, const ThreefoldModel& after, const DivisorClass& d) {
  check_related(before, after);
  if (d.size() != before.size()) throw DimensionError("divisor class does not match the model");
  return extend(d);
}

DivisorClass pushforward_divisor(const ThreefoldModel& before, const ThreefoldModel& after, const DivisorClass& d) {
  check_related(before, after);
  if (d.size() != after.size()) throw DimensionError("divisor class does not match the model");
  return truncate(d, before.size());
}

CurveClass pullback_curve(const ThreefoldModel& before, const ThreefoldModel& after, const CurveClass& c) {
  check_related(before, after);
  if (c.size() != before.size()) throw DimensionError("curve class does not match the model");
  return extend(c);
}

CurveClass pushforward_curve(const ThreefoldModel& before, const ThreefoldModel& after, const CurveClass& c) {
  check_related(before, after);
  if (c.size() != after.size()) throw DimensionError("curve class does not match the model");
  return truncate(c, before.size());
}

DivisorClass truncate(const DivisorClass& d, std::size_t size) {
  if (size > d.size()) throw DimensionError("cannot truncate to a larger size");
  return DivisorClass(RationalVector(d.coefficients().begin(), d.coefficients().begin() + static_cast<long>(size)));
}

CurveClass truncate(const CurveClass& c, std::size_t size) {
  if (size > c.size()) throw DimensionError("cannot truncate to a larger size");
  return CurveClass(RationalVector(c.coefficients().begin(), c.coefficients().begin() + static_cast<long>(size)));
}

CurveCenterSpec line_strict_transform(const ThreefoldModel& model, const std::vector<int>& point_indices, int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  std::set<int> seen;
  for (int i : point_indices) {
    if (!seen.insert(i).second) throw std::invalid_argument("repeated point index " + std::to_string(i));
    if (i < 1 || i > model.point_count()) throw std::invalid_argument("point index out of range: " + std::to_string(i));
  }
  CurveCenterSpec spec;
  spec.curve_class = Rational(degree) * model.curve("l");
  for (int i : point_indices) spec.curve_class = spec.curve_class - model.curve("L" + std::to_string(i));
  spec.genus = 0;
  return spec;
}

}  // namespace threefold
