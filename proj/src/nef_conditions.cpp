#include "threefold/nef_conditions.hpp"

#include <sstream>
#include <stdexcept>

namespace threefold {
namespace {

CurveClass pad(const CurveClass& c, std::size_t size) {
  RationalVector v = c.coefficients();
  v.resize(size);
  return CurveClass(std::move(v));
}

Witness w(std::string key, const Rational& value) { return {std::move(key), to_string(value)}; }

bool is_odd_integer(const Rational& r) {
  return is_integer(r) && (to_integer(r) % 2 != 0);
}

// Index of the first curve step, checking that no point step follows it.
std::size_t split_points_then_curves(const BlowupTower& tower) {
  std::size_t first_curve = tower.steps.size();
  for (std::size_t k = 0; k < tower.steps.size(); ++k) {
    if (tower.steps[k].kind == StepKind::curve) {
      if (first_curve == tower.steps.size()) first_curve = k;
    } else if (first_curve != tower.steps.size()) {
      throw std::invalid_argument("point blowup at step " + std::to_string(k + 1) +
                                  " follows a curve blowup; expected points first, then curves");
    }
  }
  return first_curve;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

std::string to_string(Condition c) { return c == Condition::A ? "A" : "B"; }

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::holds_by_theorem:
      return "holds-by-theorem";
    case VerdictStatus::unknown:
      return "unknown";
    case VerdictStatus::hypotheses_unverified:
      return "hypotheses-unverified";
  }
  return "?";
}

std::string ConditionVerdict::trace_tags() const {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ",";
    out += trace[i].theorem;
  }
  return out;
}

ConditionVerdict seed_verdict(const ThreefoldModel& base, Condition condition) {
  ConditionVerdict v;
  v.condition = condition;
  const auto& flags = base.base_flags;
  const char* asserted = condition == Condition::A ? kAssertConditionA : kAssertConditionB;
  if (flags.count(kPicardRankOne)) {
    v.status = VerdictStatus::holds_by_theorem;
    v.seed = "T3";
  } else if (flags.count(kC2MovablePositive)) {
    v.status = VerdictStatus::holds_by_theorem;
    v.seed = "T4";
  } else if (flags.count(asserted)) {
    v.status = VerdictStatus::holds_by_theorem;
    v.seed = "asserted";
  } else {
    v.status = VerdictStatus::hypotheses_unverified;
    v.notes.push_back("base carries no verified hypothesis for Condition " + to_string(condition));
  }
  return v;
}

ConditionVerdict propagate_condition(const ConditionVerdict& verdict, const ThreefoldModel& before,
                                     const BlowupStep& step) {
  if (verdict.status != VerdictStatus::holds_by_theorem) return verdict;
  ConditionVerdict out = verdict;
  const int index = static_cast<int>(before.history.size()) + 1;
  if (step.kind == StepKind::point) {
    out.trace.push_back({index, "T5", "point", {}});
    return out;
  }
  if (!step.center) throw std::invalid_argument("curve step without a center");
  const CurveCenterSpec& c = *step.center;
  const Rational c1c = pair(before, before.c1, c.curve_class);
  const Rational g = gamma(before, c);
  const Rational canonical = 2 * c.genus - 2;
  std::vector<Witness> base_witnesses{w("c1.C", c1c), w("genus", c.genus), w("gamma", g)};

  auto accept = [&](std::string theorem, std::string tag, std::vector<Witness> extra) {
    auto ws = base_witnesses;
    ws.insert(ws.end(), extra.begin(), extra.end());
    out.trace.push_back({index, std::move(theorem), std::move(tag), std::move(ws)});
    return out;
  };

  if (verdict.condition == Condition::B && c1c != canonical) {
    return accept("T7", "c1.C != 2g-2", {w("2g-2", canonical)});
  }
  if (is_odd_integer(c1c) && c.normal_bundle_decomposable.value_or(false)) {
    return accept("T6", "case1", {{"parity", "odd"}, {"normal", "decomposable"}});
  }
  if (g < 0 && c.movable_witness.value_or(false)) {
    return accept("T6", "case2", {{"movable", "yes"}});
  }
  if (c.surface_data && 2 * c.surface_data->kappa < c.surface_data->mu * g) {
    return accept("T6", "case3", {w("kappa", c.surface_data->kappa), w("mu", c.surface_data->mu)});
  }
  out.status = VerdictStatus::unknown;
  out.trace.push_back({index, "none", "no case applies", base_witnesses});
  if (c1c == -2 && c.genus == 0) {
    out.notes.push_back("step " + std::to_string(index) +
                        ": rational center with c1.C = -2 is the unresolved open case; not decided");
  }
  return out;
}

ConditionVerdict check_tower(const BlowupTower& tower, Condition condition) {
  const auto models = tower.evaluate();
  ConditionVerdict v = seed_verdict(models.front(), condition);
  for (std::size_t k = 0; k < tower.steps.size(); ++k) v = propagate_condition(v, models[k], tower.steps[k]);
  return v;
}

Picard1Result check_picard1(const BlowupTower& tower) {
  const auto models = tower.evaluate();
  const ThreefoldModel& base = models.front();
  Picard1Result result;
  result.a.condition = Condition::A;
  result.b.condition = Condition::B;
  if (!base.base_flags.count(kPicardRankOne) || base.size() != 1) {
    for (auto* v : {&result.a, &result.b}) {
      v->status = VerdictStatus::hypotheses_unverified;
      v->notes.push_back("base is not flagged picard-rank-1");
    }
    return result;
  }
  const std::size_t first_curve = split_points_then_curves(tower);
  const DivisorClass h = base.divisor(base.divisor_basis.front().name);

  std::vector<TraceEntry> trace;
  std::vector<CurveClass> centers_x1;  // curve centers as classes on the point blowup
  const ThreefoldModel& x1 = models[first_curve];
  for (std::size_t k = first_curve; k < tower.steps.size(); ++k) {
    const CurveCenterSpec& c = *tower.steps[k].center;
    centers_x1.push_back(truncate(c.curve_class, x1.size()));
    const CurveClass on_base = truncate(c.curve_class, base.size());
    const Rational hc = pair(base, h, on_base);
    if (hc <= 0) {
      throw std::invalid_argument("center at step " + std::to_string(k + 1) +
                                  " has non-positive degree against the ample class");
    }
    // zeta^2.F = 2 alpha H.C - alpha^2 gamma, with both coefficients read off
    // the single-curve blowup of the base.
    CurveCenterSpec on_base_spec = c;
    on_base_spec.curve_class = on_base;
    const ThreefoldModel xc = blow_up_curve(base, on_base_spec);
    const DivisorClass hp = pullback_divisor(base, xc, h);
    const DivisorClass f = xc.divisor(xc.history.back().exceptional_divisor);
    const Rational linear = -2 * triple(xc, hp, f, f);  // 2 H.C
    const Rational quadratic = triple(xc, f, f, f);     // -gamma
    const Rational alpha = quadratic < 0 ? Rational(linear / -quadratic) : Rational(0);
    result.alphas.push_back(alpha);
    trace.push_back({static_cast<int>(k + 1), "T3", "alpha", {w("H.C", hc), w("gamma", -quadratic), w("alpha", alpha)}});
  }
  // Points become fibres M_j of the exceptional divisors when they lie on a
  // center; otherwise they are plain point blowups.
  for (std::size_t k = 0; k < first_curve; ++k) {
    const DivisorClass e = x1.divisor(models[k + 1].history.back().exceptional_divisor);
    bool on_curve = false;
    for (const auto& d : centers_x1)
      if (pair(x1, e, d) != 0) on_curve = true;
    if (on_curve) {
      trace.push_back({static_cast<int>(k + 1), "T6", "case1", {{"c1.M", "1"}, {"normal", "decomposable"}}});
    } else {
      trace.push_back({static_cast<int>(k + 1), "T5", "point", {}});
    }
  }
  for (auto* v : {&result.a, &result.b}) {
    v->status = VerdictStatus::holds_by_theorem;
    v->seed = "T3";
    v->trace = trace;
  }
  return result;
}

ConditionVerdict check_c2_positive_tower(const BlowupTower& tower, Condition condition) {
  const auto models = tower.evaluate();
  ConditionVerdict v;
  v.condition = condition;
  if (!models.front().base_flags.count(kC2MovablePositive)) {
    v.status = VerdictStatus::hypotheses_unverified;
    v.notes.push_back("base is not flagged c2-movable-positive");
    return v;
  }
  const std::size_t first_curve = split_points_then_curves(tower);
  const ThreefoldModel& x1 = models[first_curve];
  v.seed = "T4";
  v.status = VerdictStatus::holds_by_theorem;
  for (std::size_t k = first_curve; k < tower.steps.size(); ++k) {
    const CurveCenterSpec& c = *tower.steps[k].center;
    const Rational c1d = pair(x1, x1.c1, truncate(c.curve_class, x1.size()));
    const Rational margin = Rational(2 * c.genus - 2) - c1d;
    TraceEntry entry{static_cast<int>(k + 1), "T4", condition == Condition::B ? "part1" : "part2",
                     {w("c1(X1).D", c1d), w("genus", c.genus), w("margin", margin)}};
    if (condition == Condition::A && margin < 0) {
      v.status = VerdictStatus::unknown;
      entry.case_tag = "part2 fails";
    }
    v.trace.push_back(std::move(entry));
  }
  return v;
}

ConstraintSystem p3_points_lines_system(int n, LinearForm* zeta_c2_out, LinearForm* zeta_c1_sq_out) {
  if (n < 1) throw std::invalid_argument("need at least one point");
  ThreefoldModel x1 = make_base(BaseSpec::p3());
  for (int i = 0; i < n; ++i) x1 = blow_up_point(std::move(x1));
  ThreefoldModel x2 = x1;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      CurveCenterSpec d = line_strict_transform(x1, {i, j}, 1);
      d.curve_class = pad(d.curve_class, x2.size());
      x2 = blow_up_curve(std::move(x2), d);
    }

  ConstraintSystem sys;
  sys.variables.push_back("deg_u");
  for (int l = 1; l <= n; ++l) sys.variables.push_back("beta" + std::to_string(l));
  sys.variables.push_back("S");
  const std::size_t s_index = sys.variables.size() - 1;

  // zeta = deg_u h - sum beta_l E_l - sum alpha_ij F_ij on X2.
  LinearForm c2_form = sys.form("zeta.c2=0");
  LinearForm c1sq_form = sys.form("zeta.c1^2=0");
  c2_form.coeffs[0] = pair(x2, x2.divisor("h"), x2.c2);
  c1sq_form.coeffs[0] = triple(x2, x2.divisor("h"), x2.c1, x2.c1);
  for (int l = 1; l <= n; ++l) {
    const DivisorClass e = x2.divisor("E" + std::to_string(l));
    c2_form.coeffs[static_cast<std::size_t>(l)] = -pair(x2, e, x2.c2);
    c1sq_form.coeffs[static_cast<std::size_t>(l)] = -triple(x2, e, x2.c1, x2.c1);
  }
  // The alpha_ij enter only through their sum S; check that the engine agrees.
  const int lines = x2.curve_count();
  for (int k = 1; k <= lines; ++k) {
    const DivisorClass f = x2.divisor("F" + std::to_string(k));
    const Rational a2 = -pair(x2, f, x2.c2);
    const Rational a1 = -triple(x2, f, x2.c1, x2.c1);
    if (k == 1) {
      c2_form.coeffs[s_index] = a2;
      c1sq_form.coeffs[s_index] = a1;
    } else if (a2 != c2_form.coeffs[s_index] || a1 != c1sq_form.coeffs[s_index]) {
      throw std::logic_error("exceptional divisors over the lines contribute unequally");
    }
  }
  if (zeta_c2_out) *zeta_c2_out = c2_form;
  if (zeta_c1_sq_out) *zeta_c1_sq_out = c1sq_form;
  sys.add_equality(c2_form);
  sys.add_equality(c1sq_form);

  for (std::size_t v = 0; v < sys.variables.size(); ++v) {
    LinearForm f = sys.form(sys.variables[v] + ">=0");
    f.coeffs[v] = 1;
    sys.add_inequality(std::move(f));
  }

  // xi = deg_u h - sum beta_l E_l on X1 against effective curves of X1.
  auto xi_dot = [&](const CurveClass& d, std::string label) {
    LinearForm f = sys.form(std::move(label));
    f.coeffs[0] = pair(x1, x1.divisor("h"), d);
    for (int l = 1; l <= n; ++l)
      f.coeffs[static_cast<std::size_t>(l)] = -pair(x1, x1.divisor("E" + std::to_string(l)), d);
    return f;
  };
  if (n >= 6 && n <= 9) {
    for (const auto& t : subsets(n, 6)) {
      std::ostringstream label;
      label << "cubic{";
      for (std::size_t i = 0; i < t.size(); ++i) label << (i ? "," : "") << t[i];
      label << "}>=0";
      sys.add_inequality(xi_dot(line_strict_transform(x1, t, 3).curve_class, label.str()));
    }
  } else if (n == 4 || n == 5) {
    LinearForm f = sys.form("(n/3)deg_u-sum(beta)>=0");
    f.coeffs[0] = Rational(n, 3);
    for (int l = 1; l <= n; ++l) f.coeffs[static_cast<std::size_t>(l)] = -1;
    sys.add_inequality(std::move(f));
  } else if (n <= 3) {
    for (int l = 1; l <= n; ++l)
      sys.add_inequality(xi_dot(line_strict_transform(x1, {l}, 1).curve_class, "line{" + std::to_string(l) + "}>=0"));
  }
  return sys;
}

std::string P3LinesResult::verdict_text() const {
  return forced ? "deg(u)=0 forced; zero entropy by Condition A" : "inconclusive";
}

P3LinesResult check_p3_points_lines(int n) {
  P3LinesResult r;
  r.n = n;
  r.system = p3_points_lines_system(n, &r.zeta_c2, &r.zeta_c1_squared);
  r.objective = RationalVector(r.system.variables.size());
  r.objective[0] = 1;
  r.lp = rational_feasible(r.system, r.objective);
  r.forced = r.lp.status == LpStatus::optimal && r.lp.maximum == 0;
  return r;
}

GeneralizedResult check_generalized(const GeneralizedConfig& c) {
  if (c.lambda <= 0) throw std::invalid_argument("lambda must be positive");
  const std::size_t m = c.degrees.size();
  if (c.genera.size() != m) throw std::invalid_argument("one genus per curve required");
  if (c.e_dot_d.size() != static_cast<std::size_t>(c.n)) throw std::invalid_argument("one table row per point required");
  for (const auto& row : c.e_dot_d)
    if (row.size() != m) throw std::invalid_argument("one table column per curve required");

  ThreefoldModel x1 = make_base(BaseSpec::p3());
  for (int i = 0; i < c.n; ++i) x1 = blow_up_point(x1);

  GeneralizedResult r;
  r.row_sums_ok = true;
  for (const auto& row : c.e_dot_d) {
    Rational s = 0;
    for (const auto& v : row) s += v;
    if (s > c.lambda) r.row_sums_ok = false;
  }
  for (int d : c.degrees) r.gamma += d;
  r.ratio_ok = (6 + r.gamma) / c.lambda > Rational(11, 2);
  r.per_curve_ok = true;
  for (std::size_t j = 0; j < m; ++j) {
    // D_j = deg l - sum (E_l.D_j) L_l, since E_l.L_l = -1.
    CurveClass d = Rational(c.degrees[j]) * x1.curve("l");
    for (int l = 1; l <= c.n; ++l)
      d = d - c.e_dot_d[static_cast<std::size_t>(l - 1)][j] * x1.curve("L" + std::to_string(l));
    const Rational c1d = pair(x1, x1.c1, d);
    r.c1_dot_d.push_back(c1d);
    if ((Rational(1, 2) + 1 / c.lambda) * c1d < Rational(c.genera[j] - 1, 2)) r.per_curve_ok = false;
  }
  r.holds = r.row_sums_ok && r.ratio_ok && r.per_curve_ok;
  return r;
}

GeneralizedConfig lines_configuration(int n) {
  GeneralizedConfig c;
  c.n = n;
  c.lambda = n - 1;
  c.e_dot_d.assign(static_cast<std::size_t>(n), {});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      c.degrees.push_back(1);
      c.genera.push_back(0);
      for (int l = 1; l <= n; ++l)
        c.e_dot_d[static_cast<std::size_t>(l - 1)].push_back(l == i || l == j ? Rational(1) : Rational(0));
    }
  return c;
}

}  // namespace threefold
