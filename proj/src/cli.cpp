#include "threefold/cli.hpp"

#include "threefold/case_studies.hpp"
#include "threefold/lattice_dynamics.hpp"
#include "threefold/nef_conditions.hpp"
#include "threefold/tower_format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace threefold::cli {
namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered key/value fields. Text mode prints "key: value", records mode
// "key=value"; `text` replaces the text rendering when set.
struct Report {
  std::vector<std::pair<std::string, std::string>> fields;
  std::string text;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, const Rational& value) { add(std::move(key), to_string(value)); }
  void add(std::string key, const Integer& value) { add(std::move(key), to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }

  void print(std::ostream& out, bool records) const {
    if (!records && !text.empty()) {
      out << text;
      return;
    }
    for (const auto& [k, v] : fields) out << k << (records ? "=" : ": ") << v << "\n";
  }
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  buf << f.rdbuf();
  return buf.str();
}

ThreefoldModel top_model(const BlowupTower& tower) {
  auto models = tower.evaluate();
  return std::move(models.back());
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Decimal with `digits` fractional digits, rounded down or up.
std::string decimal(const Rational& r, int digits, bool up) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Integer num = numerator(r) * scale;
  const Integer den = denominator(r);
  Integer q = floor_div(num, den);
  if (up && q * den != num) q += 1;
  const bool neg = q < 0;
  std::string s = to_string(Integer(neg ? Integer(-q) : q));
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

std::string interval_text(const AlgebraicReal& x) {
  std::ostringstream w;
  w.precision(3);
  w << to_double(x.width());
  return "[" + decimal(x.lo(), 12, false) + ", " + decimal(x.hi(), 12, true) + "] width " + w.str();
}

std::string format_form(const ConstraintSystem& sys, const LinearForm& f) {
  std::string out;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const Rational& c = f.coeffs[i];
    if (c.is_zero()) continue;
    const Rational mag = c < 0 ? Rational(-c) : c;
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mag != 1) out += to_string(mag) + "*";
    out += sys.variables[i];
  }
  if (!f.constant.is_zero() || out.empty()) {
    out += out.empty() ? to_string(f.constant)
                       : (f.constant < 0 ? " - " + to_string(Rational(-f.constant)) : " + " + to_string(f.constant));
  }
  return out;
}

std::string lp_status(LpStatus s) {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::unbounded:
      return "unbounded";
    case LpStatus::infeasible:
      return "infeasible";
  }
  return "?";
}

void add_verdict(Report& r, const ConditionVerdict& v, const std::string& prefix) {
  const std::string tags = v.trace_tags();
  std::string summary = to_string(v.status);
  if (!tags.empty()) summary += "; trace: " + tags;
  r.add(prefix + "verdict", summary);
  r.add(prefix + "condition", to_string(v.condition));
  r.add(prefix + "status", to_string(v.status));
  if (!v.seed.empty()) r.add(prefix + "seed", v.seed);
  r.add(prefix + "trace", tags.empty() ? std::string("-") : tags);
  for (const auto& e : v.trace) {
    std::string line = e.theorem + " " + e.case_tag;
    if (!e.witnesses.empty()) {
      line += " (";
      for (std::size_t i = 0; i < e.witnesses.size(); ++i)
        line += (i ? ", " : "") + e.witnesses[i].key + "=" + e.witnesses[i].value;
      line += ")";
    }
    r.add(prefix + "step." + std::to_string(e.step), line);
  }
  for (std::size_t i = 0; i < v.notes.size(); ++i) r.add(prefix + "note." + std::to_string(i + 1), v.notes[i]);
}

Report ring_show(const std::string& text) {
  const TowerDocument doc = parse_tower(text);
  const ThreefoldModel m = top_model(doc.tower);
  Report r;
  r.add("label", m.label);
  r.add("picard", m.picard);
  r.add("euler", m.euler);
  std::string names;
  for (const auto& e : m.divisor_basis) names += (names.empty() ? "" : " ") + e.name;
  r.add("divisors", names);
  names.clear();
  for (const auto& e : m.curve_basis) names += (names.empty() ? "" : " ") + e.name;
  r.add("curves", names);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j)
      if (!m.mul2[i][j].is_zero()) {
        r.add("product." + m.divisor_basis[i].name + "." + m.divisor_basis[j].name, format_curve(m, m.mul2[i][j]));
      }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t a = 0; a < m.size(); ++a)
      if (!m.pairing(i, a).is_zero()) r.add("pairing." + m.divisor_basis[i].name + "." + m.curve_basis[a].name, m.pairing(i, a));
  r.add("c1", format_divisor(m, m.c1));
  r.add("c2", format_curve(m, m.c2));
  std::string flags;
  for (const auto& f : m.base_flags) flags += (flags.empty() ? "" : " ") + f;
  r.add("base_flags", flags.empty() ? std::string("-") : flags);
  r.text = "# " + m.label + ": picard " + std::to_string(m.picard) + ", euler " + to_string(m.euler) + "\n" +
           format_custom_base(m);
  return r;
}

Report check(const std::string& text, const std::string& condition, bool c2_positive) {
  const TowerDocument doc = parse_tower(text);
  const Condition c = condition == "A" ? Condition::A : Condition::B;
  Report r;
  add_verdict(r, c2_positive ? check_c2_positive_tower(doc.tower, c) : check_tower(doc.tower, c), "");
  return r;
}

Report p3lines(int n) {
  if (n < 1) throw InputError("--n must be at least 1");
  const P3LinesResult res = check_p3_points_lines(n);
  Report r;
  r.add("verdict", res.verdict_text());
  r.add("n", n);
  r.add("lp_status", lp_status(res.lp.status));
  if (res.lp.status == LpStatus::optimal) r.add("max_deg_u", res.lp.maximum);
  r.add("zeta.c2", format_form(res.system, res.zeta_c2));
  r.add("zeta.c1^2", format_form(res.system, res.zeta_c1_squared));
  r.add("constraints", std::to_string(res.system.equalities.size()) + " equalities, " +
                           std::to_string(res.system.inequalities.size()) + " inequalities");
  r.add("certificate_replay", replay(res.system, res.objective, res.lp) ? "ok" : "failed");
  std::istringstream cert(serialize_certificate(res.system, res.lp.certificate));
  std::string line;
  while (std::getline(cert, line)) {
    const auto colon = line.rfind(": ");
    r.add("certificate." + line.substr(0, colon), line.substr(colon + 2));
  }
  return r;
}

Report picard1(const std::string& text) {
  const TowerDocument doc = parse_tower(text);
  const Picard1Result res = check_picard1(doc.tower);
  Report r;
  for (std::size_t i = 0; i < res.alphas.size(); ++i) r.add("alpha." + std::to_string(i + 1), res.alphas[i]);
  add_verdict(r, res.a, "A.");
  add_verdict(r, res.b, "B.");
  return r;
}

void add_algebraic(Report& r, const std::string& key, const AlgebraicReal& x) {
  std::ostringstream approx;
  approx.precision(12);
  approx << x.approx();
  r.add(key, approx.str());
  r.add(key + ".polynomial", x.polynomial().str());
  r.add(key + ".interval", interval_text(x));
}

Report dynamics(const std::string& matrix_text, const std::string* model_text) {
  IntegerMatrix a;
  try {
    a = parse_integer_matrix(matrix_text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
  Report r;
  std::optional<ThreefoldModel> model;
  if (model_text) {
    model = top_model(parse_tower(*model_text).tower);
    const auto violations = validate_action(*model, a);
    if (!violations.empty()) {
      std::string msg = "action rejected:";
      for (const auto& v : violations) msg += "\n  " + v;
      throw InputError(msg);
    }
  }
  const DegreeReport deg = model ? dynamical_degrees(*model, a) : dynamical_degrees(a);
  r.add("mode", std::string(model ? "model" : "raw"));
  add_algebraic(r, "lambda1", deg.lambda1);
  add_algebraic(r, "lambda2", deg.lambda2);
  std::ostringstream ent;
  ent.precision(12);
  ent << deg.entropy;
  r.add("entropy", ent.str());
  r.add("primitive_hint", deg.primitive_hint);
  r.add("log_concave", deg.log_concave);
  r.add("char_poly_a", deg.char_poly_a.str());
  r.add("char_poly_b", deg.char_poly_b.str());
  const auto obs = rationality_obstruction(deg.char_poly_a.integer_coefficients());
  r.add("rationality", to_string(obs.status) + " (" + obs.detail + ")");
  if (model) {
    const EigenclassReport ec = eigenclass_constraints(*model, a);
    r.add("eigenclass", ec.message);
    if (ec.status == EigenclassReport::Status::checked) {
      std::ostringstream v;
      v.precision(10);
      for (std::size_t i = 0; i < ec.leading_eigenvector.size(); ++i)
        v << (i ? " " : "") << ec.leading_eigenvector[i];
      r.add("leading_eigenvector", v.str());
      for (const auto* part : {&ec.part1, &ec.part2})
        for (const auto& res : *part) {
          std::ostringstream s;
          s.precision(3);
          s << res.value << (res.within ? " < " : " >= ") << ec.tolerance;
          r.add("residual." + res.name, s.str());
        }
    }
  }
  return r;
}

Report ueno() {
  const UenoReport u = ueno_report();
  Report r;
  r.add("fixed_points", u.fixed_points);
  r.add("period2_points", u.period2_points);
  r.add("singular_points", u.singular_points);
  r.add("chi_open", u.chi_open);
  r.add("chi_quotient", u.chi_quotient);
  r.add("chi_resolution", u.chi_resolution);
  r.add("picard_resolution", u.picard_resolution);
  r.add("identity_check", u.identity_check);
  return r;
}

Report ci(int n, const std::string& degrees_text) {
  std::vector<int> degrees;
  try {
    for (const auto& d : parse_integer_list(degrees_text)) {
      if (d > 1000000 || d < -1000000) throw std::invalid_argument("degree out of range");
      degrees.push_back(static_cast<int>(d));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--degrees: ") + e.what());
  }
  const CiC2 res = ci_c2(n, degrees);
  Report r;
  r.add("n", n);
  r.add("degrees", degrees_text);
  r.add("c1_coeff", res.c1_coeff);
  r.add("c2_coeff", res.c2_coeff);
  r.add("positive", res.positive);
  r.add("bracket", ci_bracket(n, degrees));
  return r;
}

std::pair<Integer, Integer> pair_of(const std::string& text, const char* flag) {
  std::vector<Integer> v;
  try {
    v = parse_integer_list(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
  if (v.size() != 2) throw InputError(std::string(flag) + " expects chi,rho");
  return {v[0], v[1]};
}

void add_budget(Report& r, const EulerBudget& b) {
  r.add("num_blowups", b.num_blowups);
  r.add("genus_slack", b.genus_slack);
  r.add("feasible", b.feasible);
  r.add("all_centers_rational_forced", b.all_centers_rational_forced);
  r.add("note", b.note);
}

Report budget(const std::string& base, const std::string& target) {
  const auto [chi0, rho0] = pair_of(base, "--base");
  const auto [chi, rho] = pair_of(target, "--target");
  Report r;
  add_budget(r, euler_budget(chi0, rho0, chi, rho));
  return r;
}

Report audit(const std::string& text) {
  const TowerAudit a = audit_tower(parse_tower(text).tower);
  Report r;
  add_budget(r, a.budget);
  r.add("twice_genus_sum", a.twice_genus_sum);
  r.add("consistent", a.consistent);
  for (std::size_t i = 0; i < a.open_cases.size(); ++i) r.add("open_case." + std::to_string(i + 1), a.open_cases[i]);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection-theoretic checks for blowup towers of threefolds", "threefold"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}));

  std::string file, condition, matrix_file, model_file, degrees, base, target, tower_file;
  int n = 0;
  bool c2_positive = false;

  auto* ring = app.add_subcommand("ring", "Intersection ring of a tower");
  ring->require_subcommand(1);
  auto* show = ring->add_subcommand("show", "Bases, products, Chern classes, Euler and Picard numbers");
  show->add_option("file", file, "Tower file, or - for stdin")->required();

  auto* chk = app.add_subcommand("check", "Propagate Condition A or B through a tower");
  chk->add_option("--condition", condition, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
  chk->add_flag("--c2-positive", c2_positive, "Use the c2-positive criterion for points then disjoint curves");
  chk->add_option("file", file, "Tower file, or - for stdin")->required();

  auto* p3 = app.add_subcommand("p3lines", "Points in general position in P^3 and their connecting lines");
  p3->add_option("--n", n, "Number of points")->required();

  auto* pic = app.add_subcommand("picard1", "Points then curves over a Picard-rank-one base");
  pic->add_option("file", file, "Tower file, or - for stdin")->required();

  auto* dyn = app.add_subcommand("dynamics", "Dynamical degrees of a lattice action");
  dyn->add_option("--matrix", matrix_file, "Integer matrix file, or - for stdin")->required();
  auto* model_opt = dyn->add_option("--model", model_file, "Tower file whose top model carries the action");

  auto* cs = app.add_subcommand("case", "Worked examples");
  cs->require_subcommand(1);
  auto* ueno_cmd = cs->add_subcommand("ueno", "Euler and Picard bookkeeping of the Ueno threefold");
  auto* ci_cmd = cs->add_subcommand("ci", "c2 of a complete intersection");
  ci_cmd->add_option("--n", n, "Ambient dimension")->required();
  ci_cmd->add_option("--degrees", degrees, "d1,d2,...")->required();

  auto* bud = app.add_subcommand("budget", "Euler/Picard budget of a blowup tower");
  auto* base_opt = bud->add_option("--base", base, "chi,rho of the base");
  auto* target_opt = bud->add_option("--target", target, "chi,rho of the target");
  auto* tower_opt = bud->add_option("--tower", tower_file, "Audit a concrete tower instead");
  base_opt->needs(target_opt);
  target_opt->needs(base_opt);
  tower_opt->excludes(base_opt)->excludes(target_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (bud->parsed() && !*tower_opt && !*base_opt) throw CLI::ValidationError("budget needs --base and --target, or --tower");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return 2;
  }

  try {
    Report report;
    if (show->parsed()) {
      report = ring_show(read_input(file, in));
    } else if (chk->parsed()) {
      report = check(read_input(file, in), condition, c2_positive);
    } else if (p3->parsed()) {
      report = p3lines(n);
    } else if (pic->parsed()) {
      report = picard1(read_input(file, in));
    } else if (dyn->parsed()) {
      const std::string matrix_text = read_input(matrix_file, in);
      if (*model_opt) {
        if (model_file == "-" && matrix_file == "-") throw InputError("only one of --matrix and --model may read stdin");
        const std::string model_text = read_input(model_file, in);
        report = dynamics(matrix_text, &model_text);
      } else {
        report = dynamics(matrix_text, nullptr);
      }
    } else if (ueno_cmd->parsed()) {
      report = ueno();
    } else if (ci_cmd->parsed()) {
      report = ci(n, degrees);
    } else if (bud->parsed()) {
      report = *tower_opt ? audit(read_input(tower_file, in)) : budget(base, target);
    }
    report.print(out, format == "records");
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "invalid input:";
    for (const auto& v : e.violations()) err << "\n  " << v;
    err << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace threefold::cli
