#include "threefold/tower_format.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace threefold {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum Kind { ident, number, symbol, end };
  Kind kind = end;
  std::string text;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::ident, line.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && ident_start(line[j])) throw ParseError(line_no, col, "malformed number");
      out.push_back({Token::number, line.substr(i, j - i), col});
      i = j;
    } else if (std::string("=+-*/();,").find(c) != std::string::npos) {
      out.push_back({Token::symbol, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::end, "", static_cast<int>(line.size()) + 1});
  return out;
}

struct Alias {
  std::vector<Token> tokens;  // ends with an end token
  int line = 0;
};

using AliasMap = std::map<std::string, Alias>;

class Cursor {
 public:
  Cursor(const std::vector<Token>& tokens, int line) : tokens_(tokens), line_(line) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return pos_ + 1 < tokens_.size() ? tokens_[pos_++] : tokens_[pos_]; }
  bool at_end() const { return peek().kind == Token::end; }
  bool is_symbol(const char* s) const { return peek().kind == Token::symbol && peek().text == s; }
  bool is_word(const char* s) const { return peek().kind == Token::ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, peek().col, msg); }

  void expect_symbol(const char* s) {
    if (!is_symbol(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  void expect_word(const char* s) {
    if (!is_word(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Token::ident) fail(std::string("expected ") + what);
    return next().text;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  Rational rational() {
    if (peek().kind != Token::number) fail("malformed rational");
    Integer num(next().text);
    Integer den = 1;
    if (is_symbol("/")) {
      next();
      if (peek().kind != Token::number) fail("malformed rational");
      const int col = peek().col;
      den = Integer(next().text);
      if (den.is_zero()) throw ParseError(line_, col, "malformed rational: zero denominator");
    }
    return Rational(num, den);
  }

  Rational signed_rational() {
    bool neg = false;
    if (is_symbol("-") || is_symbol("+")) neg = next().text == "-";
    const Rational r = rational();
    return neg ? Rational(-r) : r;
  }

  long integer(const char* what) {
    bool neg = false;
    if (is_symbol("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Token::number || peek().text.size() > 9) fail(std::string("expected integer ") + what);
    const long v = std::stol(next().text);
    return neg ? -v : v;
  }

  int line() const { return line_; }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  int line_;
};

class ExpressionReader {
 public:
  ExpressionReader(const std::vector<BasisElement>& basis, const AliasMap& aliases, const char* kind)
      : basis_(basis), aliases_(aliases), kind_(kind) {}

  RationalVector read(Cursor& c, int depth = 0) {
    RationalVector v(basis_.size());
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (c.is_symbol("+") || c.is_symbol("-")) {
        sign = c.next().text == "-" ? -1 : 1;
      } else if (!first) {
        break;
      }
      first = false;
      term(c, sign, v, depth);
    }
    return v;
  }

 private:
  void term(Cursor& c, Rational coeff, RationalVector& v, int depth) {
    if (c.peek().kind == Token::number) {
      const bool zero = c.peek().text == "0";
      coeff *= c.rational();
      if (c.is_symbol("*")) {
        c.next();
      } else if (c.peek().kind != Token::ident && !c.is_symbol("(")) {
        if (zero) return;
        c.fail(std::string("expected ") + kind_ + " basis name after coefficient");
      }
    }
    if (c.is_symbol("(")) {
      c.next();
      add(v, coeff, read(c, depth));
      c.expect_symbol(")");
      return;
    }
    if (c.peek().kind != Token::ident) c.fail(std::string("expected ") + kind_ + " basis name");
    const Token& tok = c.peek();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].name == tok.text) {
        if (aliases_.count(tok.text)) c.fail("'" + tok.text + "' is both an alias and a basis name");
        v[i] += coeff;
        c.next();
        return;
      }
    }
    const auto it = aliases_.find(tok.text);
    if (it == aliases_.end()) c.fail("unknown " + std::string(kind_) + " basis name '" + tok.text + "'");
    if (depth > 32) c.fail("alias nesting too deep at '" + tok.text + "'");
    Cursor inner(it->second.tokens, it->second.line);
    const RationalVector sub = read(inner, depth + 1);
    inner.expect_end();
    add(v, coeff, sub);
    c.next();
  }

  static void add(RationalVector& v, const Rational& s, const RationalVector& w) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * w[i];
  }

  const std::vector<BasisElement>& basis_;
  const AliasMap& aliases_;
  const char* kind_;
};

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  int number;
  std::string text;  // comment stripped
};

// `base custom` block; `lines[at]` is the first line after the base line.
BaseSpec parse_custom(const std::vector<Line>& lines, std::size_t& at, int base_line, const AliasMap& aliases) {
  CustomTables t;
  std::vector<BasisElement> divisors, curves;
  std::optional<int> picard;
  bool have_euler = false;
  auto need_bases = [&](Cursor& c) {
    if (divisors.empty() || curves.empty()) c.fail("'divisors' and 'curves' must come first");
  };
  for (; at < lines.size(); ++at) {
    const Line& ln = lines[at];
    const auto raw = words(ln.text);
    if (raw.empty()) continue;
    if (raw.front() == "label") {
      t.label = trim(ln.text.substr(ln.text.find("label") + 5));
      continue;
    }
    if (raw.front() == "flags") {
      t.flags.insert(raw.begin() + 1, raw.end());
      continue;
    }
    const auto toks = tokenize(ln.text, ln.number);
    Cursor c(toks, ln.number);
    const std::string key = c.ident("custom base entry");
    if (key == "end") {
      c.expect_end();
      if (divisors.empty()) throw ParseError(ln.number, 1, "custom base has no divisor basis");
      if (picard && *picard != static_cast<int>(divisors.size())) {
        throw ParseError(ln.number, 1, "picard number does not match the basis size");
      }
      if (!have_euler) throw ParseError(ln.number, 1, "custom base is missing 'euler'");
      return BaseSpec::from_tables(std::move(t));
    }
    if (key == "divisors" || key == "curves") {
      auto& names = key == "divisors" ? t.divisor_names : t.curve_names;
      auto& basis = key == "divisors" ? divisors : curves;
      if (!names.empty()) c.fail("'" + key + "' given twice");
      while (!c.at_end()) {
        const std::string name = c.ident("basis name");
        for (const auto& e : basis)
          if (e.name == name) c.fail("duplicate basis name '" + name + "'");
        names.push_back(name);
        basis.push_back(BasisElement{name, key == "divisors" ? BasisKind::divisor : BasisKind::curve,
                                     Origin::base, "", 0});
      }
      if (names.empty()) c.fail("expected basis names");
      if (!t.divisor_names.empty() && !t.curve_names.empty()) {
        if (t.divisor_names.size() != t.curve_names.size()) c.fail("divisor and curve bases differ in size");
        const std::size_t n = t.divisor_names.size();
        t.products.assign(n, std::vector<RationalVector>(n, RationalVector(n)));
        t.pairing.assign(n, RationalVector(n));
        t.c1.assign(n, 0);
        t.c2.assign(n, 0);
      }
    } else if (key == "picard") {
      picard = static_cast<int>(c.integer("after 'picard'"));
      c.expect_end();
    } else if (key == "product") {
      need_bases(c);
      const std::string a = c.ident("divisor name");
      const std::string b = c.ident("divisor name");
      std::size_t i = divisors.size(), j = divisors.size();
      for (std::size_t k = 0; k < divisors.size(); ++k) {
        if (divisors[k].name == a) i = k;
        if (divisors[k].name == b) j = k;
      }
      if (i == divisors.size() || j == divisors.size()) c.fail("unknown divisor basis name in product");
      c.expect_symbol("=");
      const RationalVector v = ExpressionReader(curves, AliasMap{}, "curve").read(c);
      c.expect_end();
      t.products[i][j] = v;
      t.products[j][i] = v;
    } else if (key == "pairing") {
      need_bases(c);
      const std::string a = c.ident("divisor name");
      const std::string b = c.ident("curve name");
      std::size_t i = divisors.size(), j = curves.size();
      for (std::size_t k = 0; k < divisors.size(); ++k) {
        if (divisors[k].name == a) i = k;
        if (curves[k].name == b) j = k;
      }
      if (i == divisors.size()) c.fail("unknown divisor basis name '" + a + "'");
      if (j == curves.size()) c.fail("unknown curve basis name '" + b + "'");
      c.expect_symbol("=");
      t.pairing[i][j] = c.signed_rational();
      c.expect_end();
    } else if (key == "c1" || key == "c2") {
      need_bases(c);
      c.expect_symbol("=");
      const bool divisor = key == "c1";
      RationalVector v = ExpressionReader(divisor ? divisors : curves, aliases, divisor ? "divisor" : "curve").read(c);
      c.expect_end();
      (divisor ? t.c1 : t.c2) = std::move(v);
    } else if (key == "euler") {
      t.euler = Integer(c.integer("after 'euler'"));
      have_euler = true;
      c.expect_end();
    } else {
      throw ParseError(ln.number, 1, "unknown custom base entry '" + key + "'");
    }
  }
  throw ParseError(base_line, 1, "custom base block is not closed by 'end'");
}

BaseSpec parse_base(Cursor& c, const std::vector<Line>& lines, std::size_t& at, const AliasMap& aliases) {
  const int col = c.peek().col;
  const std::string name = c.ident("base name");
  if (name == "p3") return c.expect_end(), BaseSpec::p3();
  if (name == "p2xp1") return c.expect_end(), BaseSpec::p2xp1();
  if (name == "p1cubed") return c.expect_end(), BaseSpec::p1cubed();
  if (name == "custom") {
    c.expect_end();
    ++at;
    const int base_line = c.line();
    BaseSpec spec = parse_custom(lines, at, base_line, aliases);
    return spec;
  }
  if (name == "ci") {
    c.expect_symbol("(");
    const long n = c.integer("for n");
    c.expect_symbol(";");
    std::vector<int> degrees;
    degrees.push_back(static_cast<int>(c.integer("degree")));
    while (c.is_symbol(",")) {
      c.next();
      degrees.push_back(static_cast<int>(c.integer("degree")));
    }
    c.expect_symbol(")");
    c.expect_end();
    return BaseSpec::complete_intersection(static_cast<int>(n), std::move(degrees));
  }
  throw ParseError(c.line(), col, "unknown base '" + name + "'");
}

CurveCenterSpec parse_curve(Cursor& c, const ThreefoldModel& model, const AliasMap& aliases) {
  CurveCenterSpec spec;
  if (!c.is_word("class")) c.fail("expected 'class' on curve step");
  c.next();
  c.expect_symbol("=");
  spec.curve_class = CurveClass(ExpressionReader(model.curve_basis, aliases, "curve").read(c));
  if (!c.is_word("genus")) c.fail("genus missing on curve step");
  c.next();
  c.expect_symbol("=");
  const int gcol = c.peek().col;
  const long g = c.integer("for genus");
  if (g < 0) throw ParseError(c.line(), gcol, "genus must be non-negative");
  spec.genus = static_cast<int>(g);
  while (!c.at_end()) {
    const std::string key = c.ident("curve option");
    if (key == "normal") {
      c.expect_symbol("=");
      const std::string v = c.ident("'decomposable' or 'indecomposable'");
      if (v != "decomposable" && v != "indecomposable") c.fail("expected 'decomposable' or 'indecomposable'");
      spec.normal_bundle_decomposable = v == "decomposable";
    } else if (key == "tau0") {
      c.expect_symbol("=");
      spec.tau0 = static_cast<int>(c.integer("for tau0"));
    } else if (key == "surface") {
      c.expect_symbol("=");
      SurfaceData s;
      s.surface = DivisorClass(ExpressionReader(model.divisor_basis, aliases, "divisor").read(c));
      c.expect_symbol(";");
      c.expect_word("mu");
      c.expect_symbol("=");
      const int mcol = c.peek().col;
      s.mu = static_cast<int>(c.integer("for mu"));
      if (s.mu < 1) throw ParseError(c.line(), mcol, "mu must be at least 1");
      c.expect_symbol(";");
      c.expect_word("kappa");
      c.expect_symbol("=");
      s.kappa = c.signed_rational();
      spec.surface_data = std::move(s);
    } else if (key == "movable") {
      spec.movable_witness = true;
    } else if (key == "disjoint") {
      c.expect_symbol("=");
      spec.disjoint_from.push_back(c.ident("name"));
      while (c.is_symbol(",")) {
        c.next();
        spec.disjoint_from.push_back(c.ident("name"));
      }
    } else {
      throw ParseError(c.line(), c.peek().col, "unknown curve option '" + key + "'");
    }
  }
  return spec;
}

}  // namespace

TowerDocument parse_tower(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) lines.push_back({++n, strip_comment(raw)});
  }
  TowerDocument doc;
  AliasMap aliases;
  std::optional<ThreefoldModel> model;
  for (std::size_t at = 0; at < lines.size(); ++at) {
    const Line& ln = lines[at];
    const auto toks = tokenize(ln.text, ln.number);
    Cursor c(toks, ln.number);
    if (c.at_end()) continue;
    const int col = c.peek().col;
    const std::string word = c.ident("'base', 'let' or 'blowup'");
    if (word == "base") {
      if (model) throw ParseError(ln.number, col, "duplicate 'base' line");
      doc.tower.base = parse_base(c, lines, at, aliases);
      try {
        model = make_base(doc.tower.base);
      } catch (const ValidationError& e) {
        std::string msg = "invalid base:";
        for (const auto& v : e.violations()) msg += " " + v + ";";
        throw ParseError(ln.number, col, msg);
      } catch (const std::exception& e) {
        throw ParseError(ln.number, col, e.what());
      }
    } else if (word == "let") {
      const std::string name = c.ident("alias name");
      if (aliases.count(name)) throw ParseError(ln.number, col, "alias '" + name + "' redefined");
      if (model) {
        for (const auto* basis : {&model->divisor_basis, &model->curve_basis})
          for (const auto& b : *basis)
            if (b.name == name) throw ParseError(ln.number, col, "alias '" + name + "' shadows a basis name");
      }
      c.expect_symbol("=");
      if (c.at_end()) c.fail("empty alias");
      const int start = c.peek().col;
      Alias a{{}, ln.number};
      while (!c.at_end()) a.tokens.push_back(c.next());
      a.tokens.push_back(c.peek());
      aliases.emplace(name, std::move(a));
      doc.aliases[name] = trim(ln.text.substr(static_cast<std::size_t>(start - 1)));
    } else if (word == "blowup") {
      if (!model) throw ParseError(ln.number, col, "expected a 'base' line before 'blowup'");
      const std::string kind = c.ident("'point' or 'curve'");
      BlowupStep step;
      if (kind == "point") {
        c.expect_end();
        step = BlowupStep::point();
      } else if (kind == "curve") {
        step = BlowupStep::curve(parse_curve(c, *model, aliases));
      } else {
        throw ParseError(ln.number, col, "expected 'point' or 'curve' after 'blowup'");
      }
      try {
        model = step.kind == StepKind::point ? blow_up_point(std::move(*model))
                                             : blow_up_curve(std::move(*model), *step.center);
      } catch (const std::exception& e) {
        throw ParseError(ln.number, col, e.what());
      }
      doc.tower.steps.push_back(std::move(step));
    } else {
      throw ParseError(ln.number, col, "unknown directive '" + word + "'");
    }
  }
  if (!model) throw ParseError(lines.empty() ? 1 : lines.front().number, 1, "missing 'base' line");
  return doc;
}

std::string format_custom_base(const ThreefoldModel& m) {
  std::ostringstream out;
  const std::size_t n = m.size();
  out << "base custom\n";
  out << "label " << m.label << "\n";
  out << "picard " << m.picard << "\n";
  out << "divisors";
  for (const auto& e : m.divisor_basis) out << " " << e.name;
  out << "\ncurves";
  for (const auto& e : m.curve_basis) out << " " << e.name;
  out << "\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!m.mul2[i][j].is_zero()) {
        out << "product " << m.divisor_basis[i].name << " " << m.divisor_basis[j].name << " = "
            << format_curve(m, m.mul2[i][j]) << "\n";
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      if (!m.pairing(i, a).is_zero()) {
        out << "pairing " << m.divisor_basis[i].name << " " << m.curve_basis[a].name << " = "
            << to_string(m.pairing(i, a)) << "\n";
      }
  out << "c1 = " << format_divisor(m, m.c1) << "\n";
  out << "c2 = " << format_curve(m, m.c2) << "\n";
  out << "euler " << to_string(m.euler) << "\n";
  if (!m.base_flags.empty()) {
    // Flags describe the base; on a blowup they no longer apply to the model.
    out << (m.history.empty() ? "flags" : "# base flags:");
    for (const auto& f : m.base_flags) out << " " << f;
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const std::size_t start = (!item.empty() && item[0] == '-') ? 1 : 0;
    if (item.size() == start) throw std::invalid_argument("empty entry in list '" + text + "'");
    for (std::size_t i = start; i < item.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(item[i]))) throw std::invalid_argument("not an integer: " + item);
    out.emplace_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

}  // namespace threefold
