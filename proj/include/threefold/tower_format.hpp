#pragma once

#include "threefold/blowup.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace threefold {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct TowerDocument {
  BlowupTower tower;
  /// let-aliases, as written.
  std::map<std::string, std::string> aliases;
};

/// Line-oriented tower description:
///
///   base p3 | p2xp1 | p1cubed | ci(n;d1,d2,...) | custom ... end
///   let NAME = <expression>
///   blowup point
///   blowup curve class = <expr> genus = <int> [normal=decomposable]
///       [tau0=<int>] [surface=<expr>;mu=<int>;kappa=<p/q>] [movable]
///       [disjoint=NAME,NAME,...]
///
/// Expressions are sums of [p/q*]name terms over the basis of the model at
/// that step; parentheses and aliases are allowed. '#' starts a comment.
TowerDocument parse_tower(const std::string& text);

/// The model as a `base custom ... end` block that parse_tower reads back.
std::string format_custom_base(const ThreefoldModel& model);

/// Parses "a,b,c" integer lists. Throws std::invalid_argument.
std::vector<Integer> parse_integer_list(const std::string& text);

}  // namespace threefold
