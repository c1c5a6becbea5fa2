#include "threefold/linear_program.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace threefold {

Rational LinearForm::evaluate(const RationalVector& x) const {
  return dot(coeffs, x) + constant;
}

std::size_t ConstraintSystem::index(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return i;
  throw std::invalid_argument("unknown variable: " + name);
}

LinearForm ConstraintSystem::form(std::string label) const {
  return LinearForm{RationalVector(variables.size()), 0, std::move(label)};
}

void ConstraintSystem::add_equality(LinearForm f) {
  if (f.coeffs.size() != variables.size()) throw DimensionError("constraint length mismatch: " + f.label);
  equalities.push_back(std::move(f));
}

void ConstraintSystem::add_inequality(LinearForm f) {
  if (f.coeffs.size() != variables.size()) throw DimensionError("constraint length mismatch: " + f.label);
  inequalities.push_back(std::move(f));
}

namespace {

// Standard form A t = b, t >= 0, with x_v = t_{2v} - t_{2v+1}, one surplus per
// inequality and one artificial per row. Artificial columns stay in the
// tableau so that they hold B^-1 at every stage; rows whose surplus column
// is already a unit column use that instead.
class Simplex {
 public:
  Simplex(const ConstraintSystem& sys) : sys_(sys) {
    nvars_ = sys.variables.size();
    rows_ = sys.equalities.size() + sys.inequalities.size();
    structural_ = 2 * nvars_ + sys.inequalities.size();
    cols_ = structural_ + rows_;
    t_ = RationalMatrix(rows_, cols_ + 1);
    sign_.assign(rows_, 1);
    basis_.assign(rows_, 0);
    identity_.assign(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const bool eq = r < sys.equalities.size();
      const LinearForm& f = eq ? sys.equalities[r] : sys.inequalities[r - sys.equalities.size()];
      const Rational rhs = -f.constant;
      // Inequality rows with rhs <= 0 are negated so that their surplus
      // column is a unit column and can start in the basis.
      const int s = (rhs < 0 || (!eq && rhs == 0)) ? -1 : 1;
      sign_[r] = s;
      for (std::size_t v = 0; v < nvars_; ++v) {
        t_(r, 2 * v) = s * f.coeffs[v];
        t_(r, 2 * v + 1) = -s * f.coeffs[v];
      }
      t_(r, cols_) = s * rhs;
      t_(r, structural_ + r) = 1;
      identity_[r] = structural_ + r;
      basis_[r] = structural_ + r;
      if (!eq) {
        const std::size_t slack = 2 * nvars_ + (r - sys.equalities.size());
        t_(r, slack) = -s;
        if (s < 0) {
          identity_[r] = slack;
          basis_[r] = slack;
        }
      }
    }
  }

  LpResult solve(const RationalVector& objective) {
    if (objective.size() != nvars_) throw DimensionError("objective length mismatch");
    LpResult result;

    RationalVector phase1(cols_);
    for (std::size_t r = 0; r < rows_; ++r) phase1[structural_ + r] = -1;
    run(phase1, nullptr);
    if (value(phase1) < 0) {
      result.status = LpStatus::infeasible;
      result.certificate = certificate(phase1);
      return result;
    }
    drive_out_artificials();

    RationalVector cost(cols_);
    for (std::size_t v = 0; v < nvars_; ++v) {
      cost[2 * v] = objective[v];
      cost[2 * v + 1] = -objective[v];
    }
    std::optional<std::size_t> unbounded_column;
    run(cost, &unbounded_column);
    result.point = point();
    if (unbounded_column) {
      result.status = LpStatus::unbounded;
      result.ray = ray(*unbounded_column);
      return result;
    }
    result.status = LpStatus::optimal;
    result.maximum = value(cost);
    result.certificate = certificate(cost);
    return result;
  }

 private:
  bool artificial(std::size_t j) const { return j >= structural_; }

  Rational reduced_cost(const RationalVector& c, std::size_t j) const {
    Rational d = c[j];
    for (std::size_t r = 0; r < rows_; ++r)
      if (!t_(r, j).is_zero()) d -= c[basis_[r]] * t_(r, j);
    return d;
  }

  Rational value(const RationalVector& c) const {
    Rational v = 0;
    for (std::size_t r = 0; r < rows_; ++r) v += c[basis_[r]] * t_(r, cols_);
    return v;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / t_(row, col);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (t_(row, j).is_zero()) continue;
      t_(row, j) *= inv;
      nz.push_back(j);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || t_(r, col).is_zero()) continue;
      const Rational f = t_(r, col);
      for (std::size_t j : nz) t_(r, j) -= f * t_(row, j);
    }
    if (!reduced_.empty() && !reduced_[col].is_zero()) {
      const Rational f = reduced_[col];
      for (std::size_t j : nz) reduced_[j] -= f * t_(row, j);
    }
    basis_[row] = col;
  }

  // Maximizes c from the current basis. Bland's rule: lowest entering index,
  // ties in the ratio test broken by lowest basic index.
  void run(const RationalVector& c, std::optional<std::size_t>* unbounded) {
    reduced_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = reduced_cost(c, j);
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (reduced_[j].sign() > 0) {
          entering = j;
          break;
        }
      }
      if (!entering) {
        reduced_.clear();
        return;
      }
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (t_(r, *entering).sign() <= 0) continue;
        const Rational ratio = t_(r, cols_) / t_(r, *entering);
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) {
        if (unbounded) *unbounded = entering;
        reduced_.clear();
        return;
      }
      pivot(*leave, *entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (!t_(r, j).is_zero()) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  RationalVector point() const {
    RationalVector t(cols_);
    for (std::size_t r = 0; r < rows_; ++r) t[basis_[r]] = t_(r, cols_);
    RationalVector x(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) x[v] = t[2 * v] - t[2 * v + 1];
    return x;
  }

  RationalVector ray(std::size_t entering) const {
    RationalVector t(cols_);
    t[entering] = 1;
    for (std::size_t r = 0; r < rows_; ++r) t[basis_[r]] = -t_(r, entering);
    RationalVector x(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) x[v] = t[2 * v] - t[2 * v + 1];
    return x;
  }

  // w = c_B B^-1 read off the artificial columns, mapped back to the
  // unscaled constraints as multipliers -sign * w.
  Certificate certificate(const RationalVector& c) const {
    RationalVector w(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational s = 0;
      for (std::size_t k = 0; k < rows_; ++k) s += c[basis_[k]] * t_(k, identity_[r]);
      w[r] = s;
    }
    Certificate cert;
    const std::size_t ne = sys_.equalities.size();
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational m = -sign_[r] * w[r];
      if (r < ne) {
        cert.equality_multipliers.push_back(m);
        cert.bound += m * sys_.equalities[r].constant;
      } else {
        cert.inequality_multipliers.push_back(m);
        cert.bound += m * sys_.inequalities[r - ne].constant;
      }
    }
    return cert;
  }

  const ConstraintSystem& sys_;
  std::size_t nvars_ = 0;
  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::size_t cols_ = 0;
  RationalMatrix t_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_;  // column that started as the unit vector of each row
  RationalVector reduced_;
};

bool feasible_point(const ConstraintSystem& sys, const RationalVector& x) {
  if (x.size() != sys.variables.size()) return false;
  for (const auto& f : sys.equalities)
    if (f.evaluate(x) != 0) return false;
  for (const auto& f : sys.inequalities)
    if (f.evaluate(x) < 0) return false;
  return true;
}

// sum z_i a_i + sum y_j b_j (+ objective when given); all entries must vanish.
bool combination_vanishes(const ConstraintSystem& sys, const Certificate& cert, const RationalVector* objective) {
  if (cert.equality_multipliers.size() != sys.equalities.size() ||
      cert.inequality_multipliers.size() != sys.inequalities.size())
    return false;
  RationalVector sum = objective ? *objective : RationalVector(sys.variables.size());
  Rational bound = 0;
  for (std::size_t i = 0; i < sys.equalities.size(); ++i) {
    for (std::size_t v = 0; v < sum.size(); ++v) sum[v] += cert.equality_multipliers[i] * sys.equalities[i].coeffs[v];
    bound += cert.equality_multipliers[i] * sys.equalities[i].constant;
  }
  for (std::size_t j = 0; j < sys.inequalities.size(); ++j) {
    if (cert.inequality_multipliers[j] < 0) return false;
    for (std::size_t v = 0; v < sum.size(); ++v)
      sum[v] += cert.inequality_multipliers[j] * sys.inequalities[j].coeffs[v];
    bound += cert.inequality_multipliers[j] * sys.inequalities[j].constant;
  }
  for (const auto& s : sum)
    if (s != 0) return false;
  return bound == cert.bound;
}

}  // namespace

LpResult rational_feasible(const ConstraintSystem& system, const RationalVector& objective) {
  Simplex simplex(system);
  return simplex.solve(objective);
}

LpResult rational_feasible(const ConstraintSystem& system, const std::string& objective_variable) {
  RationalVector c(system.variables.size());
  c[system.index(objective_variable)] = 1;
  return rational_feasible(system, c);
}

bool replay(const ConstraintSystem& sys, const RationalVector& objective, const LpResult& result) {
  switch (result.status) {
    case LpStatus::optimal:
      return feasible_point(sys, result.point) && dot(objective, result.point) == result.maximum &&
             combination_vanishes(sys, result.certificate, &objective) && result.certificate.bound == result.maximum;
    case LpStatus::infeasible:
      return combination_vanishes(sys, result.certificate, nullptr) && result.certificate.bound < 0;
    case LpStatus::unbounded: {
      if (!feasible_point(sys, result.point) || result.ray.size() != sys.variables.size()) return false;
      for (const auto& f : sys.equalities)
        if (dot(f.coeffs, result.ray) != 0) return false;
      for (const auto& f : sys.inequalities)
        if (dot(f.coeffs, result.ray) < 0) return false;
      return dot(objective, result.ray) > 0;
    }
  }
  return false;
}

std::string serialize_certificate(const ConstraintSystem& sys, const Certificate& cert) {
  std::ostringstream out;
  for (std::size_t i = 0; i < cert.equality_multipliers.size() && i < sys.equalities.size(); ++i)
    if (cert.equality_multipliers[i] != 0)
      out << sys.equalities[i].label << ": " << to_string(cert.equality_multipliers[i]) << "\n";
  for (std::size_t j = 0; j < cert.inequality_multipliers.size() && j < sys.inequalities.size(); ++j)
    if (cert.inequality_multipliers[j] != 0)
      out << sys.inequalities[j].label << ": " << to_string(cert.inequality_multipliers[j]) << "\n";
  out << "bound: " << to_string(cert.bound) << "\n";
  return out.str();
}

}  // namespace threefold
