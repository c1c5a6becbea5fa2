#pragma once

#include "threefold/linalg.hpp"

#include <set>
#include <string>
#include <vector>

namespace threefold {

enum class BasisKind { divisor, curve };
enum class Origin { base, pullback, exceptional };

struct BasisElement {
  std::string name;
  BasisKind kind = BasisKind::divisor;
  Origin origin = Origin::base;
  std::string source;  // name of the pulled-back element, if any
  int step = 0;        // blowup step that created the element; 0 for base elements

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Coefficient vector over one of the two bases. The tag keeps divisor and
/// curve classes from being mixed up at compile time.
template <typename Tag>
class ClassVector {
 public:
  ClassVector() = default;
  explicit ClassVector(std::size_t n) : coeffs_(n) {}
  explicit ClassVector(RationalVector coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const RationalVector& coefficients() const { return coeffs_; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend ClassVector operator+(ClassVector a, const ClassVector& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  friend ClassVector operator-(ClassVector a, const ClassVector& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
    return a;
  }
  friend ClassVector operator-(ClassVector a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend ClassVector operator*(const Rational& s, ClassVector a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  friend bool operator==(const ClassVector& a, const ClassVector& b) { return a.coeffs_ == b.coeffs_; }

 private:
  static void check(const ClassVector& a, const ClassVector& b) {
    if (a.size() != b.size()) throw DimensionError("class length mismatch");
  }
  RationalVector coeffs_;
};

struct DivisorTag {};
struct CurveTag {};
using DivisorClass = ClassVector<DivisorTag>;
using CurveClass = ClassVector<CurveTag>;

enum class StepKind { point, curve };

/// What a blowup did, kept on the resulting model.
struct BlowupRecord {
  StepKind kind = StepKind::point;
  std::string exceptional_divisor;  // E_k or F_k
  std::string exceptional_curve;    // L_k or M_k
  CurveClass center;                // curve steps: class in the model before the step
  int genus = 0;
  Rational c1_dot_center = 0;
  Rational gamma = 0;

  friend bool operator==(const BlowupRecord&, const BlowupRecord&) = default;
};

struct ThreefoldModel {
  std::string label;
  std::string base_name;
  std::vector<BasisElement> divisor_basis;
  std::vector<BasisElement> curve_basis;
  /// mul2[i][j] = D_i . D_j as a curve class.
  std::vector<std::vector<CurveClass>> mul2;
  /// pairing(i, a) = D_i . C_a.
  RationalMatrix pairing;
  DivisorClass c1;
  CurveClass c2;
  Integer euler = 0;
  int picard = 0;
  std::set<std::string> base_flags;
  std::vector<BlowupRecord> history;

  std::size_t size() const { return divisor_basis.size(); }
  std::size_t divisor_index(const std::string& name) const;
  std::size_t curve_index(const std::string& name) const;
  DivisorClass divisor(const std::string& name) const;
  CurveClass curve(const std::string& name) const;
  DivisorClass zero_divisor() const { return DivisorClass(size()); }
  CurveClass zero_curve() const { return CurveClass(size()); }
  int point_count() const;
  int curve_count() const;
};

/// Explicit tables for a user-supplied base.
struct CustomTables {
  std::string label = "custom";
  std::vector<std::string> divisor_names;
  std::vector<std::string> curve_names;
  /// products[i][j] = coefficients of D_i . D_j in the curve basis.
  std::vector<std::vector<RationalVector>> products;
  std::vector<RationalVector> pairing;
  RationalVector c1;
  RationalVector c2;
  Integer euler = 0;
  std::set<std::string> flags;
};

struct BaseSpec {
  enum class Kind { p3, p2xp1, p1cubed, complete_intersection, custom };
  Kind kind = Kind::p3;
  int n = 0;
  std::vector<int> degrees;
  CustomTables custom;

  static BaseSpec p3() { return {Kind::p3, 0, {}, {}}; }
  static BaseSpec p2xp1() { return {Kind::p2xp1, 0, {}, {}}; }
  static BaseSpec p1cubed() { return {Kind::p1cubed, 0, {}, {}}; }
  static BaseSpec complete_intersection(int n, std::vector<int> degrees) {
    return {Kind::complete_intersection, n, std::move(degrees), {}};
  }
  static BaseSpec from_tables(CustomTables tables) { return {Kind::custom, 0, {}, std::move(tables)}; }
};

inline const char* kPicardRankOne = "picard-rank-1";
inline const char* kC2MovablePositive = "c2-movable-positive";

/// Throws ValidationError for malformed custom tables or bad complete-intersection data.
ThreefoldModel make_base(const BaseSpec& spec);

/// Closed form for the h^2 coefficient of c2 of a complete intersection of the
/// given degrees in P^n: n(n+1)/2 - sum_{i<j} d_i d_j - (n+1) sum d + (sum d)^2.
Integer complete_intersection_c2_coefficient(int n, const std::vector<int>& degrees);

/// Every violated model invariant; empty when the model is well formed.
std::vector<std::string> validate(const ThreefoldModel& model);

CurveClass multiply_divisors(const ThreefoldModel& model, const DivisorClass& a, const DivisorClass& b);
Rational pair(const ThreefoldModel& model, const DivisorClass& d, const CurveClass& c);
Rational triple(const ThreefoldModel& model, const DivisorClass& a, const DivisorClass& b, const DivisorClass& c);

/// Bases, products, pairing, Chern classes, Euler number and Picard number agree.
bool same_intersection_data(const ThreefoldModel& a, const ThreefoldModel& b);

/// "2*A + 3*B" style rendering against the model's basis names.
std::string format_divisor(const ThreefoldModel& model, const DivisorClass& d);
std::string format_curve(const ThreefoldModel& model, const CurveClass& c);

}  // namespace threefold
