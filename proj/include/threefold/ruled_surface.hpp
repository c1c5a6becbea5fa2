#pragma once

#include "threefold/rational.hpp"

#include <optional>

namespace threefold {

/// A section C0 of the exceptional ruled surface F -> C with C0.C0 = tau and
/// C0.M = mu, over a blowup with invariant gamma.
struct RuledSurfaceData {
  Rational tau = 0;
  int mu = 1;
  Rational gamma = 0;
  std::optional<int> tau0;
};

struct SectionAndFF {
  Rational f_dot_c0;
  /// F.F restricted to F, written as ff_c0_coeff * C0 + ff_m_coeff * M.
  Rational ff_c0_coeff;
  Rational ff_m_coeff;
};

/// Throws std::invalid_argument when mu < 1.
SectionAndFF section_and_ff(const RuledSurfaceData& data);

struct EffectiveCurveCheck {
  bool admissible = false;
  Rational self_int;
  Rational f_dot_v;
};

/// V = a C0 + b M on a ruled surface with normalized invariant tau0 >= 0 and
/// mu = 1. Throws std::invalid_argument when tau0 < 0.
EffectiveCurveCheck effective_curve_check(int tau0, const Rational& gamma, const Integer& a, const Rational& b);

}  // namespace threefold
