#include "threefold/ruled_surface.hpp"

#include <stdexcept>

namespace threefold {

SectionAndFF section_and_ff(const RuledSurfaceData& d) {
  if (d.mu < 1) throw std::invalid_argument("section multiplicity mu must be >= 1");
  const Rational mu(d.mu);
  SectionAndFF out;
  out.f_dot_c0 = (d.gamma * mu - d.tau / mu) / 2;
  out.ff_c0_coeff = -1 / mu;
  out.ff_m_coeff = (d.tau / (mu * mu) + d.gamma) / 2;
  return out;
}

EffectiveCurveCheck effective_curve_check(int tau0, const Rational& gamma, const Integer& a, const Rational& b) {
  if (tau0 < 0) throw std::invalid_argument("tau0 must be non-negative");
  const Rational ra(a);
  const Rational t(tau0);
  EffectiveCurveCheck out;
  out.self_int = ra * ra * t + 2 * ra * b;
  // e = -C0 + (tau0 + gamma)/2 M with C0.C0 = tau0, C0.M = 1, M.M = 0.
  out.f_dot_v = ra * (gamma - t) / 2 - b;

  const bool is_c0 = a == 1 && b == 0;
  const bool is_m = a == 0 && b == 1;
  bool in_range = false;
  if (tau0 == 0) {
    in_range = a > 0 && b >= 0;
  } else {
    in_range = (a == 1 && b >= 0) || (a >= 2 && b >= -ra * t / 2);
  }
  out.admissible = is_c0 || is_m || in_range;
  return out;
}

}  // namespace threefold
