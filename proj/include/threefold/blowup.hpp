#pragma once

#include "threefold/intersection_ring.hpp"

#include <optional>

namespace threefold {

struct SurfaceData {
  DivisorClass surface;
  int mu = 1;
  Rational kappa = 0;  // S . C
};

struct CurveCenterSpec {
  CurveClass curve_class;
  int genus = 0;
  std::vector<std::string> disjoint_from;
  std::optional<bool> normal_bundle_decomposable;
  std::optional<int> tau0;
  std::optional<SurfaceData> surface_data;
  std::optional<bool> movable_witness;
};

struct BlowupStep {
  StepKind kind = StepKind::point;
  std::optional<CurveCenterSpec> center;

  static BlowupStep point() { return {StepKind::point, std::nullopt}; }
  static BlowupStep curve(CurveCenterSpec c) { return {StepKind::curve, std::move(c)}; }
};

struct BlowupTower {
  BaseSpec base;
  std::vector<BlowupStep> steps;

  /// models[0] is the base, models[k] the model after step k.
  std::vector<ThreefoldModel> evaluate() const;
};

ThreefoldModel blow_up_point(const ThreefoldModel& model);
ThreefoldModel blow_up_point(ThreefoldModel&& model);

/// Throws std::invalid_argument for a zero or mis-sized class, negative genus or mu < 1.
ThreefoldModel blow_up_curve(const ThreefoldModel& model, const CurveCenterSpec& center);
ThreefoldModel blow_up_curve(ThreefoldModel&& model, const CurveCenterSpec& center);

ThreefoldModel apply_step(const ThreefoldModel& model, const BlowupStep& step);

/// c1 . C + 2g - 2.
Rational gamma(const ThreefoldModel& model, const CurveCenterSpec& center);

/// Coordinate maps between a model and its blowup. `after` must be `before`
/// blown up once (checked through the recorded history); otherwise
/// std::invalid_argument.
DivisorClass pullback_divisor(const ThreefoldModel& before, const ThreefoldModel& after, const DivisorClass& d);
DivisorClass pushforward_divisor(const ThreefoldModel& before, const ThreefoldModel& after, const DivisorClass& d);
CurveClass pullback_curve(const ThreefoldModel& before, const ThreefoldModel& after, const CurveClass& c);
CurveClass pushforward_curve(const ThreefoldModel& before, const ThreefoldModel& after, const CurveClass& c);

/// Drops coordinates beyond the first `size` ones: the pushforward through
/// the last few blowups of a tower.
DivisorClass truncate(const DivisorClass& d, std::size_t size);
CurveClass truncate(const CurveClass& c, std::size_t size);

/// d * l - sum L_i over the given point indices (1-based), genus 0. Needs a
/// model over p3 whose point blowups produced L_1, L_2, ...
CurveCenterSpec line_strict_transform(const ThreefoldModel& model, const std::vector<int>& point_indices, int degree);

}  // namespace threefold
