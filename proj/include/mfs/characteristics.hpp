#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfs/domain.hpp"
#include "mfs/expr.hpp"

namespace mfs {

/// First-order linear PDE  a . grad u = source + linear * u, with u given on
/// the surface {manifold = 0}. Along a characteristic dX/dt = a(X) it becomes
/// du/dt = source + linear * u.
struct CharacteristicsProblem {
  VectorField advect;
  ScalarField source = 0.0;
  ScalarField linear = 0.0;
  ScalarField manifold;
  ScalarField initial_data;
  /// When set, a characteristic that leaves this region is a failure.
  std::optional<DomainSpec> region;
};

struct CharacteristicsOptions {
  double step = 1e-3;
  std::size_t max_steps = 1'000'000;
};

struct CharacteristicValue {
  Point3 point;
  double value = 0.0;
  /// |u(h) - u(h/2)| * 16/15, the Richardson estimate of the RK4 error.
  double error_estimate = 0.0;
  /// Parameter length of the characteristic from the surface to the point.
  double transit = 0.0;
  bool ok = false;
  std::string failure;
};

/// For each target: traces the characteristic back to the initial surface
/// with fixed-step RK4 (the last step shortened to land on the surface), then
/// integrates u forward to the target. Failures (surface never reached
/// within the step budget, left `region`, characteristic tangent to the
/// surface, evaluation errors) are reported per point. Targets on the
/// surface return the initial data exactly.
std::vector<CharacteristicValue> solve_characteristics(const CharacteristicsProblem& prob,
                                                       const std::vector<Point3>& targets,
                                                       const CharacteristicsOptions& options = {});

}  // namespace mfs
