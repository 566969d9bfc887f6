#pragma once

#include <optional>
#include <string>

#include "mfs/domain.hpp"
#include "mfs/expr.hpp"
#include "mfs/report.hpp"

namespace mfs {

enum class ChartKind { kTranslational, kAxisymmetric };

std::string to_string(ChartKind kind);
ChartKind parse_chart_kind(const std::string& s);  // "translational" | "axisymmetric"

/// Coordinates with an ignorable x^3.
/// translational: (x, y, z), x^3 = z, d_3 = e_z, g_33 = 1.
/// axisymmetric: (z, r^2/2, phi), x^3 = phi, d_3 = (-y, x, 0), g_33 = r^2.
/// Both have Jacobian 1.
struct SymmetricChart {
  ChartKind kind = ChartKind::kTranslational;

  ScalarField x3() const;
  ScalarField g33() const;
  VectorField d3() const;
  double jacobian() const { return 1.0; }
};

/// Theta is an expression in Cartesian x, y, z that should not depend on x^3;
/// w3 (the covariant component) and chi are functions of Theta, written in
/// the variable T (stored in the x slot, see parse_univariate).
struct GSProblem {
  SymmetricChart chart;
  ScalarField theta;
  ScalarField w3;
  ScalarField chi;
};

/// Delta Theta - grad Theta . grad log g33 - g33 chi'(Theta) + w3 w3'(Theta)
///   - g33 w3 div(d_3 x grad x^3 / g33).
ScalarField gs_residual_field(const GSProblem& prob);

/// Checks "gs_residual" (|residual|), "fifth_term" (the divergence term on
/// its own) and "ignorable" (|d_3 . grad Theta|).
ResidualReport gs_residual(const GSProblem& prob, const SampleSet& samples, double tolerance = 1e-10);

struct GSReconstruction {
  VectorField field;  // grad Theta x grad x^3 + (w3 / g33) d_3
  ScalarField chi;    // chi(Theta)
};

GSReconstruction gs_reconstruct(const GSProblem& prob);

nlohmann::ordered_json to_json(const GSProblem& prob);

/// Data for the generalized Grad-Shafranov system: w = Psi grad Theta + grad Phi
/// with curl w = grad x1 x grad x2, and Psi, Theta functions of (x1, x2).
struct GGSData {
  ScalarField theta;
  ScalarField psi;
  ScalarField x1;
  ScalarField x2;
  /// When absent, Phi is recovered by integrating w - Psi grad Theta
  /// (w is then required).
  std::optional<ScalarField> phi;
  std::optional<VectorField> field;
};

struct GGSOptions {
  double tolerance = 1e-6;
  double singular_gradient = 1e-10;
  /// Path integration of Phi.
  double step = 1e-3;
  double path_tolerance = 1e-6;
  /// Start of the integration paths; defaults to the centre of the domain's
  /// bounding box.
  std::optional<Point3> base;
};

/// Checks "psi_theta" (Psi_1 Theta_2 - Psi_2 Theta_1 - 1), "ggse" (the
/// generalized equation's left side minus 1) and, with a field, "curl_w"
/// (|curl w - grad Psi x grad Theta|), "decomposition" (|w - Psi grad Theta
/// - grad Phi|) and "phi_path_independence". Samples where |grad Theta| is
/// below the singular threshold make the check refuse: the report then
/// contains only the failing "theta_gradient" check and a note.
ResidualReport ggse_check(const GGSData& data, const SampleSet& samples, const GGSOptions& opt = {});

/// Phi along two axis-parallel paths (x, y, z order and z, y, x order) from
/// `base` to p, with composite Simpson steps of at most `step`.
std::pair<double, double> integrate_phi_paths(const VectorField& grad_phi, const Point3& base, const Point3& p,
                                              double step);

/// The decomposition of the pressure example with phi = z, psi = -z:
/// x1 = e^-z, x2 = x, Theta = -x1 x2 - x1^2 / 2, Psi = -log x1 = z.
GGSData ggse_example_w4_1();

}  // namespace mfs
