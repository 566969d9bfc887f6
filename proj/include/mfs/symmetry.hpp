#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mfs/characteristics.hpp"
#include "mfs/domain.hpp"
#include "mfs/expr.hpp"
#include "mfs/report.hpp"

namespace mfs {

/// Euclidean Killing field a + b x r.
struct KillingParams {
  Vec3 a;
  Vec3 b;

  VectorField field() const { return killing_field(a, b); }
  double norm() const;
  std::string str() const;
};

KillingParams operator+(const KillingParams& k1, const KillingParams& k2);
KillingParams operator*(double s, const KillingParams& k);

/// Parses a generator name: tx, ty, tz (translations), rot-x, rot-y, rot-z
/// (rotations about the coordinate axes), or "a1,a2,a3,b1,b2,b3".
KillingParams parse_generator(const std::string& text);

/// ((a + b x r) . grad) w - b x w.
VectorField lie_euclidean(const VectorField& w, const KillingParams& k);

inline constexpr double kKillingThreshold = 1e-6;

struct KillingReport {
  std::array<double, 6> singular_values{};  // descending
  std::array<double, 6> relative{};         // sigma_i / sigma_1
  int null_dim = 0;
  std::vector<KillingParams> null_basis;  // orthonormal in R^6
  double threshold = kKillingThreshold;
  /// Largest relative singular value counted as null, and smallest counted
  /// as non-null; a narrow gap between them marks a borderline verdict.
  double largest_null_ratio = 0.0;
  double smallest_nonnull_ratio = 0.0;
  /// max over fresh samples of |L_k w| / (|k| max|grad w|) per basis vector.
  std::vector<double> out_of_sample;
  bool degenerate_sampling = false;
  std::string note;
  Provenance provenance;
};

/// Stacks L_k w at the samples into a 3n x 6 matrix (rows scaled by
/// 1/max(1, |w(p)|)), takes its SVD, and reports the directions with
/// sigma_i / sigma_1 < threshold. Null vectors are re-checked on a fresh
/// random sample set. Requires at least 6 evaluable samples.
KillingReport killing_scan(const VectorField& w, const SampleSet& samples, double threshold = kKillingThreshold);
KillingReport killing_scan(const VectorField& w, const DomainSpec& domain, std::size_t n_samples = kDefaultSamples,
                           double threshold = kKillingThreshold, SamplerConfig sampler = {});

nlohmann::ordered_json to_json(const KillingParams& k);
nlohmann::ordered_json to_json(const KillingReport& r);

// --- local symmetries -------------------------------------------------------

/// Local coordinates (ell, chart_psi, theta) in which a Beltrami field reads
/// w = cos(theta) grad chart_psi + sin(theta) grad ell.
struct LocalChart {
  ScalarField ell;
  ScalarField chart_psi;
  ScalarField theta;
};

/// Tangent vectors (d_ell, d_psi, d_theta): the columns of the inverse of the
/// matrix whose rows are the coordinate gradients.
std::array<VectorField, 3> tangent_basis(const LocalChart& chart);

struct LocalSymmetrySpec {
  VectorField xi;
  LocalChart chart;
  /// The free choices, recorded as text ("p = ..., g = ...").
  std::string choices;
  /// When set, w x xi = grad g is checked as well.
  std::optional<ScalarField> g;
};

/// xi = h [alpha d_ell + (g_theta + alpha cos theta)/sin theta d_psi + g_L d_theta],
/// where g_theta and g_L are the partials of g(L_theta, theta) already
/// expressed as fields on R^3.
VectorField local_symmetry_field(const LocalChart& chart, const ScalarField& h, const ScalarField& alpha,
                                 const ScalarField& g_theta, const ScalarField& g_L);

/// |L_xi w|, |div xi| and, when spec.g is set, |w x xi - grad g|.
ResidualReport verify_local_symmetry(const VectorField& w, const LocalSymmetrySpec& spec, const SampleSet& samples,
                                     double tolerance = 1e-8);

// Free functions of the worked examples. p is read as p(theta, s) from the
// x and y slots of its expression; g and q as functions of theta from the x
// slot (the compose() convention).

/// Minimal ABC flow: chart (x, y, z), alpha = p(z, y - x cot z).
LocalSymmetrySpec abc_local_symmetry(const ScalarField& p, const ScalarField& g);
/// Cylindrical field: chart (atan2(y, x), log r, z) with the closed-form alpha.
/// The overall factor h = -1 is dropped, which flips the sign of g in
/// w x xi = grad g (spec.g holds -g).
LocalSymmetrySpec cylindrical_local_symmetry(const ScalarField& p, const ScalarField& g, const ScalarField& q);
/// example3: chart (e^x sin y, -e^x cos y, z^2) with the closed-form alpha.
LocalSymmetrySpec example3_local_symmetry(const ScalarField& p, const ScalarField& g);

/// alpha computed numerically by the characteristics engine and compared
/// with its closed form.
struct AlphaResult {
  std::string example;
  ScalarField closed_form;  // on R^3 (Cartesian)
  std::vector<CharacteristicValue> values;  // points in chart coordinates
  std::vector<double> exact;                // closed form at the same points
  double sup_error = 0.0;
  std::size_t failures = 0;
  ResidualReport report;
};

/// Default sampling regions used by alpha_from_characteristics.
DomainSpec alpha_domain(const std::string& example);

/// Solves the linear transport equation for alpha in the example's chart
/// ("abc_minimal" or "cylindrical") at samples of `domain`, starting from the
/// closed form restricted to the initial surface (x = 0, respectively
/// theta = q(z)). The report's check "alpha_vs_closed_form" holds the
/// pointwise errors.
AlphaResult alpha_from_characteristics(const std::string& example, const ScalarField& p, const ScalarField& g,
                                       const ScalarField& q, const SampleSet& targets, double tolerance = 1e-6);

}  // namespace mfs
