#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mfs/domain.hpp"
#include "mfs/expr.hpp"
#include "mfs/report.hpp"

namespace mfs {

/// Two functions of (x, y) that should be harmonic conjugates.
struct HarmonicPair {
  ScalarField u, v;
};

/// Cauchy-Riemann residuals |u_x - v_y| and |u_y + v_x|, the Laplacians of u
/// and v, and |u_z| + |v_z|.
ResidualReport check_harmonic_pair(const HarmonicPair& pair, const SampleSet& samples, double tolerance = 1e-9);

/// Curvilinear coordinates (x1, x2, x3) proposed for the representation
/// w = cos(x3) grad x2 + sin(x3) grad x1.
struct AdmissibleChart {
  std::array<ScalarField, 3> x;
  bool orthogonal = false;
};

inline constexpr double kAdmissibleTolerance = 1e-7;

/// Residuals of the metric conditions built from g^ij = grad x^i . grad x^j
/// and the Laplacians of x^i. Orthogonal charts are checked against the
/// reduced system (g11 = g22, vanishing off-diagonal g^ij,
/// Lap x2 cos x3 = Lap x1 sin x3); others against the full three equations.
/// Residuals are signed, so an inadmissible chart shows which way it fails.
ResidualReport verify_admissible(const AdmissibleChart& chart, const SampleSet& samples,
                                 double tolerance = kAdmissibleTolerance);

/// A Beltrami field curl w = h w with the region where it is meant to hold.
struct BeltramiRecord {
  std::string name;
  std::string reference;    // source tag shown by the catalog
  std::string description;  // one line, human readable
  VectorField field;
  ScalarField h;
  DomainSpec domain;
  std::optional<AdmissibleChart> chart;
};

inline constexpr double kBeltramiTolerance = 1e-8;

struct HarmonicConstructionOptions {
  std::string name = "harmonic_pair";
  /// A simpler expression for h = d(sigma)/dz; checked against the exact
  /// derivative before it is used.
  std::optional<ScalarField> h_closed_form;
  std::size_t samples = kDefaultSamples;
  double tolerance = kBeltramiTolerance;
};

/// w = cos(sigma) grad v + sin(sigma) grad u with h = sigma'(z). The pair is
/// checked for the Cauchy-Riemann relations, sigma for depending on z alone
/// with nonzero derivative, and the result for the Beltrami and divergence
/// residuals, all on `domain`. Throws ConstructionError carrying the failed
/// report.
BeltramiRecord from_harmonic_pair(const HarmonicPair& pair, const ScalarField& sigma, const DomainSpec& domain,
                                  const HarmonicConstructionOptions& options = {});

/// |curl w - h w|, |div w|, and helicity density |w . curl w| (as a lower
/// bound, nontrivial fields stay away from zero).
ResidualReport verify_beltrami(const BeltramiRecord& rec, const SampleSet& samples,
                               double tolerance = kBeltramiTolerance);

/// |w . grad h|. The Beltrami residual is reported alongside, so a record
/// that is not Beltrami with its h is flagged rather than silently passed.
ResidualReport verify_h_invariance(const BeltramiRecord& rec, const SampleSet& samples, double tolerance = 1e-9);

// --- catalog --------------------------------------------------------------

std::vector<std::string> beltrami_catalog_names();
bool is_beltrami_name(const std::string& name);
/// Throws std::invalid_argument on an unknown name.
BeltramiRecord beltrami_catalog(const std::string& name);

}  // namespace mfs
