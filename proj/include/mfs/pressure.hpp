#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfs/characteristics.hpp"
#include "mfs/domain.hpp"
#include "mfs/expr.hpp"
#include "mfs/report.hpp"

namespace mfs {

/// A finite-pressure equilibrium w = grad((x^2 - y^2)/2 + phi) + e^psi grad x
/// with chi = e^psi (x + e^psi / 2), where phi(y, z) is harmonic and
/// -y psi_y + grad phi . grad psi = -1.
///
/// `clebsch_psi` is the log-Clebsch potential; it is unrelated to the psi
/// coordinate of the local Beltrami charts (see symmetry.hpp).
struct ClebschSolution {
  std::string name;
  std::string reference;
  ScalarField phi;
  ScalarField clebsch_psi;
  ScalarField exp_psi;  // e^psi, possibly in a simpler closed form
  VectorField field;
  ScalarField chi;
  DomainSpec domain;
  ResidualReport construction_report;
};

struct ClebschOptions {
  std::string name = "clebsch";
  std::string reference;
  /// Closed form for e^psi (for example y^2 e^z instead of exp(z + 2 log y)),
  /// which keeps the field defined outside the domain of psi itself. Checked
  /// against exp(psi) on the construction samples.
  std::optional<ScalarField> exp_psi_closed_form;
  std::size_t samples = kDefaultSamples;
};

struct ClebschTolerances {
  double laplacian = 1e-9;
  double constraint = 1e-8;
  double force = 1e-8;
  double divergence = 1e-9;
  double curl_identity = 1e-9;
  double chi_constancy = 1e-8;
  double structural = 1e-12;  // x-independence and grad psi . grad x
};

/// The full residual suite: harmonicity of phi, the psi constraint, force
/// balance, divergence, curl w = grad(e^psi) x grad x, constancy of chi along
/// w and curl w, x-independence of phi and psi, and grad psi . grad x.
ResidualReport verify_clebsch(const ClebschSolution& s, const SampleSet& samples, const ClebschTolerances& tol = {});

/// Builds the solution and runs verify_clebsch on `options.samples` Halton
/// points of `domain`; throws ConstructionError with the report on failure.
ClebschSolution make_clebsch(const ScalarField& phi, const ScalarField& psi, const DomainSpec& domain,
                             const ClebschOptions& options = {});

struct ClebschFamilyParams {
  double alpha = 1.0;
  double beta = 0.5;
  double gamma = 0.2;
  double delta = 0.3;
};

/// The four-parameter family phi = alpha (z^2 - y^2)/2 + beta z + gamma y,
/// psi = log(s)/(1 + alpha) + delta s^(alpha/(1 + alpha)) (beta/alpha + z)
/// with s = (1 + alpha) y - gamma. Requires alpha != 0, alpha != -1 and
/// s > 0 on the domain (checked on the samples); throws std::invalid_argument
/// otherwise.
ClebschSolution make_clebsch_family(const ClebschFamilyParams& params, const DomainSpec& domain);

std::vector<std::string> pressure_catalog_names();
bool is_pressure_name(const std::string& name);
/// w4_1 ... w4_4. Throws std::invalid_argument on an unknown name.
ClebschSolution pressure_catalog(const std::string& name);

/// Box [-1,1] x [0.5,1.5] x [0.5,1.5], away from y = 0 and z = 0.
DomainSpec offset_box();

/// psi recomputed from its constraint -y psi_y + grad phi . grad psi = -1,
/// a transport equation along (0, phi_y - y, phi_z), with the closed form as
/// data on the plane z = z0.
struct PsiCharacteristicsResult {
  std::vector<CharacteristicValue> values;
  std::vector<double> exact;
  double sup_error = 0.0;
  std::size_t failures = 0;
  ResidualReport report;  // check "psi_vs_closed_form"
};

/// z0 defaults to the middle of the domain's z range.
PsiCharacteristicsResult psi_from_characteristics(const ClebschSolution& s, const SampleSet& targets,
                                                  std::optional<double> z0 = std::nullopt,
                                                  double tolerance = 1e-6);

}  // namespace mfs
