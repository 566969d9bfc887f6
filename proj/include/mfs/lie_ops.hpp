#pragma once

#include <string>
#include <vector>

#include "mfs/beltrami.hpp"
#include "mfs/symmetry.hpp"

namespace mfs {

/// |L_k(curl w) - curl(L_k w)| (check "commutator_defect") and |div w|
/// ("divergence", the solenoidal precondition).
ResidualReport commutator_defect(const VectorField& w, const KillingParams& k, const SampleSet& samples,
                                 double tolerance = 1e-5);

/// |(a + b x r) . grad h| as check "lie_h".
ResidualReport h_symmetry_check(const ScalarField& h, const KillingParams& k, const SampleSet& samples,
                                double tolerance = 1e-9);

inline constexpr int kMaxOrbitLength = 4;

struct OrbitOptions {
  std::size_t samples = kDefaultSamples;
  SamplerConfig sampler{};
  double hypothesis_tolerance = 1e-9;
  double beltrami_tolerance = 1e-7;
  double divergence_tolerance = 1e-8;
  /// A member whose largest sampled magnitude is below this fraction of the
  /// base field's is a terminal null: every later member vanishes too.
  double null_threshold = 1e-12;
};

/// Members L^n_k w for n = 0..N with their Beltrami checks.
struct LieOrbit {
  BeltramiRecord base;
  KillingParams generator;
  int requested = 0;
  std::vector<VectorField> members;
  std::vector<ResidualReport> reports;
  std::vector<double> max_magnitude;
  bool terminal_null = false;  // the last member is (numerically) zero
  bool truncated = false;      // stopped because a member failed its checks
  ResidualReport hypothesis;
  std::string note;
};

/// Requires L_k h = 0 on the samples of base.domain (else ConstructionError
/// carrying the hypothesis report) and 0 <= n <= kMaxOrbitLength.
LieOrbit lie_generate(const BeltramiRecord& base, const KillingParams& k, int n, const OrbitOptions& opt = {});

nlohmann::ordered_json to_json(const LieOrbit& orbit);

/// Pullback of w by the flow of a + b x r at time eps:
/// exp(-eps B) w(phi_eps(p)), where B v = b x v.
VectorField isometry_pullback(const VectorField& w, const KillingParams& k, double eps);

/// The flow phi_t of a + b x r applied to p.
Point3 killing_flow(const KillingParams& k, double t, const Point3& p);

}  // namespace mfs
