#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfs/beltrami.hpp"
#include "mfs/pressure.hpp"
#include "mfs/symmetry.hpp"

namespace mfs {

/// What fills a region: a finite-pressure equilibrium or a Beltrami field.
using RegionSource = std::variant<ClebschSolution, BeltramiRecord>;

struct Region {
  std::string name;  // "core" or "shell"
  DomainSpec domain;
  RegionSource source;

  const VectorField& field() const;
  /// chi for an equilibrium; none for a Beltrami field.
  std::optional<ScalarField> chi() const;
  std::string source_name() const;
  std::string kind() const;  // "pressure" | "beltrami"
};

/// A field on a ball of radius `outer` split at the sphere of radius `eps`
/// around `center`: one field inside, another in the shell.
struct PiecewiseField {
  Point3 center;
  double eps = 0.0;
  double outer = 1.0;
  DomainSpec ambient;
  std::vector<Region> regions;  // core, then shell

  /// Index of the owning region, or -1 outside the ambient ball. Points on
  /// the interface sphere belong to the core.
  int region_of(const Point3& p) const;
  Vec3 operator()(const Point3& p) const;
};

/// Rejects eps outside (0, outer), a core whose own domain does not contain
/// the closed core ball, and a shell field that cannot be evaluated on the
/// shell or whose domain does not contain it. The last case throws
/// ConstructionError with a "shell_singularity" report.
PiecewiseField assemble(const RegionSource& core, const BeltramiRecord& shell, double eps, double outer = 1.0,
                        const Point3& center = {0, 0, 0});

/// The default: the first pressure example inside radius 0.4, the
/// exponential Beltrami field outside, unit ambient ball.
PiecewiseField default_composite();

struct L2Estimate {
  double integral = 0.0;        // of |w|^2 over the ambient ball
  double standard_error = 0.0;
  double relative_error = 0.0;  // standard_error / integral
  std::size_t points = 0;
  std::size_t failed = 0;
  bool finite = false;
};

/// Plain Monte Carlo with uniformly random points (seeded).
L2Estimate l2_estimate(const PiecewiseField& pf, std::size_t points = 100000, std::uint64_t seed = 0);

/// `count` nearly uniform points on a sphere (Fibonacci lattice).
std::vector<Point3> fibonacci_sphere(const Point3& center, double radius, std::size_t count);

struct CompositeOptions {
  std::size_t samples_per_region = kDefaultSamples;
  SamplerConfig sampler{};
  std::size_t mc_points = 100000;
  std::uint64_t mc_seed = 0;
  double max_relative_error = 0.02;
  std::size_t interface_points = 2000;
};

struct CompositeReport {
  std::vector<ResidualReport> regions;
  L2Estimate l2;
  /// Informational: interface jump and normal flux. Their pass flags mean
  /// "continuous" / "tangent" to 1e-12 and do not enter passed().
  std::vector<CheckStats> interface;
  KillingReport core_symmetry;
  bool passed() const;
};

/// Region residuals come from the owning modules (verify_clebsch,
/// verify_beltrami) on samples of each region.
CompositeReport verify_composite(const PiecewiseField& pf, const CompositeOptions& opt = {});

nlohmann::ordered_json to_json(const PiecewiseField& pf);
nlohmann::ordered_json to_json(const CompositeReport& r);

}  // namespace mfs
