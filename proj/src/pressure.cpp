#include "mfs/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfs {
namespace {

const ScalarField X = coord(0), Y = coord(1), Z = coord(2);

double laplacian(const Taylor3& t) { return 2.0 * (t.coeff(2, 0, 0) + t.coeff(0, 2, 0) + t.coeff(0, 0, 2)); }
Vec3 gradient(const Taylor3& t) { return {t.coeff(1, 0, 0), t.coeff(0, 1, 0), t.coeff(0, 0, 1)}; }

}  // namespace

DomainSpec offset_box() { return DomainSpec::box({-1, 0.5, 0.5}, {1, 1.5, 1.5}); }

ResidualReport verify_clebsch(const ClebschSolution& s, const SampleSet& samples, const ClebschTolerances& tol) {
  ResidualReport r;
  r.subject = "Clebsch equilibrium " + s.name;
  r.provenance = provenance_of(samples);
  const VectorField grad_chi = grad(s.chi);
  const VectorField grad_exp_psi = grad(s.exp_psi);
  r.checks = compute_checks(
      {"laplacian_phi", "psi_constraint", "force_balance", "divergence", "curl_identity", "chi_along_w",
       "chi_along_curl", "x_independence", "psi_orthogonal_to_x"},
      samples,
      [&](const Point3& p, double* out) {
        const Taylor3 phi = s.phi.taylor(p, 2);
        const Vec3 gphi = gradient(phi);
        const Vec3 gpsi = grad(s.clebsch_psi)(p);
        const auto t = s.field.taylor(p, 1);
        const Vec3 w(t[0].value(), t[1].value(), t[2].value());
        auto d = [&](int comp, int axis) { return t[comp].coeffs()[1 + axis]; };
        const Vec3 c(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
        const Vec3 gchi = grad_chi(p);
        out[0] = std::abs(laplacian(phi));
        out[1] = std::abs(-p.y * gpsi.y + dot(gphi, gpsi) + 1.0);
        out[2] = norm(cross(w, c) - gchi);
        out[3] = std::abs(d(0, 0) + d(1, 1) + d(2, 2));
        out[4] = norm(c - cross(grad_exp_psi(p), Vec3{1, 0, 0}));
        out[5] = std::abs(dot(w, gchi));
        out[6] = std::abs(dot(c, gchi));
        out[7] = std::abs(gphi.x) + std::abs(gpsi.x);
        out[8] = std::abs(gpsi.x);
      },
      {tol.laplacian, tol.constraint, tol.force, tol.divergence, tol.curl_identity, tol.chi_constancy,
       tol.chi_constancy, tol.structural, tol.structural});
  return r;
}

ClebschSolution make_clebsch(const ScalarField& phi, const ScalarField& psi, const DomainSpec& domain,
                             const ClebschOptions& options) {
  ClebschSolution s;
  s.name = options.name;
  s.reference = options.reference;
  s.phi = phi;
  s.clebsch_psi = psi;
  s.exp_psi = options.exp_psi_closed_form ? *options.exp_psi_closed_form : exp(psi);
  s.field = grad((X * X - Y * Y) / 2.0 + phi) + s.exp_psi * grad(X);
  s.chi = s.exp_psi * (X + s.exp_psi / 2.0);
  s.domain = domain;

  const SampleSet samples = sample_domain(domain, options.samples);
  ResidualReport report = verify_clebsch(s, samples);
  if (options.exp_psi_closed_form) {
    const ScalarField closed = *options.exp_psi_closed_form;
    report.checks.push_back(compute_check(
        "exp_psi_closed_form", samples,
        [&](const Point3& p) {
          const double e = std::exp(psi(p));
          return std::abs(closed(p) - e) / std::max(1.0, std::abs(e));
        },
        1e-12));
  }
  if (!report.passed()) {
    throw ConstructionError("make_clebsch: residual checks failed for " + options.name, std::move(report));
  }
  s.construction_report = std::move(report);
  return s;
}

ClebschSolution make_clebsch_family(const ClebschFamilyParams& prm, const DomainSpec& domain) {
  const double a = prm.alpha, b = prm.beta, g = prm.gamma, d = prm.delta;
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(g) && std::isfinite(d))) {
    throw std::invalid_argument("make_clebsch_family: parameters must be finite");
  }
  if (a == 0.0) throw std::invalid_argument("make_clebsch_family: alpha = 0 is excluded (beta/alpha)");
  if (a == -1.0) throw std::invalid_argument("make_clebsch_family: alpha = -1 is excluded (division by 1 + alpha)");

  const ScalarField s = (1.0 + a) * Y - g;
  const SampleSet probe = sample_domain(domain, kDefaultSamples);
  const CheckStats positive =
      compute_check("s_positive", probe, [&](const Point3& p) { return s(p); }, 0.0, CheckStats::Bound::kLower);
  if (!positive.pass) {
    throw std::invalid_argument("make_clebsch_family: (1 + alpha) y - gamma must be positive on " + domain.str() +
                                " (min " + std::to_string(positive.min) + ")");
  }
  const double m = a / (1.0 + a);
  // The homogeneous term is written with s = (1 + alpha) y - gamma > 0 so it
  // stays real for every exponent; it still solves the homogeneous equation.
  const ScalarField phi = a * ((Z * Z - Y * Y) / 2.0) + b * Z + g * Y;
  const ScalarField psi = log(s) / (1.0 + a) + d * pow(s, m) * (b / a + Z);
  ClebschOptions opt;
  opt.name = "w4_4";
  opt.reference = "Example 4.4";
  opt.exp_psi_closed_form = pow(s, 1.0 / (1.0 + a)) * exp(d * pow(s, m) * (b / a + Z));
  return make_clebsch(phi, psi, domain, opt);
}

std::vector<std::string> pressure_catalog_names() { return {"w4_1", "w4_2", "w4_3", "w4_4"}; }

bool is_pressure_name(const std::string& name) {
  const auto names = pressure_catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ClebschSolution pressure_catalog(const std::string& name) {
  ClebschOptions opt;
  opt.name = name;
  if (name == "w4_1") {
    opt.reference = "Eq. (w4_1), Example 4.1";
    opt.exp_psi_closed_form = exp(-Z);
    return make_clebsch(Z, -Z, DomainSpec::ball({0, 0, 0}, 1.0), opt);
  }
  if (name == "w4_2") {
    opt.reference = "Eq. (w4_2), Example 4.2";
    opt.exp_psi_closed_form = Y * Y * exp(Z);
    return make_clebsch(Z, Z + 2.0 * log(Y), offset_box(), opt);
  }
  if (name == "w4_3") {
    opt.reference = "Eq. (w4_3), Example 4.3";
    opt.exp_psi_closed_form = Y * Z;
    return make_clebsch((Z * Z - Y * Y) / 2.0, log(Y * Z), offset_box(), opt);
  }
  if (name == "w4_4") return make_clebsch_family({}, offset_box());
  throw std::invalid_argument("unknown pressure equilibrium '" + name + "'");
}

PsiCharacteristicsResult psi_from_characteristics(const ClebschSolution& s, const SampleSet& targets,
                                                  std::optional<double> z0, double tolerance) {
  const ScalarField y = coord(1), z = coord(2);
  double plane = 0.0;
  if (z0) {
    plane = *z0;
  } else {
    const auto [lo, hi] = s.domain.bounding_box();
    plane = 0.5 * (lo.z + hi.z);
  }
  CharacteristicsProblem prob;
  prob.advect = VectorField(0.0, partial(s.phi, 1) - y, partial(s.phi, 2));
  prob.source = -1.0;
  prob.manifold = z - plane;
  prob.initial_data = substitute(s.clebsch_psi, coord(0), y, plane);

  PsiCharacteristicsResult res;
  res.values = solve_characteristics(prob, targets.points);
  const std::size_t n = res.values.size();
  std::vector<std::optional<double>> err(n);
  std::vector<std::string> why(n);
  res.exact.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const CharacteristicValue& v = res.values[i];
    if (!v.ok) {
      ++res.failures;
      why[i] = v.failure;
      continue;
    }
    try {
      res.exact[i] = s.clebsch_psi(v.point);
      err[i] = std::abs(v.value - res.exact[i]);
      res.sup_error = std::max(res.sup_error, *err[i]);
    } catch (const EvalError& e) {
      ++res.failures;
      why[i] = e.what();
    }
  }
  res.report.subject = "psi by characteristics for " + s.name + " (data on z = " + std::to_string(plane) + ")";
  res.report.provenance = provenance_of(targets);
  res.report.checks.push_back(
      summarize_values("psi_vs_closed_form", targets.points, err, tolerance, CheckStats::Bound::kUpper, why));
  return res;
}

}  // namespace mfs
