#include "mfs/beltrami.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfs {
namespace {

const ScalarField X = coord(0), Y = coord(1), Z = coord(2);

double laplacian(const Taylor3& t) { return 2.0 * (t.coeff(2, 0, 0) + t.coeff(0, 2, 0) + t.coeff(0, 0, 2)); }
Vec3 gradient(const Taylor3& t) { return {t.coeff(1, 0, 0), t.coeff(0, 1, 0), t.coeff(0, 0, 1)}; }

}  // namespace

ResidualReport check_harmonic_pair(const HarmonicPair& pair, const SampleSet& samples, double tolerance) {
  ResidualReport r;
  r.subject = "harmonic pair u = " + pair.u.str() + ", v = " + pair.v.str();
  r.provenance = provenance_of(samples);
  r.checks = compute_checks(
      {"cauchy_riemann_ux_minus_vy", "cauchy_riemann_uy_plus_vx", "laplacian_u", "laplacian_v", "planar"}, samples,
      [&](const Point3& p, double* out) {
        const Taylor3 u = pair.u.taylor(p, 2), v = pair.v.taylor(p, 2);
        const Vec3 gu = gradient(u), gv = gradient(v);
        out[0] = std::abs(gu.x - gv.y);
        out[1] = std::abs(gu.y + gv.x);
        out[2] = std::abs(laplacian(u));
        out[3] = std::abs(laplacian(v));
        out[4] = std::abs(gu.z) + std::abs(gv.z);
      },
      std::vector<double>(5, tolerance));
  return r;
}

ResidualReport verify_admissible(const AdmissibleChart& chart, const SampleSet& samples, double tolerance) {
  ResidualReport r;
  r.subject = "chart (" + chart.x[0].str() + ", " + chart.x[1].str() + ", " + chart.x[2].str() + ")" +
              (chart.orthogonal ? " [orthogonal]" : "");
  r.provenance = provenance_of(samples);
  auto metric = [&](const Point3& p, Vec3 g[3], double lap[3], double& x3) {
    for (int i = 0; i < 3; ++i) {
      const Taylor3 t = chart.x[i].taylor(p, 2);
      g[i] = gradient(t);
      lap[i] = laplacian(t);
    }
    x3 = chart.x[2](p);
  };
  const auto abs_bound = CheckStats::Bound::kAbsolute;
  if (chart.orthogonal) {
    r.checks = compute_checks(
        {"g11_minus_g22", "g12", "g13", "g23", "laplacian_balance"}, samples,
        [&](const Point3& p, double* out) {
          Vec3 g[3];
          double lap[3], x3;
          metric(p, g, lap, x3);
          out[0] = dot(g[0], g[0]) - dot(g[1], g[1]);
          out[1] = dot(g[0], g[1]);
          out[2] = dot(g[0], g[2]);
          out[3] = dot(g[1], g[2]);
          out[4] = lap[1] * std::cos(x3) - lap[0] * std::sin(x3);
        },
        std::vector<double>(5, tolerance), std::vector<CheckStats::Bound>(5, abs_bound));
  } else {
    r.checks = compute_checks(
        {"mt1", "mt2", "mt3"}, samples,
        [&](const Point3& p, double* out) {
          Vec3 g[3];
          double lap[3], x3;
          metric(p, g, lap, x3);
          const double c = std::cos(x3), s = std::sin(x3);
          const double g11 = dot(g[0], g[0]), g22 = dot(g[1], g[1]), g12 = dot(g[0], g[1]);
          const double g13 = dot(g[0], g[2]), g23 = dot(g[1], g[2]);
          out[0] = c * s * (g22 - g11) - g12 * (c * c - s * s);
          out[1] = s * g13 + c * g23;
          out[2] = c * (g13 + lap[1]) + s * (lap[0] - g23);
        },
        std::vector<double>(3, tolerance), std::vector<CheckStats::Bound>(3, abs_bound));
  }
  return r;
}

BeltramiRecord from_harmonic_pair(const HarmonicPair& pair, const ScalarField& sigma, const DomainSpec& domain,
                                  const HarmonicConstructionOptions& options) {
  const SampleSet samples = sample_domain(domain, options.samples);
  ResidualReport pre = check_harmonic_pair(pair, samples);
  const ScalarField sigma_z = partial(sigma, 2);
  pre.checks.push_back(compute_check(
      "sigma_depends_on_z_only", samples,
      [&](const Point3& p) {
        const Vec3 g = grad(sigma)(p);
        return std::abs(g.x) + std::abs(g.y);
      },
      1e-12));
  pre.checks.push_back(compute_check(
      "sigma_derivative_magnitude", samples, [&](const Point3& p) { return std::abs(sigma_z(p)); }, 0.0,
      CheckStats::Bound::kLower));
  ScalarField h = sigma_z;
  if (options.h_closed_form) {
    const ScalarField closed = *options.h_closed_form;
    pre.checks.push_back(compute_check(
        "h_closed_form", samples, [&](const Point3& p) { return std::abs(closed(p) - sigma_z(p)); }, 1e-12));
    h = closed;
  }
  if (!pre.passed()) {
    throw ConstructionError("from_harmonic_pair: preconditions failed for " + options.name, std::move(pre));
  }

  BeltramiRecord rec;
  rec.name = options.name;
  rec.reference = "harmonic-pair construction";
  rec.description = "cos(sigma) grad v + sin(sigma) grad u with u = " + pair.u.str() + ", v = " + pair.v.str() +
                    ", sigma = " + sigma.str();
  rec.field = cos(sigma) * grad(pair.v) + sin(sigma) * grad(pair.u);
  rec.h = h;
  rec.domain = domain;
  rec.chart = AdmissibleChart{{pair.u, pair.v, sigma}, true};

  ResidualReport post = verify_beltrami(rec, samples, options.tolerance);
  if (!post.passed()) {
    throw ConstructionError("from_harmonic_pair: Beltrami residual above tolerance for " + options.name,
                            std::move(post));
  }
  return rec;
}

ResidualReport verify_beltrami(const BeltramiRecord& rec, const SampleSet& samples, double tolerance) {
  ResidualReport r;
  r.subject = "Beltrami checks for " + rec.name;
  r.provenance = provenance_of(samples);
  r.checks = compute_checks(
      {"beltrami", "divergence", "helicity_density"}, samples,
      [&](const Point3& p, double* out) {
        const auto t = rec.field.taylor(p, 1);
        const Vec3 w(t[0].value(), t[1].value(), t[2].value());
        auto d = [&](int comp, int axis) { return t[comp].coeffs()[1 + axis]; };
        const Vec3 c(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
        out[0] = norm(c - rec.h(p) * w);
        out[1] = std::abs(d(0, 0) + d(1, 1) + d(2, 2));
        out[2] = std::abs(dot(w, c));
      },
      {tolerance, tolerance, 0.0},
      {CheckStats::Bound::kUpper, CheckStats::Bound::kUpper, CheckStats::Bound::kLower});
  return r;
}

ResidualReport verify_h_invariance(const BeltramiRecord& rec, const SampleSet& samples, double tolerance) {
  ResidualReport r;
  r.subject = "h invariance along " + rec.name;
  r.provenance = provenance_of(samples);
  const VectorField gh = grad(rec.h);
  r.checks.push_back(compute_check(
      "h_invariance", samples, [&](const Point3& p) { return std::abs(dot(rec.field(p), gh(p))); }, tolerance));
  const ResidualReport b = verify_beltrami(rec, samples);
  r.checks.push_back(b.check("beltrami"));
  if (!b.check("beltrami").pass) {
    r.notes.push_back("field is not Beltrami with this h on the samples; h invariance is not meaningful");
  }
  return r;
}

// --- catalog --------------------------------------------------------------

std::vector<std::string> beltrami_catalog_names() {
  return {"abc_minimal", "cylindrical", "exp_x3", "zsq_x3", "example3"};
}

bool is_beltrami_name(const std::string& name) {
  const auto names = beltrami_catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

BeltramiRecord planar_exp_record(const std::string& name, const ScalarField& sigma, const ScalarField& h,
                                 const DomainSpec& domain) {
  BeltramiRecord r;
  r.name = name;
  const ScalarField u = exp(X) * sin(Y), v = -(exp(X) * cos(Y));
  r.field = cos(sigma) * grad(v) + sin(sigma) * grad(u);
  r.h = h;
  r.domain = domain;
  r.chart = AdmissibleChart{{u, v, sigma}, true};
  return r;
}

}  // namespace

BeltramiRecord beltrami_catalog(const std::string& name) {
  const DomainSpec unit_ball = DomainSpec::ball({0, 0, 0}, 1.0);
  const DomainSpec upper_box = DomainSpec::box({-1, -1, 0.5}, {1, 1, 1.5});
  if (name == "abc_minimal") {
    BeltramiRecord r;
    r.name = name;
    r.reference = "Eq. (mABC), Example 1";
    r.description = "minimal ABC flow cos z grad y + sin z grad x";
    r.field = cos(Z) * grad(Y) + sin(Z) * grad(X);
    r.h = 1.0;
    r.domain = unit_ball;
    r.chart = AdmissibleChart{{X, Y, Z}, true};
    return r;
  }
  if (name == "cylindrical") {
    BeltramiRecord r;
    r.name = name;
    r.reference = "Example 2";
    r.description = "cylindrical field cos z grad log r + sin z grad theta";
    const ScalarField log_r = 0.5 * log(X * X + Y * Y);
    const ScalarField theta = atan2(Y, X);
    r.field = cos(Z) * grad(log_r) + sin(Z) * grad(theta);
    r.h = -1.0;
    r.domain = DomainSpec::cylindrical_shell(0, 0, 0.5, 1.5, -1, 1);
    r.chart = AdmissibleChart{{theta, log_r, Z}, true};
    return r;
  }
  if (name == "exp_x3") {
    BeltramiRecord r = planar_exp_record(name, exp(Z), exp(Z), unit_ball);
    r.reference = "Eq. (Basym)";
    r.description = "-cos(e^z) grad(e^x cos y) + sin(e^z) grad(e^x sin y), no Euclidean symmetry";
    return r;
  }
  if (name == "zsq_x3") {
    BeltramiRecord r = planar_exp_record(name, Z * Z, 2.0 * Z, upper_box);
    r.reference = "Eq. (wLE)";
    r.description = "-cos(z^2) grad(e^x cos y) + sin(z^2) grad(e^x sin y), z > 0 branch";
    return r;
  }
  if (name == "example3") {
    BeltramiRecord r = planar_exp_record(name, Z * Z, 2.0 * Z, upper_box);
    r.reference = "Example 3";
    r.description = "the zsq_x3 field in the chart (e^x sin y, -e^x cos y, z^2), with its local symmetry";
    return r;
  }
  throw std::invalid_argument("unknown Beltrami field '" + name + "'");
}

}  // namespace mfs
