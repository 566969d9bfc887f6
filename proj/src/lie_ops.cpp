#include "mfs/lie_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "mfs/field_core.hpp"

namespace mfs {
namespace {

/// Rotation by angle |v| about v / |v|.
Mat3 rotation(const Vec3& v) {
  const double th = norm(v);
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    Vec3 e;
    e[i] = 1.0;
    Vec3 col = e;
    if (th > 0) {
      const Vec3 k = (1.0 / th) * v;
      col = std::cos(th) * e + std::sin(th) * cross(k, e) + (1 - std::cos(th)) * dot(k, e) * k;
    }
    for (int r = 0; r < 3; ++r) m(r, i) = col[r];
  }
  return m;
}

}  // namespace

ResidualReport commutator_defect(const VectorField& w, const KillingParams& k, const SampleSet& samples,
                                 double tolerance) {
  ResidualReport rep;
  rep.subject = "curl / Lie derivative commutator for " + k.str();
  rep.provenance = provenance_of(samples);
  const VectorField lhs = lie_euclidean(curl(w), k);
  const VectorField rhs = curl(lie_euclidean(w, k));
  const ScalarField dw = divergence(w);
  rep.checks = compute_checks(
      {"commutator_defect", "divergence"}, samples,
      [&](const Point3& p, double* out) {
        out[0] = norm(lhs(p) - rhs(p));
        out[1] = std::abs(dw(p));
      },
      {tolerance, 1e-8});
  return rep;
}

ResidualReport h_symmetry_check(const ScalarField& h, const KillingParams& k, const SampleSet& samples,
                                double tolerance) {
  ResidualReport rep;
  rep.subject = "invariance of h = " + h.str() + " under " + k.str();
  rep.provenance = provenance_of(samples);
  const ScalarField lh = dot(k.field(), grad(h));
  rep.checks.push_back(compute_check(
      "lie_h", samples, [&](const Point3& p) { return std::abs(lh(p)); }, tolerance));
  return rep;
}

LieOrbit lie_generate(const BeltramiRecord& base, const KillingParams& k, int n, const OrbitOptions& opt) {
  if (n < 0 || n > kMaxOrbitLength) {
    throw std::invalid_argument("orbit length must be between 0 and " + std::to_string(kMaxOrbitLength));
  }
  const SampleSet samples = sample_domain(base.domain, opt.samples, opt.sampler);
  LieOrbit orbit;
  orbit.base = base;
  orbit.generator = k;
  orbit.requested = n;
  orbit.hypothesis = h_symmetry_check(base.h, k, samples, opt.hypothesis_tolerance);
  if (!orbit.hypothesis.passed()) {
    throw ConstructionError("h is not invariant under the generator " + k.str(), orbit.hypothesis);
  }
  const double base_max = max_magnitude(base.field, samples);
  const ScalarField& h = base.h;
  VectorField m = base.field;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) m = lie_euclidean(m, k);
    const VectorField residual = curl(m) - h * m;
    const ScalarField div = divergence(m);
    ResidualReport rep;
    rep.subject = "orbit member " + std::to_string(i);
    rep.provenance = provenance_of(samples);
    rep.checks = compute_checks(
        {"beltrami", "divergence"}, samples,
        [&](const Point3& p, double* out) {
          out[0] = norm(residual(p));
          out[1] = std::abs(div(p));
        },
        {opt.beltrami_tolerance, opt.divergence_tolerance});
    const double mag = max_magnitude(m, samples);
    orbit.members.push_back(m);
    orbit.reports.push_back(rep);
    orbit.max_magnitude.push_back(mag);
    if (i > 0 && mag < opt.null_threshold * base_max) {
      orbit.terminal_null = true;
      orbit.note = "member " + std::to_string(i) + " vanishes; all later members are zero";
      break;
    }
    if (!rep.passed()) {
      orbit.truncated = i < n;
      orbit.note = "member " + std::to_string(i) + " failed its Beltrami checks";
      break;
    }
  }
  return orbit;
}

nlohmann::ordered_json to_json(const LieOrbit& orbit) {
  nlohmann::ordered_json j;
  j["base"] = orbit.base.name;
  j["h"] = orbit.base.h.str();
  j["generator"] = to_json(orbit.generator);
  j["requested"] = orbit.requested;
  j["hypothesis"] = to_json(orbit.hypothesis);
  j["members"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < orbit.members.size(); ++i) {
    nlohmann::ordered_json m;
    m["n"] = i;
    m["max_magnitude"] = orbit.max_magnitude[i];
    m["pass"] = orbit.reports[i].passed();
    m["checks"] = nlohmann::ordered_json::array();
    for (const CheckStats& c : orbit.reports[i].checks) m["checks"].push_back(to_json(c));
    j["members"].push_back(m);
  }
  j["terminal_null"] = orbit.terminal_null;
  j["truncated"] = orbit.truncated;
  if (!orbit.note.empty()) j["note"] = orbit.note;
  j["samples"] = to_json(orbit.hypothesis.provenance);
  return j;
}

Point3 killing_flow(const KillingParams& k, double t, const Point3& p) {
  // x(t) = R(t b) p + int_0^t R(s b) a ds.
  const Mat3 R = rotation(t * k.b);
  const double th = norm(k.b);
  Vec3 shift = t * k.a;
  if (th > 0) {
    const Vec3 u = (1.0 / th) * k.b;
    const Vec3 par = dot(u, k.a) * u;
    const Vec3 perp = k.a - par;
    shift = t * par + (std::sin(t * th) / th) * perp + ((1 - std::cos(t * th)) / th) * cross(u, k.a);
  }
  return Point3(R * p.as_vec() + shift);
}

VectorField isometry_pullback(const VectorField& w, const KillingParams& k, double eps) {
  const Mat3 R = rotation(eps * k.b);
  const Point3 c = killing_flow(k, eps, Point3(0, 0, 0));
  const ScalarField x = coord(0), y = coord(1), z = coord(2);
  ScalarField moved[3];
  for (int i = 0; i < 3; ++i) moved[i] = R(i, 0) * x + R(i, 1) * y + R(i, 2) * z + c[i];
  ScalarField wc[3];
  for (int i = 0; i < 3; ++i) wc[i] = substitute(component(w, i), moved[0], moved[1], moved[2]);
  // R^-1 = R^T.
  ScalarField out[3];
  for (int i = 0; i < 3; ++i) out[i] = R(0, i) * wc[0] + R(1, i) * wc[1] + R(2, i) * wc[2];
  return VectorField(out[0], out[1], out[2]);
}

}  // namespace mfs
