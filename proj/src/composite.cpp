#include "mfs/composite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mfs/parallel.hpp"

namespace mfs {
namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Vec3 unit(const Vec3& v) { return (1.0 / norm(v)) * v; }

CheckStats interface_check(const std::string& name, const std::vector<Point3>& pts,
                           const std::function<double(const Point3&)>& fn) {
  std::vector<std::optional<double>> vals(pts.size());
  std::vector<std::string> why(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      vals[i] = fn(pts[i]);
    } catch (const EvalError& e) {
      why[i] = e.what();
    }
  });
  return summarize_values(name, pts, vals, 1e-12, CheckStats::Bound::kUpper, why);
}

}  // namespace

const VectorField& Region::field() const {
  return std::visit(overloaded{[](const ClebschSolution& s) -> const VectorField& { return s.field; },
                               [](const BeltramiRecord& r) -> const VectorField& { return r.field; }},
                    source);
}

std::optional<ScalarField> Region::chi() const {
  if (const auto* s = std::get_if<ClebschSolution>(&source)) return s->chi;
  return std::nullopt;
}

std::string Region::source_name() const {
  return std::visit([](const auto& s) { return s.name; }, source);
}

std::string Region::kind() const { return std::holds_alternative<ClebschSolution>(source) ? "pressure" : "beltrami"; }

int PiecewiseField::region_of(const Point3& p) const {
  const double r = norm(p - center);
  if (r > outer) return -1;
  return r <= eps ? 0 : 1;
}

Vec3 PiecewiseField::operator()(const Point3& p) const {
  const int i = region_of(p);
  if (i < 0) throw std::out_of_range("point outside the ambient ball");
  return regions[static_cast<std::size_t>(i)].field()(p);
}

PiecewiseField assemble(const RegionSource& core, const BeltramiRecord& shell, double eps, double outer,
                        const Point3& center) {
  if (!(outer > 0.0) || !std::isfinite(outer)) throw std::invalid_argument("ambient radius must be positive");
  if (!(eps > 0.0) || !(eps < outer)) {
    throw std::invalid_argument("core radius must lie strictly between 0 and the ambient radius");
  }
  PiecewiseField pf;
  pf.center = center;
  pf.eps = eps;
  pf.outer = outer;
  pf.ambient = DomainSpec::ball(center, outer);
  pf.regions.push_back({"core", DomainSpec::ball(center, eps), core});
  pf.regions.push_back({"shell", DomainSpec::spherical_shell(center, eps, outer), shell});

  // Core ball, including its boundary, must lie in the core field's domain.
  const Region& c = pf.regions[0];
  const DomainSpec& core_domain =
      std::visit([](const auto& s) -> const DomainSpec& { return s.domain; }, core);
  std::vector<Point3> probe = sample_domain(c.domain, 2000).points;
  for (const Point3& p : fibonacci_sphere(center, eps, 500)) probe.push_back(p);
  for (const Point3& p : probe) {
    if (!core_domain.contains(p)) {
      throw std::invalid_argument("core field domain " + core_domain.str() + " does not contain the ball of radius " +
                                  std::to_string(eps));
    }
  }

  // The shell field must be defined on the whole shell: check its domain and
  // evaluate it, including along the axis through the centre.
  const Region& s = pf.regions[1];
  std::vector<Point3> shell_probe = sample_domain(s.domain, 4000).points;
  for (int i = 1; i < 200; ++i) {
    const double t = -outer + 2.0 * outer * i / 200.0;
    if (std::abs(t) < eps) continue;
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 d;
      d[axis] = t;
      shell_probe.push_back(center + d);
    }
  }
  std::vector<std::optional<double>> vals(shell_probe.size());
  std::vector<std::string> why(shell_probe.size());
  parallel_for(shell_probe.size(), [&](std::size_t i) {
    const Point3& p = shell_probe[i];
    if (!shell.domain.contains(p)) {
      why[i] = "outside the shell field's domain " + shell.domain.str();
      return;
    }
    try {
      const Vec3 v = shell.field(p);
      if (all_finite(v)) {
        vals[i] = norm(v);
      } else {
        why[i] = "non-finite value";
      }
    } catch (const EvalError& e) {
      why[i] = e.what();
    }
  });
  CheckStats sing = summarize_values("shell_singularity", shell_probe, vals,
                                     std::numeric_limits<double>::max(), CheckStats::Bound::kUpper, why);
  if (sing.failed > 0) {
    sing.pass = false;
    ResidualReport rep;
    rep.subject = "shell field " + shell.name + " on " + s.domain.str();
    rep.provenance = Provenance{s.domain.str(), "probe", 0, shell_probe.size()};
    rep.checks.push_back(sing);
    throw ConstructionError("shell field " + shell.name + " is not defined on the whole shell (" +
                                std::to_string(sing.failed) + " probe points failed: " + sing.first_error + ")",
                            rep);
  }
  return pf;
}

PiecewiseField default_composite() {
  return assemble(pressure_catalog("w4_1"), beltrami_catalog("exp_x3"), 0.4, 1.0);
}

L2Estimate l2_estimate(const PiecewiseField& pf, std::size_t points, std::uint64_t seed) {
  const SampleSet s = sample_domain(pf.ambient, points, {SamplerKind::kRandom, seed});
  std::vector<double> v(s.size(), 0.0);
  std::vector<char> ok(s.size(), 0);
  parallel_for(s.size(), [&](std::size_t i) {
    try {
      const Vec3 w = pf(s.points[i]);
      v[i] = dot(w, w);
      ok[i] = std::isfinite(v[i]) ? 1 : 0;
    } catch (const EvalError&) {
    }
  });
  L2Estimate e;
  e.points = s.size();
  double sum = 0.0, sum_sq = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!ok[i]) {
      ++e.failed;
      continue;
    }
    ++n;
    sum += v[i];
    sum_sq += v[i] * v[i];
  }
  if (n < 2) return e;
  const double vol = pf.ambient.shape_volume();
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
  e.integral = vol * mean;
  e.standard_error = vol * std::sqrt(var / static_cast<double>(n));
  e.relative_error = e.integral > 0 ? e.standard_error / e.integral : 0.0;
  e.finite = e.failed == 0 && std::isfinite(e.integral) && std::isfinite(e.standard_error);
  return e;
}

std::vector<Point3> fibonacci_sphere(const Point3& center, double radius, std::size_t count) {
  std::vector<Point3> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    pts.push_back(center + radius * Vec3{r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

bool CompositeReport::passed() const {
  for (const ResidualReport& r : regions) {
    if (!r.passed()) return false;
  }
  return l2.finite && core_symmetry.null_dim == 0;
}

CompositeReport verify_composite(const PiecewiseField& pf, const CompositeOptions& opt) {
  CompositeReport rep;
  for (const Region& region : pf.regions) {
    const SampleSet s = sample_domain(region.domain, opt.samples_per_region, opt.sampler);
    ResidualReport r = std::visit(overloaded{[&](const ClebschSolution& c) { return verify_clebsch(c, s); },
                                             [&](const BeltramiRecord& b) { return verify_beltrami(b, s); }},
                                  region.source);
    r.subject = region.name + ": " + region.source_name() + " (" + r.subject + ")";
    rep.regions.push_back(std::move(r));
  }

  rep.l2 = l2_estimate(pf, opt.mc_points, opt.mc_seed);
  if (rep.l2.relative_error >= opt.max_relative_error) rep.l2.finite = false;

  const VectorField& wc = pf.regions[0].field();
  const VectorField& ws = pf.regions[1].field();
  const std::vector<Point3> inner = fibonacci_sphere(pf.center, pf.eps, opt.interface_points);
  const std::vector<Point3> outer = fibonacci_sphere(pf.center, pf.outer, opt.interface_points);
  const Point3 c = pf.center;
  rep.interface.push_back(interface_check("interface_jump", inner, [&](const Point3& p) { return norm(wc(p) - ws(p)); }));
  rep.interface.push_back(interface_check(
      "interface_flux_core", inner, [&](const Point3& p) { return std::abs(dot(wc(p), unit(p - c))); }));
  rep.interface.push_back(interface_check(
      "interface_flux_shell", inner, [&](const Point3& p) { return std::abs(dot(ws(p), unit(p - c))); }));
  rep.interface.push_back(interface_check(
      "boundary_flux_shell", outer, [&](const Point3& p) { return std::abs(dot(ws(p), unit(p - c))); }));

  rep.core_symmetry = killing_scan(wc, pf.regions[0].domain, opt.samples_per_region, kKillingThreshold, opt.sampler);
  return rep;
}

nlohmann::ordered_json to_json(const PiecewiseField& pf) {
  nlohmann::ordered_json j;
  j["ambient"] = pf.ambient.str();
  j["eps"] = pf.eps;
  j["regions"] = nlohmann::ordered_json::array();
  for (const Region& r : pf.regions) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["kind"] = r.kind();
    e["source"] = r.source_name();
    e["domain"] = r.domain.str();
    j["regions"].push_back(e);
  }
  return j;
}

nlohmann::ordered_json to_json(const CompositeReport& r) {
  nlohmann::ordered_json j;
  j["pass"] = r.passed();
  j["regions"] = nlohmann::ordered_json::array();
  for (const ResidualReport& rr : r.regions) j["regions"].push_back(to_json(rr));
  j["l2"] = {{"integral", r.l2.integral},
             {"standard_error", r.l2.standard_error},
             {"relative_error", r.l2.relative_error},
             {"points", r.l2.points},
             {"failed", r.l2.failed},
             {"finite", r.l2.finite}};
  j["interface"] = nlohmann::ordered_json::array();
  for (const CheckStats& c : r.interface) j["interface"].push_back(to_json(c));
  j["core_symmetry"] = to_json(r.core_symmetry);
  return j;
}

}  // namespace mfs
