#include "mfs/gradshafranov.hpp"

#include <cmath>
#include <stdexcept>

#include "mfs/parallel.hpp"
#include "mfs/pressure.hpp"

namespace mfs {
namespace {

const ScalarField X = coord(0), Y = coord(1), Z = coord(2);

ScalarField of_theta(const ScalarField& f, const ScalarField& theta) { return compose(f, theta); }

/// Composite Simpson along one axis from `from` to coordinate value `to`.
double segment(const VectorField& g, Point3& from, int axis, double to, double step) {
  const double a = from[axis];
  const double len = to - a;
  if (len == 0.0) return 0.0;
  std::size_t n = static_cast<std::size_t>(std::ceil(std::abs(len) / step));
  n += n % 2;
  const double h = len / static_cast<double>(n);
  auto f = [&](std::size_t i) {
    Vec3 q = from.as_vec();
    q[axis] = a + h * static_cast<double>(i);
    return g(Point3(q))[axis];
  };
  double sum = f(0) + f(n);
  for (std::size_t i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(i);
  Vec3 end = from.as_vec();
  end[axis] = to;
  from = Point3(end);
  return sum * h / 3.0;
}

ScalarField gs_fifth_term(const GSProblem& prob) {
  const ScalarField g33 = prob.chart.g33();
  return g33 * of_theta(prob.w3, prob.theta) *
         divergence((1.0 / g33) * cross(prob.chart.d3(), grad(prob.chart.x3())));
}

}  // namespace

std::string to_string(ChartKind kind) {
  return kind == ChartKind::kTranslational ? "translational" : "axisymmetric";
}

ChartKind parse_chart_kind(const std::string& s) {
  if (s == "translational") return ChartKind::kTranslational;
  if (s == "axisymmetric") return ChartKind::kAxisymmetric;
  throw std::invalid_argument("unknown chart '" + s + "' (expected translational or axisymmetric)");
}

ScalarField SymmetricChart::x3() const { return kind == ChartKind::kTranslational ? Z : atan2(Y, X); }
ScalarField SymmetricChart::g33() const { return kind == ChartKind::kTranslational ? ScalarField(1.0) : X * X + Y * Y; }
VectorField SymmetricChart::d3() const {
  return kind == ChartKind::kTranslational ? VectorField(0.0, 0.0, 1.0) : VectorField(-Y, X, 0.0);
}

ScalarField gs_residual_field(const GSProblem& prob) {
  const ScalarField& th = prob.theta;
  const ScalarField g33 = prob.chart.g33();
  const VectorField gt = grad(th);
  ScalarField r = divergence(gt);
  if (prob.chart.kind == ChartKind::kAxisymmetric) r = r - dot(gt, grad(log(g33)));
  r = r - g33 * of_theta(partial(prob.chi, 0), th) + of_theta(prob.w3 * partial(prob.w3, 0), th);
  return r - gs_fifth_term(prob);
}

ResidualReport gs_residual(const GSProblem& prob, const SampleSet& samples, double tolerance) {
  ResidualReport rep;
  rep.subject = "Grad-Shafranov residual (" + to_string(prob.chart.kind) + "): Theta = " + prob.theta.str() +
                ", w3 = " + prob.w3.str() + ", chi = " + prob.chi.str();
  rep.provenance = provenance_of(samples);
  const ScalarField r = gs_residual_field(prob);
  const ScalarField fifth = gs_fifth_term(prob);
  const ScalarField ign = dot(prob.chart.d3(), grad(prob.theta));
  rep.checks = compute_checks(
      {"gs_residual", "fifth_term", "ignorable"}, samples,
      [&](const Point3& p, double* out) {
        out[0] = std::abs(r(p));
        out[1] = std::abs(fifth(p));
        out[2] = std::abs(ign(p));
      },
      {tolerance, 1e-10, 1e-10});
  return rep;
}

GSReconstruction gs_reconstruct(const GSProblem& prob) {
  const ScalarField g33 = prob.chart.g33();
  const VectorField w = cross(grad(prob.theta), grad(prob.chart.x3())) +
                        (of_theta(prob.w3, prob.theta) / g33) * prob.chart.d3();
  return {w, of_theta(prob.chi, prob.theta)};
}

nlohmann::ordered_json to_json(const GSProblem& prob) {
  nlohmann::ordered_json j;
  j["chart"] = to_string(prob.chart.kind);
  j["theta"] = prob.theta.str();
  j["w3"] = prob.w3.str();
  j["chi"] = prob.chi.str();
  return j;
}

std::pair<double, double> integrate_phi_paths(const VectorField& grad_phi, const Point3& base, const Point3& p,
                                              double step) {
  Point3 q = base;
  double first = 0.0;
  for (int axis : {0, 1, 2}) first += segment(grad_phi, q, axis, p[axis], step);
  q = base;
  double second = 0.0;
  for (int axis : {2, 1, 0}) second += segment(grad_phi, q, axis, p[axis], step);
  return {first, second};
}

ResidualReport ggse_check(const GGSData& data, const SampleSet& samples, const GGSOptions& opt) {
  ResidualReport rep;
  rep.subject = "generalized Grad-Shafranov check: Theta = " + data.theta.str() + ", Psi = " + data.psi.str();
  rep.provenance = provenance_of(samples);
  if (!data.phi && !data.field) throw std::invalid_argument("ggse_check needs Phi or the field w");

  const VectorField gt = grad(data.theta);
  const CheckStats tg = compute_check(
      "theta_gradient", samples, [&](const Point3& p) { return norm(gt(p)); }, opt.singular_gradient,
      CheckStats::Bound::kLower);
  if (!tg.pass) {
    rep.checks.push_back(tg);
    rep.notes.push_back("refused: |grad Theta| < " + std::to_string(opt.singular_gradient) + " at " +
                        std::to_string(tg.failed) + " samples; the generalized equation is singular there");
    return rep;
  }

  const VectorField gp = grad(data.psi);
  const VectorField frame = cross(grad(data.x1), grad(data.x2));
  const ScalarField psi_theta = dot(cross(gp, gt), frame) / norm_squared(frame);
  const VectorField gphi = data.phi ? grad(*data.phi) : *data.field - data.psi * gt;
  const ScalarField g2 = norm_squared(gt);
  const ScalarField q = dot(gt, gphi) / g2;
  const ScalarField lhs = -dot((1.0 / g2) * cross(gt, cross(gphi, gt)), grad(q));

  rep.checks.push_back(compute_check(
      "psi_theta", samples, [&](const Point3& p) { return psi_theta(p) - 1.0; }, opt.tolerance,
      CheckStats::Bound::kAbsolute));
  rep.checks.push_back(compute_check(
      "ggse", samples, [&](const Point3& p) { return lhs(p) - 1.0; }, opt.tolerance, CheckStats::Bound::kAbsolute));
  const CheckStats& g = rep.checks.back();
  if (g.evaluated > 0 && std::abs(g.mean + 2.0) < opt.tolerance && std::abs(g.max - g.min) < opt.tolerance) {
    rep.notes.push_back("the left side equals -1 at every sample: sign opposite to the stated equation");
  }

  if (data.field) {
    const VectorField& w = *data.field;
    const VectorField cw = curl(w);
    rep.checks.push_back(compute_check(
        "curl_w", samples, [&](const Point3& p) { return norm(cw(p) - cross(gp(p), gt(p))); }, opt.tolerance));
    if (data.phi) {
      rep.checks.push_back(compute_check(
          "decomposition", samples,
          [&](const Point3& p) { return norm(w(p) - data.psi(p) * gt(p) - gphi(p)); }, opt.tolerance));
    }
    const Point3 base = opt.base ? *opt.base : [&] {
      const auto [lo, hi] = samples.domain.bounding_box();
      return Point3(0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y), 0.5 * (lo.z + hi.z));
    }();
    const VectorField integrand = w - data.psi * gt;
    const std::size_t n = samples.size();
    std::vector<std::optional<double>> diff(n);
    std::vector<std::optional<double>> dec(n);
    std::vector<std::string> why(n);
    parallel_for(n, [&](std::size_t i) {
      const Point3& p = samples.points[i];
      try {
        const auto [a, b] = integrate_phi_paths(integrand, base, p, opt.step);
        diff[i] = std::abs(a - b);
        if (data.phi) dec[i] = std::abs(a - ((*data.phi)(p) - (*data.phi)(base)));
      } catch (const EvalError& e) {
        why[i] = e.what();
      }
    });
    rep.checks.push_back(summarize_values("phi_path_independence", samples.points, diff, opt.path_tolerance,
                                          CheckStats::Bound::kUpper, why));
    if (data.phi) {
      rep.checks.push_back(summarize_values("phi_vs_supplied", samples.points, dec, opt.path_tolerance,
                                            CheckStats::Bound::kUpper, why));
    }
  }
  return rep;
}

GGSData ggse_example_w4_1() {
  const ScalarField x1 = exp(-Z);
  const ScalarField x2 = X;
  GGSData d;
  d.x1 = x1;
  d.x2 = x2;
  d.theta = -(x1 * x2) - 0.5 * x1 * x1;
  d.psi = -log(x1);
  d.field = pressure_catalog("w4_1").field;
  return d;
}

}  // namespace mfs
