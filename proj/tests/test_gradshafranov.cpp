#include <cmath>

#include "doctest.h"
#include "mfs/field_core.hpp"
#include "mfs/gradshafranov.hpp"
#include "mfs/parser.hpp"
#include "support/oracles.hpp"

using namespace mfs;

namespace {
const ScalarField X = coord(0), Y = coord(1), Z = coord(2);
const ScalarField T = coord(0);  // variable of w3(T), chi(T)

GSProblem translational(ScalarField theta, ScalarField w3, ScalarField chi) {
  return {{ChartKind::kTranslational}, std::move(theta), std::move(w3), std::move(chi)};
}
GSProblem axisymmetric(ScalarField theta, ScalarField w3, ScalarField chi) {
  return {{ChartKind::kAxisymmetric}, std::move(theta), std::move(w3), std::move(chi)};
}
const DomainSpec kShell = DomainSpec::cylindrical_shell(0, 0, 0.5, 1.5, -1, 1);
}  // namespace

TEST_CASE("translational zero-residual instance and its reconstruction") {
  const GSProblem prob = translational(0.5 * (X * X + Y * Y), 1.0, 2.0 * T);
  const SampleSet s = sample_domain(DomainSpec::ball({0, 0, 0}, 1), 1000);
  const ResidualReport r = gs_residual(prob, s);
  CHECK(r.passed());
  CHECK(r.check("gs_residual").max < 1e-10);
  CHECK(r.check("fifth_term").max < 1e-10);
  const GSReconstruction rec = gs_reconstruct(prob);
  const ResidualReport fb = force_balance_residual(rec.field, rec.chi, s, {1e-9, 1e-9});
  CHECK(fb.passed());
  // w = (y, -x, 1) by hand.
  CHECK(norm(rec.field(Point3{0.3, -0.4, 0.1}) - Vec3{-0.4, -0.3, 1}) < 1e-15);
}

TEST_CASE("non-equilibrium residual is reported, not hidden") {
  const GSProblem prob = translational(0.5 * (X * X + Y * Y), 0.0, 0.0);
  const ResidualReport r = gs_residual(prob, sample_domain(DomainSpec{}, 200));
  CHECK_FALSE(r.passed());
  CHECK(r.check("gs_residual").min == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.check("gs_residual").max == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("axisymmetric residual matches a hand expansion in cylindrical coordinates") {
  // Theta = r^2 sin z + r^4 z / 4, chi' = 0, w3 = c Theta.
  const double c = 0.7;
  const ScalarField r2 = X * X + Y * Y;
  const GSProblem prob = axisymmetric(r2 * sin(Z) + 0.25 * r2 * r2 * Z, c * T, 0.0);
  const ScalarField res = gs_residual_field(prob);
  const SampleSet s = sample_domain(kShell, 500);
  double worst = 0, worst_fd = 0;
  for (const Point3& p : s.points) {
    const double r = std::hypot(p.x, p.y), z = p.z;
    const double th = r * r * std::sin(z) + std::pow(r, 4) * z / 4;
    // Theta_rr + Theta_zz - Theta_r / r + c^2 Theta
    const double expected = 2 * r * r * z - r * r * std::sin(z) + c * c * th;
    worst = std::max(worst, std::abs(res(p) - expected));
    const auto f = [&](double rr, double zz) { return rr * rr * std::sin(zz) + std::pow(rr, 4) * zz / 4; };
    const double h = 1e-3;
    const double frr = (f(r + h, z) - 2 * f(r, z) + f(r - h, z)) / (h * h);
    const double fzz = (f(r, z + h) - 2 * f(r, z) + f(r, z - h)) / (h * h);
    const double fr = (f(r + h, z) - f(r - h, z)) / (2 * h);
    worst_fd = std::max(worst_fd, std::abs(res(p) - (frr + fzz - fr / r + c * c * th)));
  }
  CHECK(worst < 1e-8);
  CHECK(worst_fd < 1e-4);
  const ResidualReport rep = gs_residual(prob, s);
  CHECK(rep.check("fifth_term").max < 1e-10);
  CHECK(rep.check("ignorable").max < 1e-10);
}

TEST_CASE("axisymmetric zero-residual instances reconstruct to equilibria") {
  const ScalarField r2 = X * X + Y * Y;
  const SampleSet s = sample_domain(kShell, 1000);
  const std::vector<GSProblem> cases = {
      axisymmetric(r2 * r2 / 8 + r2 * Z * Z / 2, 0.0, 2.0 * T),
      axisymmetric(r2 * r2 / 8 + r2 / 2 - Z * Z / 2, sqrt(2.0 * T + 2.0), T),
  };
  for (const GSProblem& prob : cases) {
    CAPTURE(prob.theta.str());
    const ResidualReport r = gs_residual(prob, s);
    CHECK(r.passed());
    CHECK(r.check("gs_residual").max < 1e-10);
    const GSReconstruction rec = gs_reconstruct(prob);
    const ResidualReport fb = force_balance_residual(rec.field, rec.chi, s, {1e-7, 1e-9});
    CHECK(fb.passed());
  }
}

TEST_CASE("harmonic flux function gives a curl-free reconstruction") {
  const GSProblem prob = translational(X * X - Y * Y, 0.0, 0.0);
  const SampleSet s = sample_domain(DomainSpec{}, 300);
  CHECK(gs_residual(prob, s).passed());
  const GSReconstruction rec = gs_reconstruct(prob);
  const VectorField cw = curl(rec.field);
  for (const Point3& p : s.points) CHECK(norm(cw(p)) < 1e-12);
  CHECK(force_balance_residual(rec.field, rec.chi, s).passed());
}

TEST_CASE("flux function depending on the ignorable coordinate is flagged") {
  const GSProblem prob = translational(0.5 * (X * X + Y * Y) + Z, 1.0, 2.0 * T);
  const ResidualReport r = gs_residual(prob, sample_domain(DomainSpec{}, 100));
  CHECK_FALSE(r.check("ignorable").pass);
}

TEST_CASE("axis samples fail per sample") {
  const GSProblem prob = axisymmetric(X * X + Y * Y, 0.0, 0.0);
  const ResidualReport r =
      gs_residual(prob, explicit_samples(DomainSpec{}, {Point3{0, 0, 0.5}, Point3{0.5, 0, 0}}));
  // Failures are counted and excluded from the statistics.
  CHECK(r.check("gs_residual").failed == 1);
  CHECK(r.check("gs_residual").evaluated == 1);
  CHECK_FALSE(r.check("gs_residual").first_error.empty());
}

TEST_CASE("GSProblem JSON and chart names") {
  const GSProblem prob = translational(parse_scalar("(x^2+y^2)/2"), parse_univariate("1"), parse_univariate("2*T"));
  const auto j = to_json(prob);
  CHECK(j["chart"] == "translational");
  CHECK(j["theta"] == prob.theta.str());
  CHECK(parse_chart_kind("axisymmetric") == ChartKind::kAxisymmetric);
  CHECK_THROWS_AS(parse_chart_kind("helical"), std::invalid_argument);
}

TEST_CASE("generalized Grad-Shafranov check on the pressure example") {
  const GGSData d = ggse_example_w4_1();
  const SampleSet s = sample_domain(DomainSpec::box({-1, -1, 0.2}, {1, 1, 1}), 500);
  const ResidualReport r = ggse_check(d, s);
  CHECK(r.passed());
  CHECK(r.check("curl_w").max < 1e-12);
  CHECK(r.check("psi_theta").max < 1e-6);
  CHECK(std::abs(r.check("psi_theta").min) < 1e-6);
  CHECK(r.check("ggse").max < 1e-6);
  CHECK(std::abs(r.check("ggse").min) < 1e-6);
  CHECK(r.check("phi_path_independence").max < 1e-6);

  // The hand-derived potential agrees with the integrated one.
  GGSData with_phi = d;
  with_phi.phi = 0.5 * (X * X - Y * Y) + Z + X * (1.0 + Z) * exp(-Z) + (0.5 * Z + 0.25) * exp(-2.0 * Z);
  const ResidualReport rp = ggse_check(with_phi, s);
  CHECK(rp.passed());
  CHECK(rp.check("decomposition").max < 1e-12);
  CHECK(rp.check("phi_vs_supplied").max < 1e-9);

  // Constant shift of Psi changes neither the Jacobian condition nor the equation.
  GGSData shifted = with_phi;
  shifted.psi = d.psi + 3.0;
  shifted.field.reset();
  const ResidualReport rs = ggse_check(shifted, s);
  CHECK(rs.check("psi_theta").max < 1e-6);
  CHECK(rs.check("ggse").max < 1e-6);

  // Doubling Psi doubles the Jacobian.
  GGSData doubled = shifted;
  doubled.psi = 2.0 * d.psi;
  const CheckStats pt = ggse_check(doubled, s).check("psi_theta");
  CHECK(pt.min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(pt.pass);
}

TEST_CASE("vanishing grad Theta is refused") {
  GGSData d = ggse_example_w4_1();
  d.theta = 1.0;  // e.g. Theta = chi for a Beltrami field
  const ResidualReport r = ggse_check(d, sample_domain(DomainSpec{}, 50));
  CHECK_FALSE(r.passed());
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].name == "theta_gradient");
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("path integration of an exact gradient") {
  const VectorField g = grad(X * Y * Z + sin(X));
  const auto [a, b] = integrate_phi_paths(g, {0, 0, 0}, {0.5, -0.3, 0.8}, 1e-3);
  const double exact = 0.5 * -0.3 * 0.8 + std::sin(0.5);
  CHECK(a == doctest::Approx(exact).epsilon(1e-12));
  CHECK(b == doctest::Approx(exact).epsilon(1e-12));
}
