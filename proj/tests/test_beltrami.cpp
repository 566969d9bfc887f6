#include <cmath>

#include "doctest.h"
#include "mfs/beltrami.hpp"
#include "mfs/field_core.hpp"

using namespace mfs;

namespace {
const ScalarField X = coord(0), Y = coord(1), Z = coord(2);
const HarmonicPair kExpPair{exp(X) * sin(Y), -(exp(X) * cos(Y))};
}  // namespace

TEST_CASE("non-conjugate pair is rejected with a Cauchy-Riemann report") {
  try {
    (void)from_harmonic_pair({X, -Y}, Z, DomainSpec::ball({0, 0, 0}, 1));
    FAIL("expected ConstructionError");
  } catch (const ConstructionError& e) {
    const CheckStats& cr = e.report().check("cauchy_riemann_ux_minus_vy");
    CHECK_FALSE(cr.pass);
    CHECK(cr.max == doctest::Approx(2.0));
    CHECK(e.report().check("cauchy_riemann_uy_plus_vx").pass);
  }
}

TEST_CASE("harmonic pair with sigma = e^z gives the asymmetric field") {
  const BeltramiRecord r = from_harmonic_pair(kExpPair, exp(Z), DomainSpec::ball({0, 0, 0}, 1));
  const Point3 o{0, 0, 0};
  CHECK(r.h(o) == doctest::Approx(1.0));
  CHECK(r.h({0.1, 0.2, 0.5}) == doctest::Approx(std::exp(0.5)));
  const ResidualReport rep = verify_beltrami(r, sample_domain(r.domain, 1000));
  CHECK(rep.check("beltrami").max < 1e-9);
  CHECK(rep.check("divergence").max < 1e-9);
  const BeltramiRecord ref = beltrami_catalog("exp_x3");
  CHECK(norm(r.field({0.3, -0.4, 0.2}) - ref.field({0.3, -0.4, 0.2})) < 1e-15);
}

TEST_CASE("harmonic pair with sigma = z^2 away from z = 0") {
  const DomainSpec d = DomainSpec::ball({0, 0, 0}, 1).excluding(Exclusion::slab(2, -0.1, 0.1));
  HarmonicConstructionOptions opt;
  opt.h_closed_form = 2.0 * Z;
  const BeltramiRecord r = from_harmonic_pair(kExpPair, Z * Z, d, opt);
  CHECK(r.h.str() == "(2 * z)");
  const ResidualReport rep = verify_beltrami(r, sample_domain(d, 1000));
  CHECK(rep.passed());
  CHECK(rep.check("helicity_density").min > 0.0);
}

TEST_CASE("sigma depending on x is rejected") {
  CHECK_THROWS_AS((void)from_harmonic_pair(kExpPair, Z + X, DomainSpec::ball({0, 0, 0}, 1)), ConstructionError);
}

TEST_CASE("a wrong closed form for h is rejected") {
  HarmonicConstructionOptions opt;
  opt.h_closed_form = Z;
  CHECK_THROWS_AS((void)from_harmonic_pair(kExpPair, Z * Z, DomainSpec::box({-1, -1, 0.5}, {1, 1, 1.5}), opt),
                  ConstructionError);
}

TEST_CASE("catalog spot values") {
  CHECK(norm(beltrami_catalog("abc_minimal").field({0, 0, 0}) - Vec3{0, 1, 0}) < 1e-15);
  CHECK(norm(beltrami_catalog("exp_x3").field({0, 0, 0}) - Vec3{-std::cos(1.0), std::sin(1.0), 0}) < 1e-15);
  const BeltramiRecord cyl = beltrami_catalog("cylindrical");
  CHECK(norm(cyl.field({1, 0, 0})) == doctest::Approx(1.0));
  CHECK(norm(cyl.field({0, 2, 0.3})) == doctest::Approx(0.5));
  CHECK(cyl.h({1, 0, 0}) == -1.0);
  CHECK(beltrami_catalog("zsq_x3").h({0, 0, 0.75}) == 1.5);
  CHECK_THROWS_AS((void)beltrami_catalog("nope"), std::invalid_argument);
}

TEST_CASE("every catalog entry is Beltrami on its default domain") {
  for (const std::string& name : beltrami_catalog_names()) {
    CAPTURE(name);
    const BeltramiRecord r = beltrami_catalog(name);
    const SampleSet s = sample_domain(r.domain, 1000);
    const ResidualReport rep = verify_beltrami(r, s);
    CHECK(rep.check("beltrami").max < 1e-8);
    CHECK(rep.check("divergence").max < 1e-8);
    CHECK(rep.check("helicity_density").min > 0.0);
    CHECK(rep.check("beltrami").evaluated == 1000);
    // Same numbers as the generic residual in field_core.
    const ResidualReport generic = beltrami_residual(r.field, r.h, s);
    CHECK(generic.check("beltrami").max == rep.check("beltrami").max);
    REQUIRE(r.chart.has_value());
    CHECK(verify_admissible(*r.chart, s).passed());
  }
}

TEST_CASE("exp_x3 helicity density equals e^(2x+z)") {
  const BeltramiRecord r = beltrami_catalog("exp_x3");
  const SampleSet s = sample_domain(r.domain, 500);
  const VectorField c = curl(r.field);
  double worst = 0;
  for (const Point3& p : s.points) {
    worst = std::max(worst, std::abs(dot(r.field(p), c(p)) - std::exp(2 * p.x + p.z)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("verify_admissible examples") {
  const SampleSet ball = sample_domain(DomainSpec::ball({0, 0, 0}, 1), 500);
  const ResidualReport cart = verify_admissible({{X, Y, Z}, true}, ball);
  CHECK(cart.passed());
  for (const CheckStats& c : cart.checks) CHECK(c.max == 0.0);

  const ResidualReport e = verify_admissible({{kExpPair.u, kExpPair.v, exp(Z)}, true}, ball);
  for (const CheckStats& c : e.checks) CHECK(std::max(std::abs(c.max), std::abs(c.min)) < 1e-9);

  const ResidualReport bad = verify_admissible({{X, 2.0 * Y, Z}, true}, ball);
  CHECK_FALSE(bad.passed());
  CHECK(bad.check("g11_minus_g22").max == -3.0);
  CHECK(bad.check("g11_minus_g22").min == -3.0);

  // The general system agrees on an orthogonal admissible chart.
  const ResidualReport general = verify_admissible({{kExpPair.u, kExpPair.v, exp(Z)}, false}, ball);
  CHECK(general.passed());
  CHECK(general.checks.size() == 3);
}

TEST_CASE("verify_h_invariance") {
  const BeltramiRecord e = beltrami_catalog("exp_x3");
  const ResidualReport re = verify_h_invariance(e, sample_domain(e.domain, 1000));
  CHECK(re.check("h_invariance").max < 1e-12);
  const BeltramiRecord a = beltrami_catalog("abc_minimal");
  CHECK(verify_h_invariance(a, sample_domain(a.domain, 200)).check("h_invariance").max == 0.0);

  BeltramiRecord wrong = e;
  wrong.h = Z * Z;
  const ResidualReport rw = verify_h_invariance(wrong, sample_domain(e.domain, 200));
  CHECK(rw.check("h_invariance").evaluated == 200);
  CHECK_FALSE(rw.check("beltrami").pass);
  CHECK_FALSE(rw.notes.empty());
}
