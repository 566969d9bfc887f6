#include <cmath>
#include <random>

#include "doctest.h"
#include "mfs/beltrami.hpp"
#include "mfs/pressure.hpp"
#include "mfs/symmetry.hpp"
#include "support/oracles.hpp"

using namespace mfs;

namespace {
const ScalarField X = coord(0), Y = coord(1), Z = coord(2);

const KillingParams kCanonical[6] = {{{1, 0, 0}, {}}, {{0, 1, 0}, {}}, {{0, 0, 1}, {}},
                                     {{}, {1, 0, 0}}, {{}, {0, 1, 0}}, {{}, {0, 0, 1}}};

struct Case {
  std::string name;
  VectorField field;
  DomainSpec domain;
  int expected;
};

std::vector<Case> verdict_cases() {
  std::vector<Case> out;
  for (const char* n : {"abc_minimal", "cylindrical", "exp_x3", "zsq_x3"}) {
    const BeltramiRecord r = beltrami_catalog(n);
    out.push_back({n, r.field, r.domain, 0});
  }
  // d/dx, d/dy and the screw motion d/dz - d/dphi.
  out[0].expected = 3;
  out[1].expected = 1;
  for (const char* n : {"w4_1", "w4_2", "w4_3"}) {
    out.push_back({n, pressure_catalog(n).field, DomainSpec::ball({0, 0, 0}, 1), 0});
  }
  return out;
}

// Projection of k onto the span of the basis, as a 6-vector residual norm.
double distance_to_span(const KillingParams& k, const std::vector<KillingParams>& basis) {
  double v[6] = {k.a.x, k.a.y, k.a.z, k.b.x, k.b.y, k.b.z};
  for (const KillingParams& e : basis) {
    const double u[6] = {e.a.x, e.a.y, e.a.z, e.b.x, e.b.y, e.b.z};
    double d = 0;
    for (int i = 0; i < 6; ++i) d += u[i] * v[i];
    for (int i = 0; i < 6; ++i) v[i] -= d * u[i];
  }
  double n = 0;
  for (double c : v) n += c * c;
  return std::sqrt(n);
}

Point3 rotate(const Point3& p, const Vec3& axis, double angle, const Point3& center) {
  const Vec3 k = (1.0 / norm(axis)) * axis;
  const Vec3 v = p - center;
  const Vec3 r = std::cos(angle) * v + std::sin(angle) * cross(k, v) + (1 - std::cos(angle)) * dot(k, v) * k;
  return center + r;
}

double sup_over(const SampleSet& s, const std::function<double(const Point3&)>& f) {
  double worst = 0;
  for (const Point3& p : s.points) worst = std::max(worst, f(p));
  return worst;
}
}  // namespace

TEST_CASE("lie_euclidean examples") {
  const VectorField c(1.0, 0.0, 0.0);
  const Point3 p{0.3, -0.2, 0.7};
  CHECK(norm(lie_euclidean(c, KillingParams{})(p)) == 0.0);
  CHECK(norm(lie_euclidean(c, KillingParams{{}, {0, 0, 1}})(p) - Vec3{0, -1, 0}) < 1e-15);

  const VectorField w = beltrami_catalog("exp_x3").field;
  const SampleSet s = sample_domain(DomainSpec::ball({0, 0, 0}, 1), 100);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 4; ++trial) {
    const KillingParams k = trial == 0 ? KillingParams{{1, 0, 0}, {}}
                                       : KillingParams{{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
    const VectorField L = lie_euclidean(w, k);
    const double err = sup_over(s, [&](const Point3& q) {
      const double sn = std::sin(q.y + std::exp(q.z)), cs = std::cos(q.y + std::exp(q.z)), ex = std::exp(q.x);
      const Vec3& a = k.a;
      const Vec3& b = k.b;
      const double expected =
          ex * sn * (a.y + b.z * (1 + q.x) - b.x * q.z + std::exp(q.z) * (a.z + b.x * q.y - b.y * q.x)) -
          ex * cs * (a.x + b.y * q.z - b.z * q.y);
      return std::abs(L(q).x - expected);
    });
    CHECK(err < 1e-12);
  }
}

TEST_CASE("parse_generator") {
  CHECK(parse_generator("tx").a.x == 1.0);
  CHECK(parse_generator("rot-z").b.z == 1.0);
  const KillingParams k = parse_generator("1,2,3,4,5,6");
  CHECK(k.a.z == 3.0);
  CHECK(k.b.x == 4.0);
  CHECK_THROWS_AS(parse_generator("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_generator("rot-w"), std::invalid_argument);
  CHECK_THROWS_AS(parse_generator("1,2,3,4,5,nan"), std::invalid_argument);
}

TEST_CASE("constant field has translations and the rotation about its axis") {
  const VectorField c(1.0, 0.0, 0.0);
  const KillingReport r = killing_scan(c, DomainSpec::ball({0, 0, 0}, 1), 1000);
  CHECK(r.null_dim == 4);
  CHECK_FALSE(r.degenerate_sampling);
  // Brute force: evaluate L_k c for each canonical generator.
  const SampleSet s = sample_domain(DomainSpec::ball({0, 0, 0}, 1), 200);
  for (int i = 0; i < 6; ++i) {
    const VectorField L = lie_euclidean(c, kCanonical[i]);
    const bool is_symmetry = sup_over(s, [&](const Point3& p) { return norm(L(p)); }) < 1e-12;
    CAPTURE(i);
    CHECK(is_symmetry == (i != 4 && i != 5));
    CHECK((distance_to_span(kCanonical[i], r.null_basis) < 1e-9) == is_symmetry);
  }
  for (double o : r.out_of_sample) CHECK(o < 10 * kKillingThreshold);
}

TEST_CASE("null basis is orthonormal and spans the expected generators") {
  const BeltramiRecord abc = beltrami_catalog("abc_minimal");
  const KillingReport r = killing_scan(abc.field, abc.domain);
  REQUIRE(r.null_dim == 3);
  CHECK(distance_to_span(kCanonical[0], r.null_basis) < 1e-9);
  CHECK(distance_to_span(kCanonical[1], r.null_basis) < 1e-9);
  const KillingParams screw{{0, 0, 1}, {0, 0, -1}};
  CHECK(distance_to_span((1 / std::sqrt(2.0)) * screw, r.null_basis) < 1e-9);
  CHECK(distance_to_span(kCanonical[2], r.null_basis) > 0.5);
  for (std::size_t i = 0; i < r.null_basis.size(); ++i) {
    for (std::size_t j = 0; j < r.null_basis.size(); ++j) {
      const KillingParams& u = r.null_basis[i];
      const KillingParams& v = r.null_basis[j];
      CHECK(std::abs(dot(u.a, v.a) + dot(u.b, v.b) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
  const BeltramiRecord cyl = beltrami_catalog("cylindrical");
  const KillingReport rc = killing_scan(cyl.field, cyl.domain);
  REQUIRE(rc.null_dim == 1);
  CHECK(distance_to_span(kCanonical[5], rc.null_basis) < 1e-9);
  CHECK(rc.null_basis[0].b.z == doctest::Approx(1.0));
}

TEST_CASE("symmetry verdicts are stable under resampling, reseeding and rotation") {
  for (const Case& c : verdict_cases()) {
    CAPTURE(c.name);
    const KillingReport base = killing_scan(c.field, c.domain, 1000);
    CHECK(base.null_dim == c.expected);
    CHECK(base.smallest_nonnull_ratio > 100 * kKillingThreshold);
    if (base.null_dim > 0) CHECK(base.largest_null_ratio < 1e-10);
    for (double o : base.out_of_sample) CHECK(o < 10 * kKillingThreshold);
    CHECK(killing_scan(c.field, c.domain, 2000).null_dim == c.expected);
    CHECK(killing_scan(c.field, c.domain, 1000, kKillingThreshold, {SamplerKind::kRandom, 7}).null_dim ==
          c.expected);
    CHECK(killing_scan(c.field, c.domain, 1000, kKillingThreshold, {SamplerKind::kRandom, 99}).null_dim ==
          c.expected);
  }
  // Rigid rotations that keep the sample set inside its domain.
  for (const Case& c : verdict_cases()) {
    const bool ball = c.domain.str().rfind("ball", 0) == 0;
    const bool shell = c.domain.str().rfind("cylshell", 0) == 0;
    if (!ball && !shell) continue;
    CAPTURE(c.name);
    const SampleSet s = sample_domain(c.domain, 1000);
    std::vector<Point3> moved;
    for (const Point3& p : s.points) {
      moved.push_back(ball ? rotate(p, {0.3, -0.5, 0.8}, 0.9, {0, 0, 0}) : rotate(p, {0, 0, 1}, 1.3, {0, 0, 0}));
    }
    CHECK(killing_scan(c.field, explicit_samples(c.domain, moved)).null_dim == c.expected);
  }
}

TEST_CASE("scale equivariance") {
  const BeltramiRecord abc = beltrami_catalog("abc_minimal");
  const KillingReport r1 = killing_scan(abc.field, abc.domain);
  for (double s : {-3.0, 0.01, 250.0}) {
    const KillingReport r2 = killing_scan(s * abc.field, abc.domain);
    REQUIRE(r2.null_dim == r1.null_dim);
    for (const KillingParams& k : r1.null_basis) CHECK(distance_to_span(k, r2.null_basis) < 1e-9);
  }
}

TEST_CASE("collinear samples are flagged") {
  std::vector<Point3> line;
  for (int i = 0; i < 50; ++i) line.emplace_back(-0.5 + 0.02 * i, 0.0, 0.0);
  const KillingReport r = killing_scan(beltrami_catalog("exp_x3").field, explicit_samples(DomainSpec{}, line));
  CHECK(r.degenerate_sampling);
  CHECK(r.null_dim > 0);
  CHECK_THROWS_AS(killing_scan(VectorField(1.0, 0.0, 0.0), DomainSpec{}, 5), std::invalid_argument);
}

TEST_CASE("killing report JSON") {
  const KillingReport r = killing_scan(VectorField(1.0, 0.0, 0.0), DomainSpec{}, 100);
  const auto j = to_json(r);
  CHECK(j["singular_values"].size() == 6);
  CHECK(j["null_dim"] == 4);
  CHECK(j["null_basis"].size() == 4);
  CHECK(j["null_basis"][0]["a"].size() == 3);
  CHECK(j["n_samples"] == 100);
  CHECK(j.dump() == to_json(killing_scan(VectorField(1.0, 0.0, 0.0), DomainSpec{}, 100)).dump());
}

TEST_CASE("abc_minimal local symmetries") {
  const VectorField w = beltrami_catalog("abc_minimal").field;
  const SampleSet s = sample_domain(alpha_domain("abc_minimal"), 500);
  // (p, g) = (1, -sin theta) gives d/dx.
  const LocalSymmetrySpec tx = abc_local_symmetry(1.0, -sin(X));
  CHECK(sup_over(s, [&](const Point3& p) { return norm(tx.xi(p) - Vec3{1, 0, 0}); }) < 1e-12);
  const ResidualReport r = verify_local_symmetry(w, tx, s);
  CHECK(r.passed());
  CHECK(r.check("lie_derivative").max < 1e-12);
  // General choices.
  const LocalSymmetrySpec gen = abc_local_symmetry(sin(X) * Y + Y * Y, X * X);
  const ResidualReport rg = verify_local_symmetry(w, gen, s, 1e-8);
  CHECK(rg.passed());
  CHECK(rg.check("w_cross_xi_minus_grad_g").max < 1e-7);
  // xi against an independent finite-difference Lie derivative.
  const Point3 p{0.2, 0.1, 0.6};
  const auto wf = [&](const Point3& q) { return w(q); };
  const auto xf = [&](const Point3& q) { return gen.xi(q); };
  const Vec3 fd = mfs::testing::fd_directional(wf, gen.xi(p), p) - mfs::testing::fd_directional(xf, w(p), p);
  CHECK(norm(fd) < 1e-7);
}

TEST_CASE("cylindrical local symmetries") {
  const VectorField w = beltrami_catalog("cylindrical").field;
  const DomainSpec dom =
      DomainSpec::cylindrical_shell(0, 0, 0.5, 1.5, -1, 1).excluding(Exclusion::slab(2, -0.2, 0.2));
  const SampleSet s = sample_domain(dom, 500);
  const LocalSymmetrySpec rot = cylindrical_local_symmetry(0.0, -sin(X), 0.0);
  CHECK(sup_over(s, [&](const Point3& p) { return norm(rot.xi(p) - Vec3{-p.y, p.x, 0}); }) < 1e-12);
  CHECK(verify_local_symmetry(w, rot, s).check("lie_derivative").max < 1e-8);
  const LocalSymmetrySpec gen = cylindrical_local_symmetry(X * Y + 1.0, cos(X), 0.3 * X);
  const SampleSet s2 = sample_domain(alpha_domain("cylindrical"), 500);
  const ResidualReport r = verify_local_symmetry(w, gen, s2, 1e-7);
  CHECK(r.passed());
}

TEST_CASE("example3 closed-form symmetry") {
  const VectorField w = beltrami_catalog("example3").field;
  const DomainSpec dom = DomainSpec::box({-0.5, -0.3, 0.8}, {0.5, 0.3, 1.1});
  const SampleSet s = sample_domain(dom, 500);
  const LocalSymmetrySpec spec = example3_local_symmetry(0.0, X);
  const ResidualReport r = verify_local_symmetry(w, spec, s, 1e-7);
  CHECK(r.passed());
  const ResidualReport r2 = verify_local_symmetry(w, example3_local_symmetry(X * Y, sin(X)), s, 1e-7);
  CHECK(r2.passed());
}

TEST_CASE("tangent basis inverts the coordinate gradients") {
  const LocalChart chart{exp(X) * sin(Y), -(exp(X) * cos(Y)), Z * Z};
  const auto d = tangent_basis(chart);
  const Point3 p{0.1, 0.2, 0.9};
  const Vec3 g[3] = {grad(chart.ell)(p), grad(chart.chart_psi)(p), grad(chart.theta)(p)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(dot(g[i], d[j](p)) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("alpha by characteristics matches the closed forms") {
  const SampleSet abc_s = sample_domain(alpha_domain("abc_minimal"), 200);
  const AlphaResult a = alpha_from_characteristics("abc_minimal", sin(X) * Y + Y * Y, X * X, 0.0, abc_s);
  CHECK(a.failures == 0);
  CHECK(a.sup_error < 1e-6);
  CHECK(a.report.passed());

  const SampleSet cyl_s = sample_domain(alpha_domain("cylindrical"), 100);
  const AlphaResult c = alpha_from_characteristics("cylindrical", cos(Y) + X, X * X, 0.0, cyl_s);
  CHECK(c.failures == 0);
  CHECK(c.sup_error < 1e-6);
  // Closed form on R^3 agrees with the chart value at the targets.
  for (std::size_t i = 0; i < 5; ++i) CHECK(c.closed_form(cyl_s.points[i]) == doctest::Approx(c.exact[i]));

  const AlphaResult k = alpha_from_characteristics("abc_minimal", 3.0, 0.0, 0.0, abc_s);
  for (const CharacteristicValue& v : k.values) CHECK(v.value == 3.0);

  CHECK_THROWS_AS(alpha_from_characteristics("exp_x3", 0.0, 0.0, 0.0, abc_s), std::invalid_argument);
}
