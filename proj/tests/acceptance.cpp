// End-to-end acceptance run: one PASS/FAIL line per criterion, exit code 1
// if any criterion fails. Tolerances are fixed here, not taken from flags.

#include <Eigen/Dense>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "mfs/beltrami.hpp"
#include "mfs/cli.hpp"
#include "mfs/composite.hpp"
#include "mfs/field_core.hpp"
#include "mfs/gradshafranov.hpp"
#include "mfs/lie_ops.hpp"
#include "mfs/pressure.hpp"
#include "mfs/symmetry.hpp"
#include "support/oracles.hpp"

using namespace mfs;

namespace {

const ScalarField X = coord(0), Y = coord(1), Z = coord(2);

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
  }
}

double max_of(const ResidualReport& r, const std::string& check) { return r.check(check).max; }

Eigen::Matrix<double, 6, 1> as_vec6(const KillingParams& k) {
  Eigen::Matrix<double, 6, 1> v;
  v << k.a.x, k.a.y, k.a.z, k.b.x, k.b.y, k.b.z;
  return v;
}

/// Distance from k to the span of the (orthonormal) basis.
double off_span(const KillingParams& k, const std::vector<KillingParams>& basis) {
  Eigen::Matrix<double, 6, 1> v = as_vec6(k);
  for (const KillingParams& e : basis) v -= as_vec6(e).dot(v) * as_vec6(e);
  return v.norm();
}

Outcome beltrami_catalog_check() {
  Outcome o;
  double worst_curl = 0, worst_div = 0;
  for (const std::string name : {"abc_minimal", "cylindrical", "exp_x3", "zsq_x3", "example3"}) {
    const BeltramiRecord rec = beltrami_catalog(name);
    const ResidualReport r = verify_beltrami(rec, sample_domain(rec.domain, 1000), 1e-8);
    const double c = max_of(r, "beltrami"), d = max_of(r, "divergence");
    require(o, c < 1e-8 && d < 1e-8 && r.check("beltrami").failed == 0, name);
    worst_curl = std::max(worst_curl, c);
    worst_div = std::max(worst_div, d);
  }
  // The proportionality factors named in the criterion.
  const Point3 p(0.3, -0.2, 0.7);
  require(o, beltrami_catalog("abc_minimal").h(p) == 1.0 && beltrami_catalog("cylindrical").h(p) == -1.0 &&
                 beltrami_catalog("exp_x3").h(p) == std::exp(p.z) && beltrami_catalog("zsq_x3").h(p) == 2 * p.z &&
                 beltrami_catalog("example3").h(p) == 2 * p.z,
          "proportionality factors");
  o.detail = "max|curl w - h w| " + sci(worst_curl) + ", max|div w| " + sci(worst_div) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome pressure_catalog_check() {
  Outcome o;
  double worst = 0;
  for (const std::string name : {"w4_1", "w4_2", "w4_3", "w4_4"}) {
    const ClebschSolution s = pressure_catalog(name);
    const ResidualReport r = force_balance_residual(s.field, s.chi, sample_domain(s.domain, 1000));
    const double f = max_of(r, "force_balance");
    require(o, f < 1e-8 && r.check("force_balance").failed == 0, name);
    worst = std::max(worst, f);
  }
  const ClebschSolution s = pressure_catalog("w4_1");
  const Vec3 w = s.field({0, 0, 0});
  const Vec3 gchi = grad(s.chi)({0, 0, 0});
  const double spot = std::max(norm(w - Vec3{1, 0, 1}), norm(gchi - Vec3{1, 0, -1}));
  require(o, spot < 1e-12, "spot values at the origin");
  o.detail = "max|w x curl w - grad chi| " + sci(worst) + ", origin spot error " + sci(spot) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome symmetry_table_check() {
  Outcome o;
  const std::vector<std::string> names = {"abc_minimal", "cylindrical", "exp_x3", "zsq_x3", "w4_1", "w4_2", "w4_3"};
  const std::vector<int> expected = {2, 1, 0, 0, 0, 0, 0};
  const auto field_of = [](const std::string& n) {
    if (is_beltrami_name(n)) {
      const BeltramiRecord r = beltrami_catalog(n);
      return std::make_pair(r.field, r.domain);
    }
    const ClebschSolution s = pressure_catalog(n);
    return std::make_pair(s.field, s.domain);
  };
  std::string observed = "(";
  bool stable = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto [w, dom] = field_of(names[i]);
    const int base = killing_scan(w, dom, 1000).null_dim;
    const int doubled = killing_scan(w, dom, 2000).null_dim;
    const int reseeded = killing_scan(w, dom, 1000, kKillingThreshold, {SamplerKind::kRandom, 7}).null_dim;
    stable = stable && base == doubled && base == reseeded;
    observed += (i ? "," : "") + std::to_string(base);
    require(o, base == expected[i],
            names[i] + " null dimension " + std::to_string(base) + ", expected " + std::to_string(expected[i]));
  }
  require(o, stable, "verdicts change with sample count or seed");
  o.detail = "null dimensions " + observed + ") expected (2,1,0,0,0,0,0), stable under doubling/reseeding: " +
             (stable ? "yes" : "no") + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome killing_oracle_check() {
  Outcome o;
  const Vec3 c{1.0, 2.0, -1.0};
  const VectorField w(c.x, c.y, c.z);
  const KillingReport k = killing_scan(w, DomainSpec{}, 1000);
  require(o, k.null_dim == 4, "null dimension " + std::to_string(k.null_dim));

  // Brute force over the six canonical generators at one point; L_k w is
  // linear in k, so its null space is the kernel of this 3 x 6 matrix.
  Eigen::Matrix<double, 3, 6> m;
  for (int j = 0; j < 6; ++j) {
    KillingParams e;
    (j < 3 ? e.a : e.b) = Vec3{j % 3 == 0 ? 1.0 : 0.0, j % 3 == 1 ? 1.0 : 0.0, j % 3 == 2 ? 1.0 : 0.0};
    const Vec3 l = lie_euclidean(w, e)({0.2, 0.1, -0.3});
    m.col(j) << l.x, l.y, l.z;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 3, 6>> lu(m);
  const int brute_dim = static_cast<int>(lu.dimensionOfKernel());
  require(o, brute_dim == k.null_dim, "brute-force kernel dimension " + std::to_string(brute_dim));
  double worst = 0;
  const Eigen::MatrixXd kernel = lu.kernel();
  for (int j = 0; j < kernel.cols(); ++j) {
    const Eigen::VectorXd v = kernel.col(j).normalized();
    worst = std::max(worst, off_span({{v(0), v(1), v(2)}, {v(3), v(4), v(5)}}, k.null_basis));
  }
  const double axis = off_span({{}, c * (1.0 / norm(c))}, k.null_basis);
  const double trans = std::max({off_span({{1, 0, 0}, {}}, k.null_basis), off_span({{0, 1, 0}, {}}, k.null_basis),
                                 off_span({{0, 0, 1}, {}}, k.null_basis)});
  require(o, worst < 1e-9, "scan and brute-force kernels differ");
  require(o, axis < 1e-9 && trans < 1e-9, "translations and axial rotation not in the null space");
  o.detail = "null dimension " + std::to_string(k.null_dim) + " (brute force " + std::to_string(brute_dim) +
             "), kernel mismatch " + sci(worst) + ", translations " + sci(trans) + ", axial rotation " + sci(axis) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome commutator_check() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const SampleSet s = sample_domain(DomainSpec{}, 200);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const VectorField w = mfs::testing::random_solenoidal(rng);
    const KillingParams k{mfs::testing::random_unit_box(rng), mfs::testing::random_unit_box(rng)};
    const ResidualReport r = commutator_defect(w, k, s);
    require(o, r.check("commutator_defect").failed == 0, "evaluation failure in field " + std::to_string(i));
    worst = std::max(worst, max_of(r, "commutator_defect"));
  }
  require(o, worst < 1e-5, "defect too large");
  o.detail = "50 random solenoidal fields, max defect " + sci(worst) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome orbit_check() {
  Outcome o;
  const BeltramiRecord base = beltrami_catalog("zsq_x3");
  const SampleSet s = sample_domain(base.domain, 1000);
  const VectorField lx = lie_euclidean(base.field, {{1, 0, 0}, {}});
  double repeat = 0;
  for (const Point3& p : s.points) repeat = std::max(repeat, norm(lx(p) - base.field(p)));
  require(o, repeat < 1e-9, "translation derivative differs from the field");

  const LieOrbit orbit = lie_generate(base, {{}, {0, 0, 1}}, 1);
  BeltramiRecord member = base;
  member.name = "rot-z transport of zsq_x3";
  member.field = orbit.members.at(1);
  const ResidualReport r = verify_beltrami(member, s, 1e-8);
  const double c = max_of(r, "beltrami"), d = max_of(r, "divergence");
  require(o, c < 1e-8 && d < 1e-8, "transported field is not Beltrami with h = 2z");
  require(o, r.check("helicity_density").pass, "transported field is trivial");
  const int nd = killing_scan(member.field, base.domain, 1000).null_dim;
  require(o, nd == 0, "transported field null dimension " + std::to_string(nd));
  o.detail = "max|L_x w - w| " + sci(repeat) + "; rotated member: max|curl w - 2z w| " + sci(c) + ", max|div w| " +
             sci(d) + ", null dimension " + std::to_string(nd) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome gs_check() {
  Outcome o;
  const GSProblem prob{{ChartKind::kTranslational}, 0.5 * (X * X + Y * Y), 1.0, 2.0 * X};
  const SampleSet s = sample_domain(DomainSpec{}, 1000);
  const ResidualReport r = gs_residual(prob, s, 1e-10);
  const double res = max_of(r, "gs_residual");
  require(o, res < 1e-10 && r.passed(), "residual");
  const GSReconstruction rec = gs_reconstruct(prob);
  const ResidualReport fb = force_balance_residual(rec.field, rec.chi, s, {1e-9, 1e-9});
  const double f = max_of(fb, "force_balance");
  require(o, f < 1e-9 && fb.passed(), "reconstruction force balance");
  o.detail = "Theta = (x^2+y^2)/2, w3 = 1, chi = 2T: max|residual| " + sci(res) + ", reconstruction force balance " +
             sci(f) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome ggse_check_criterion() {
  Outcome o;
  const SampleSet s = sample_domain(DomainSpec::box({-1, -1, 0.2}, {1, 1, 1}), 500);
  const ResidualReport r = ggse_check(ggse_example_w4_1(), s, {});
  const CheckStats* pt = r.find("psi_theta");
  const CheckStats* lhs = r.find("ggse");
  require(o, pt && lhs, "checks missing (refused: " + (r.notes.empty() ? std::string("?") : r.notes.front()) + ")");
  if (!pt || !lhs) return o;
  const double a = std::max(std::abs(pt->max), std::abs(pt->min));
  const double b = std::max(std::abs(lhs->max), std::abs(lhs->min));
  require(o, a < 1e-6 && pt->failed == 0, "Psi_1 Theta_2 - Psi_2 Theta_1 != 1");
  require(o, b < 1e-6 && lhs->failed == 0, "GGSE left-hand side != 1");
  o.detail = "500 samples: max|Psi_1 Theta_2 - Psi_2 Theta_1 - 1| " + sci(a) + ", max|LHS - 1| " + sci(b) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome characteristics_check() {
  Outcome o;
  std::string parts;
  for (const std::string name : {"w4_1", "w4_2"}) {
    const ClebschSolution sol = pressure_catalog(name);
    const PsiCharacteristicsResult r = psi_from_characteristics(sol, sample_domain(sol.domain, 200));
    require(o, r.sup_error < 1e-6 && r.failures == 0, "psi of " + name);
    parts += "psi " + name + " " + sci(r.sup_error) + ", ";
  }
  const AlphaResult abc = alpha_from_characteristics("abc_minimal", sin(X) * Y + Y * Y, X * X, 0.0,
                                                     sample_domain(alpha_domain("abc_minimal"), 200));
  require(o, abc.sup_error < 1e-6 && abc.failures == 0, "alpha of abc_minimal");
  const AlphaResult cyl = alpha_from_characteristics("cylindrical", cos(Y) + X, X * X, 0.0,
                                                     sample_domain(alpha_domain("cylindrical"), 200));
  require(o, cyl.sup_error < 1e-6 && cyl.failures == 0, "alpha of cylindrical");
  o.detail = "sup errors: " + parts + "alpha abc_minimal " + sci(abc.sup_error) + ", alpha cylindrical " +
             sci(cyl.sup_error) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome composite_check() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const PiecewiseField pf = default_composite();
  CompositeOptions opt;
  opt.mc_points = 100000;
  const CompositeReport r = verify_composite(pf, opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0;
  for (const ResidualReport& rr : r.regions) {
    for (const char* name : {"force_balance", "beltrami", "divergence"}) {
      if (const CheckStats* c = rr.find(name)) {
        worst = std::max(worst, c->max);
        require(o, c->failed == 0, rr.subject + " " + name + " evaluation failures");
      }
    }
  }
  require(o, r.l2.finite && r.l2.relative_error < 0.02, "L2 estimate");
  require(o, worst < 1e-8, "region residuals");
  require(o, r.core_symmetry.null_dim == 0, "core null dimension " + std::to_string(r.core_symmetry.null_dim));
  require(o, seconds < 120, "runtime");
  o.detail = "L2^2 " + fmt("%.4f", r.l2.integral) + " (relative SE " + sci(r.l2.relative_error) + ", " +
             std::to_string(r.l2.points) + " points), max region residual " + sci(worst) + ", core null dimension " +
             std::to_string(r.core_symmetry.null_dim) + ", " + fmt("%.1f", seconds) + " s" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome determinism_check() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs = {
      {"catalog", "--json"},
      {"verify", "w4_4", "--format", "json"},
      {"verify", "zsq_x3", "--format", "json", "--sampler", "random", "--seed", "3"},
      {"symmetry", "abc_minimal", "--format", "json"},
      {"orbit", "zsq_x3", "--gen", "rot-z", "--n", "2", "--format", "json"},
      {"gs", "--chart", "axisymmetric", "--theta", "(x^2+y^2)^2/8 + (x^2+y^2)*z^2/2", "--chi", "2*T", "--format",
       "json"},
      {"ggse", "w4_1", "--format", "json"},
      {"composite", "--mc-points", "20000", "--format", "json"},
      {"characteristics", "w4_3", "--samples", "50", "--format", "json"},
      {"export", "exp_x3", "--grid", "6", "--format", "json"}};
  for (const auto& args : runs) {
    std::ostringstream a, b, e;
    run_cli(args, a, e);
    run_cli(args, b, e);
    require(o, !a.str().empty() && a.str() == b.str(), args.front() + " output differs between runs");
  }
  o.detail = std::to_string(runs.size()) + " suites rerun, JSON compared byte for byte" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"beltrami_catalog", beltrami_catalog_check},   {"pressure_catalog", pressure_catalog_check},
      {"symmetry_table", symmetry_table_check},       {"killing_oracle", killing_oracle_check},
      {"commutator", commutator_check},               {"orbit", orbit_check},
      {"grad_shafranov", gs_check},                   {"generalized_gs", ggse_check_criterion},
      {"characteristics", characteristics_check},     {"composite", composite_check},
      {"determinism", determinism_check}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%2zu] %-17s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
