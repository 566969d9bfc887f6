#include "mfs/symmetry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mfs/parallel.hpp"

namespace mfs {
namespace {

const ScalarField X = coord(0), Y = coord(1), Z = coord(2);
const Vec3 kAxes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, end};
}

KillingParams from_vector(const Eigen::Matrix<double, 6, 1>& v) {
  return {{v(0), v(1), v(2)}, {v(3), v(4), v(5)}};
}

// Rows of `basis` span the null space. Row-reduce so the basis is
// independent of how the SVD happened to rotate it, then re-orthonormalize.
std::vector<Eigen::Matrix<double, 6, 1>> canonical_basis(Eigen::MatrixXd basis) {
  const Eigen::Index k = basis.rows();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < 6 && row < k; ++col) {
    Eigen::Index pivot = row;
    for (Eigen::Index r = row + 1; r < k; ++r) {
      if (std::abs(basis(r, col)) > std::abs(basis(pivot, col))) pivot = r;
    }
    if (std::abs(basis(pivot, col)) < 1e-9) continue;
    basis.row(row).swap(basis.row(pivot));
    basis.row(row) /= basis(row, col);
    for (Eigen::Index r = 0; r < k; ++r) {
      if (r != row) basis.row(r) -= basis(r, col) * basis.row(row);
    }
    ++row;
  }
  std::vector<Eigen::Matrix<double, 6, 1>> out;
  for (Eigen::Index r = 0; r < k; ++r) {
    Eigen::Matrix<double, 6, 1> v = basis.row(r).transpose();
    for (const auto& u : out) v -= u.dot(v) * u;
    const double n = v.norm();
    if (n < 1e-12) continue;
    v /= n;
    for (double& c : v) {
      if (std::abs(c) < 1e-15) c = 0.0;  // avoid printing -0 and dust
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

double KillingParams::norm() const { return std::sqrt(dot(a, a) + dot(b, b)); }

std::string KillingParams::str() const {
  return "a=[" + num(a.x) + "," + num(a.y) + "," + num(a.z) + "] b=[" + num(b.x) + "," + num(b.y) + "," +
         num(b.z) + "]";
}

KillingParams operator+(const KillingParams& k1, const KillingParams& k2) { return {k1.a + k2.a, k1.b + k2.b}; }
KillingParams operator*(double s, const KillingParams& k) { return {s * k.a, s * k.b}; }

KillingParams parse_generator(const std::string& text) {
  if (text == "tx") return {{1, 0, 0}, {}};
  if (text == "ty") return {{0, 1, 0}, {}};
  if (text == "tz") return {{0, 0, 1}, {}};
  if (text == "rot-x") return {{}, {1, 0, 0}};
  if (text == "rot-y") return {{}, {0, 1, 0}};
  if (text == "rot-z") return {{}, {0, 0, 1}};
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double d = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(d)) {
      throw std::invalid_argument("bad generator component '" + item + "'");
    }
    v.push_back(d);
  }
  if (v.size() != 6) {
    throw std::invalid_argument("generator must be tx|ty|tz|rot-x|rot-y|rot-z or six numbers a1,a2,a3,b1,b2,b3");
  }
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

VectorField lie_euclidean(const VectorField& w, const KillingParams& k) { return lie_euclidean(w, k.a, k.b); }

KillingReport killing_scan(const VectorField& w, const SampleSet& samples, double threshold) {
  const std::size_t n = samples.size();
  std::vector<std::array<double, 18>> rows(n);
  std::vector<char> ok(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const Point3& p = samples.points[i];
    std::array<Taylor3, 3> t;
    try {
      t = w.taylor(p, 1);
    } catch (const EvalError&) {
      return;
    }
    const Vec3 wv(t[0].value(), t[1].value(), t[2].value());
    Mat3 J;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) J(r, c) = t[r].coeffs()[1 + c];
    }
    const double scale = 1.0 / std::max(1.0, norm(wv));
    for (int k = 0; k < 3; ++k) {
      const Vec3 ca = J.column(k);
      const Vec3 cb = J * cross(kAxes[k], p.as_vec()) - cross(kAxes[k], wv);
      for (int r = 0; r < 3; ++r) {
        rows[i][r * 6 + k] = scale * ca[r];
        rows[i][r * 6 + 3 + k] = scale * cb[r];
      }
    }
    ok[i] = 1;
  });
  const auto m = static_cast<Eigen::Index>(std::count(ok.begin(), ok.end(), 1));
  if (m < 6) throw std::invalid_argument("killing_scan: fewer than 6 evaluable samples");

  Eigen::MatrixXd M(3 * m, 6);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) continue;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 6; ++c) M(3 * row + r, c) = rows[i][r * 6 + c];
    }
    ++row;
  }

  KillingReport rep;
  rep.threshold = threshold;
  rep.provenance = provenance_of(samples);
  rep.provenance.count = samples.size();
  if (static_cast<std::size_t>(m) < n) {
    rep.note = std::to_string(n - static_cast<std::size_t>(m)) + " samples failed to evaluate and were skipped";
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double s1 = sv(0);
  for (int i = 0; i < 6; ++i) {
    rep.singular_values[i] = sv(i);
    rep.relative[i] = s1 > 0 ? sv(i) / s1 : 0.0;
  }
  if (s1 == 0.0) {
    rep.null_dim = 6;
  } else {
    rep.null_dim = static_cast<int>(std::count_if(rep.relative.begin(), rep.relative.end(),
                                                  [&](double r) { return r < threshold; }));
  }
  const int rank = 6 - rep.null_dim;
  rep.largest_null_ratio = rep.null_dim > 0 ? rep.relative[rank] : 0.0;
  rep.smallest_nonnull_ratio = rank > 0 ? rep.relative[rank - 1] : 0.0;

  if (rep.null_dim > 0) {
    Eigen::MatrixXd basis(rep.null_dim, 6);
    for (int j = 0; j < rep.null_dim; ++j) basis.row(j) = svd.matrixV().col(rank + j).transpose();
    for (const auto& v : canonical_basis(basis)) rep.null_basis.push_back(from_vector(v));
  }

  // Points confined to a line or plane make some generators look null for
  // purely geometric reasons.
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const Point3& p : samples.points) mean += Eigen::Vector3d(p.x, p.y, p.z);
  mean /= static_cast<double>(n);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Point3& p : samples.points) {
    const Eigen::Vector3d d = Eigen::Vector3d(p.x, p.y, p.z) - mean;
    cov += d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const double emax = eig.eigenvalues().maxCoeff();
  if (emax <= 0.0 || eig.eigenvalues().minCoeff() < 1e-8 * emax) {
    rep.degenerate_sampling = true;
    rep.note += std::string(rep.note.empty() ? "" : "; ") + "samples are (nearly) collinear or coplanar";
  }

  if (!rep.null_basis.empty()) {
    const SampleSet fresh =
        sample_domain(samples.domain, 200, SamplerConfig{SamplerKind::kRandom, samples.sampler.seed + 1});
    double max_grad = 0.0;
    for (const Point3& p : fresh.points) {
      try {
        const Mat3 J = w.jacobian(p);
        max_grad = std::max(max_grad, std::sqrt(dot(J.row[0], J.row[0]) + dot(J.row[1], J.row[1]) +
                                                dot(J.row[2], J.row[2])));
      } catch (const EvalError&) {
      }
    }
    for (const KillingParams& k : rep.null_basis) {
      const VectorField L = lie_euclidean(w, k);
      double worst = 0.0;
      for (const Point3& p : fresh.points) {
        try {
          worst = std::max(worst, mfs::norm(L(p)));
        } catch (const EvalError&) {
        }
      }
      rep.out_of_sample.push_back(max_grad > 0 ? worst / (k.norm() * max_grad) : worst);
    }
  }
  return rep;
}

KillingReport killing_scan(const VectorField& w, const DomainSpec& domain, std::size_t n_samples, double threshold,
                           SamplerConfig sampler) {
  if (n_samples < 6) throw std::invalid_argument("killing_scan: need at least 6 samples");
  return killing_scan(w, sample_domain(domain, n_samples, sampler), threshold);
}

nlohmann::ordered_json to_json(const KillingParams& k) {
  nlohmann::ordered_json j;
  j["a"] = to_json(k.a);
  j["b"] = to_json(k.b);
  return j;
}

nlohmann::ordered_json to_json(const KillingReport& r) {
  nlohmann::ordered_json j;
  j["singular_values"] = r.singular_values;
  j["relative_singular_values"] = r.relative;
  j["null_dim"] = r.null_dim;
  j["null_basis"] = nlohmann::ordered_json::array();
  for (const KillingParams& k : r.null_basis) j["null_basis"].push_back(to_json(k));
  j["threshold"] = r.threshold;
  j["largest_null_ratio"] = r.largest_null_ratio;
  j["smallest_nonnull_ratio"] = r.smallest_nonnull_ratio;
  j["out_of_sample"] = r.out_of_sample;
  j["degenerate_sampling"] = r.degenerate_sampling;
  if (!r.note.empty()) j["note"] = r.note;
  j["domain"] = r.provenance.domain;
  j["sampler"] = r.provenance.sampler;
  j["seed"] = r.provenance.seed;
  j["n_samples"] = r.provenance.count;
  return j;
}

// --- local symmetries -------------------------------------------------------

std::array<VectorField, 3> tangent_basis(const LocalChart& chart) {
  const VectorField gl = grad(chart.ell), gp = grad(chart.chart_psi), gt = grad(chart.theta);
  const ScalarField inv_det = 1.0 / dot(gl, cross(gp, gt));
  return {inv_det * cross(gp, gt), inv_det * cross(gt, gl), inv_det * cross(gl, gp)};
}

VectorField local_symmetry_field(const LocalChart& chart, const ScalarField& h, const ScalarField& alpha,
                                 const ScalarField& g_theta, const ScalarField& g_L) {
  const auto d = tangent_basis(chart);
  const ScalarField beta = (g_theta + alpha * cos(chart.theta)) / sin(chart.theta);
  return h * (alpha * d[0] + beta * d[1] + g_L * d[2]);
}

ResidualReport verify_local_symmetry(const VectorField& w, const LocalSymmetrySpec& spec, const SampleSet& samples,
                                     double tolerance) {
  ResidualReport r;
  r.subject = "local symmetry (" + spec.choices + ")";
  r.provenance = provenance_of(samples);
  const VectorField L = lie_derivative(w, spec.xi);
  const ScalarField dxi = divergence(spec.xi);
  r.checks.push_back(compute_check(
      "lie_derivative", samples, [&](const Point3& p) { return norm(L(p)); }, tolerance));
  r.checks.push_back(compute_check(
      "divergence_xi", samples, [&](const Point3& p) { return std::abs(dxi(p)); }, tolerance));
  if (spec.g) {
    const VectorField gg = grad(*spec.g);
    r.checks.push_back(compute_check(
        "w_cross_xi_minus_grad_g", samples,
        [&](const Point3& p) { return norm(cross(w(p), spec.xi(p)) - gg(p)); }, tolerance));
  }
  return r;
}

namespace {

ScalarField of_theta(const ScalarField& f, const ScalarField& theta) { return compose(f, theta); }
ScalarField derivative_of_theta(const ScalarField& f, const ScalarField& theta) {
  return compose(partial(f, 0), theta);
}

LocalChart cylindrical_chart() { return {atan2(Y, X), 0.5 * log(X * X + Y * Y), Z}; }

// alpha of the cylindrical example in chart coordinates (x, y, z) = (theta_c, log r, z).
ScalarField cylindrical_alpha_chart(const ScalarField& p, const ScalarField& g, const ScalarField& q) {
  const ScalarField cot = cos(Z) / sin(Z);
  const ScalarField qz = of_theta(q, Z);
  const ScalarField gz = derivative_of_theta(g, Z);
  return 0.5 * (sin(Z) / cos(Z)) * substitute(p, Z, Y - cot * (X - qz), 0.0) * exp(2.0 * cot * (qz - X)) -
         gz / cos(Z);
}

std::string choices_text(const ScalarField& p, const ScalarField& g) {
  return "p(theta, s) = " + p.str() + ", g(theta) = " + g.str();
}

}  // namespace

LocalSymmetrySpec abc_local_symmetry(const ScalarField& p, const ScalarField& g) {
  const LocalChart chart{X, Y, Z};
  const ScalarField alpha = substitute(p, Z, Y - X * cos(Z) / sin(Z), 0.0);
  LocalSymmetrySpec spec;
  spec.chart = chart;
  spec.xi = local_symmetry_field(chart, 1.0, alpha, derivative_of_theta(g, Z), 0.0);
  spec.choices = choices_text(p, g);
  spec.g = of_theta(g, Z);
  return spec;
}

LocalSymmetrySpec cylindrical_local_symmetry(const ScalarField& p, const ScalarField& g, const ScalarField& q) {
  const LocalChart chart = cylindrical_chart();
  const ScalarField alpha = substitute(cylindrical_alpha_chart(p, g, q), chart.ell, chart.chart_psi, chart.theta);
  LocalSymmetrySpec spec;
  spec.chart = chart;
  // Written without the factor h = -1, so (p, g) = (0, -sin z) is +d/dtheta;
  // then w x xi = -grad g.
  spec.xi = local_symmetry_field(chart, 1.0, alpha, derivative_of_theta(g, Z), 0.0);
  spec.choices = choices_text(p, g) + ", q(theta) = " + q.str();
  spec.g = -of_theta(g, Z);
  return spec;
}

LocalSymmetrySpec example3_local_symmetry(const ScalarField& p, const ScalarField& g) {
  const ScalarField ell = exp(X) * sin(Y), psi = -(exp(X) * cos(Y)), theta = Z * Z;
  const LocalChart chart{ell, psi, theta};
  const ScalarField cot = cos(theta) / sin(theta);
  const ScalarField s = psi - cot * ell;
  const ScalarField rho2 = ell * ell + psi * psi;
  const ScalarField gt = derivative_of_theta(g, theta);
  const ScalarField alpha =
      rho2 * substitute(p, theta, s, 0.0) + gt / sin(theta) * (ell * s + rho2 * atan2(ell / psi, 1.0)) / (s * s);
  LocalSymmetrySpec spec;
  spec.chart = chart;
  spec.xi = local_symmetry_field(chart, 2.0 * Z, alpha, gt, 0.0);
  spec.choices = choices_text(p, g);
  spec.g = of_theta(g, theta);
  return spec;
}

DomainSpec alpha_domain(const std::string& example) {
  if (example == "abc_minimal") {
    return DomainSpec::ball({0, 0, 0}, 1.0).excluding(Exclusion::slab(2, -0.2, 0.2));
  }
  if (example == "cylindrical") return DomainSpec::cylindrical_shell(0, 0, 0.5, 1.5, 0.7, 1.3);
  throw std::invalid_argument("alpha_from_characteristics: example must be abc_minimal or cylindrical");
}

AlphaResult alpha_from_characteristics(const std::string& example, const ScalarField& p, const ScalarField& g,
                                       const ScalarField& q, const SampleSet& targets, double tolerance) {
  AlphaResult res;
  res.example = example;
  CharacteristicsProblem prob;
  ScalarField closed_chart;
  std::vector<Point3> chart_points;
  const ScalarField cot = cos(Z) / sin(Z);
  if (example == "abc_minimal") {
    // alpha_x + cot z alpha_y = 0 with alpha = p(z, y) on x = 0.
    prob.advect = VectorField(1.0, cot, 0.0);
    prob.manifold = X;
    prob.initial_data = substitute(p, Z, Y, 0.0);
    closed_chart = substitute(p, Z, Y - X * cot, 0.0);
    res.closed_form = closed_chart;
    chart_points = targets.points;
  } else if (example == "cylindrical") {
    // alpha_theta + cot z alpha_L = -2 (alpha cos z + g'(z)) / sin z, with the
    // closed form as data on theta = q(z).
    const ScalarField gz = derivative_of_theta(g, Z);
    prob.advect = VectorField(1.0, cot, 0.0);
    prob.linear = -2.0 * cot;
    prob.source = -2.0 * gz / sin(Z);
    prob.manifold = X - of_theta(q, Z);
    closed_chart = cylindrical_alpha_chart(p, g, q);
    prob.initial_data = closed_chart;
    const LocalChart chart = cylindrical_chart();
    res.closed_form = substitute(closed_chart, chart.ell, chart.chart_psi, chart.theta);
    for (const Point3& t : targets.points) {
      chart_points.emplace_back(chart.ell(t), chart.chart_psi(t), t.z);
    }
  } else {
    throw std::invalid_argument("alpha_from_characteristics: example must be abc_minimal or cylindrical");
  }

  res.values = solve_characteristics(prob, chart_points);
  std::vector<std::optional<double>> err(res.values.size());
  std::vector<std::string> why(res.values.size());
  res.exact.assign(res.values.size(), 0.0);
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    const CharacteristicValue& v = res.values[i];
    if (!v.ok) {
      ++res.failures;
      why[i] = v.failure;
      continue;
    }
    try {
      res.exact[i] = closed_chart(v.point);
      err[i] = std::abs(v.value - res.exact[i]);
      res.sup_error = std::max(res.sup_error, *err[i]);
    } catch (const EvalError& e) {
      ++res.failures;
      why[i] = e.what();
    }
  }
  res.report.subject = "alpha by characteristics for " + example + " (" + choices_text(p, g) + ")";
  res.report.provenance = provenance_of(targets);
  res.report.checks.push_back(
      summarize_values("alpha_vs_closed_form", targets.points, err, tolerance, CheckStats::Bound::kUpper, why));
  return res;
}

}  // namespace mfs
