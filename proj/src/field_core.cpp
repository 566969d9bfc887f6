#include "mfs/field_core.hpp"

#include <algorithm>
#include <vector>

#include "mfs/parallel.hpp"

namespace mfs {

ResidualReport force_balance_residual(const VectorField& w, const ScalarField& chi, const SampleSet& samples,
                                      ForceBalanceTolerances tol) {
  ResidualReport r;
  r.subject = "force balance of " + w.str() + " with chi = " + chi.str();
  r.provenance = provenance_of(samples);
  r.checks = compute_checks(
      {"force_balance", "divergence"}, samples,
      [&](const Point3& p, double* out) {
        const auto t = w.taylor(p, 1);
        const Vec3 value(t[0].value(), t[1].value(), t[2].value());
        auto d = [&](int comp, int axis) { return t[comp].coeffs()[1 + axis]; };
        const Vec3 c(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
        const Vec3 gchi = grad(chi)(p);
        out[0] = norm(cross(value, c) - gchi);
        out[1] = std::abs(d(0, 0) + d(1, 1) + d(2, 2));
      },
      {tol.force, tol.divergence});
  return r;
}

ResidualReport beltrami_residual(const VectorField& w, const ScalarField& h, const SampleSet& samples,
                                 double tolerance) {
  ResidualReport r;
  r.subject = "Beltrami residual of " + w.str() + " with h = " + h.str();
  r.provenance = provenance_of(samples);
  r.checks = compute_checks(
      {"beltrami", "divergence"}, samples,
      [&](const Point3& p, double* out) {
        const auto t = w.taylor(p, 1);
        const Vec3 value(t[0].value(), t[1].value(), t[2].value());
        auto d = [&](int comp, int axis) { return t[comp].coeffs()[1 + axis]; };
        const Vec3 c(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
        out[0] = norm(c - h(p) * value);
        out[1] = std::abs(d(0, 0) + d(1, 1) + d(2, 2));
      },
      {tolerance, tolerance});
  return r;
}

double max_magnitude(const VectorField& w, const SampleSet& samples) {
  std::vector<double> mags(samples.size(), 0.0);
  parallel_for(samples.size(), [&](std::size_t i) {
    try {
      mags[i] = norm(w(samples.points[i]));
    } catch (const EvalError&) {
      mags[i] = 0.0;
    }
  });
  return mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
}

}  // namespace mfs
