#include "mfs/characteristics.hpp"

#include <cmath>

#include "mfs/parallel.hpp"

namespace mfs {
namespace {

struct Failure {
  std::string what;
};

struct State {
  Vec3 x;
  double u = 0.0;
};

class Integrator {
 public:
  Integrator(const CharacteristicsProblem& prob, const CharacteristicsOptions& opt) : prob_(prob), opt_(opt) {}

  Vec3 velocity(const Vec3& x) const { return prob_.advect(Point3(x)); }

  Vec3 rk4_position(const Vec3& x, double dt) const {
    const Vec3 k1 = velocity(x);
    const Vec3 k2 = velocity(x + 0.5 * dt * k1);
    const Vec3 k3 = velocity(x + 0.5 * dt * k2);
    const Vec3 k4 = velocity(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  State rk4(const State& s, double dt) const {
    auto f = [&](const State& q, Vec3& dx, double& du) {
      const Point3 p(q.x);
      dx = prob_.advect(p);
      du = prob_.source(p) + prob_.linear(p) * q.u;
    };
    Vec3 dx1, dx2, dx3, dx4;
    double du1, du2, du3, du4;
    f(s, dx1, du1);
    f({s.x + 0.5 * dt * dx1, s.u + 0.5 * dt * du1}, dx2, du2);
    f({s.x + 0.5 * dt * dx2, s.u + 0.5 * dt * du2}, dx3, du3);
    f({s.x + dt * dx3, s.u + dt * du3}, dx4, du4);
    return {s.x + (dt / 6.0) * (dx1 + 2.0 * dx2 + 2.0 * dx3 + dx4), s.u + (dt / 6.0) * (du1 + 2 * du2 + 2 * du3 + du4)};
  }

  void check_region(const Vec3& x) const {
    if (prob_.region && !prob_.region->contains(Point3(x))) throw Failure{"characteristic left the region"};
  }

  /// Value at `target` with step h; also returns the transit length.
  double solve(const Point3& target, double h, double& transit) const {
    const double level0 = prob_.manifold(target);
    if (level0 == 0.0) {
      transit = 0.0;
      return prob_.initial_data(target);
    }
    const double rate = dot(grad(prob_.manifold)(target), velocity(target.as_vec()));
    if (rate == 0.0 || !std::isfinite(rate)) throw Failure{"characteristic direction toward the surface is undefined"};
    // Move along s*a so the level set value shrinks toward zero.
    const double s = (level0 * rate > 0.0) ? -1.0 : 1.0;
    Vec3 x = target.as_vec();
    double t = 0.0;
    const bool positive = level0 > 0.0;
    for (std::size_t n = 0;; ++n) {
      if (n >= opt_.max_steps) throw Failure{"initial surface not reached within the step budget"};
      const Vec3 next = rk4_position(x, s * h);
      check_region(next);
      const double level = prob_.manifold(Point3(next));
      if (level == 0.0 || (level > 0.0) != positive) {
        // Bisect the last step length so the endpoint lands on the surface.
        double lo = 0.0, hi = h;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double lm = prob_.manifold(Point3(rk4_position(x, s * mid)));
          if (lm == 0.0) {
            lo = hi = mid;
          } else if ((lm > 0.0) == positive) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        t += hi;
        x = rk4_position(x, s * hi);
        break;
      }
      x = next;
      t += h;
    }
    const Point3 foot(x);
    const double slope = dot(grad(prob_.manifold)(foot), velocity(x));
    if (std::abs(slope) < 1e-12) throw Failure{"characteristic is tangent to the initial surface"};

    transit = t;
    State st{x, prob_.initial_data(foot)};
    const auto full = static_cast<std::size_t>(std::floor(t / h));
    for (std::size_t n = 0; n < full; ++n) st = rk4(st, -s * h);
    const double rest = t - static_cast<double>(full) * h;
    if (rest > 0.0) st = rk4(st, -s * rest);
    return st.u;
  }

 private:
  const CharacteristicsProblem& prob_;
  const CharacteristicsOptions& opt_;
};

}  // namespace

std::vector<CharacteristicValue> solve_characteristics(const CharacteristicsProblem& prob,
                                                       const std::vector<Point3>& targets,
                                                       const CharacteristicsOptions& options) {
  std::vector<CharacteristicValue> out(targets.size());
  const Integrator integ(prob, options);
  parallel_for(targets.size(), [&](std::size_t i) {
    CharacteristicValue& v = out[i];
    v.point = targets[i];
    try {
      double transit = 0.0, transit_half = 0.0;
      const double coarse = integ.solve(targets[i], options.step, transit);
      const double fine = integ.solve(targets[i], 0.5 * options.step, transit_half);
      v.value = coarse;
      v.error_estimate = std::abs(coarse - fine) * 16.0 / 15.0;
      v.transit = transit;
      v.ok = std::isfinite(coarse);
      if (!v.ok) v.failure = "non-finite value";
    } catch (const Failure& f) {
      v.failure = f.what;
    } catch (const EvalError& e) {
      v.failure = e.what();
    }
  });
  return out;
}

}  // namespace mfs
