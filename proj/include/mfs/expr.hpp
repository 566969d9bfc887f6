#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "mfs/taylor.hpp"
#include "mfs/vec3.hpp"

namespace mfs {

/// Raised when a field is evaluated outside its domain (log of a nonpositive
/// number, division by zero, ...). Carries the offending node.
class EvalError : public std::runtime_error {
 public:
  EvalError(std::string node, const std::string& what);
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

/// Value, gradient and Hessian of a scalar at a point. The Hessian is stored
/// as its upper triangle (xx, xy, xz, yy, yz, zz).
struct Jet2 {
  double value = 0.0;
  Vec3 grad;
  std::array<double, 6> hess{};

  double hessian(int i, int j) const;
  static Jet2 from_taylor(const Taylor3& t);
};

namespace detail {
struct ScalarNode;
struct VectorNode;
}  // namespace detail

/// Immutable scalar field R^3 -> R. Cheap to copy; copies share the tree.
class ScalarField {
 public:
  ScalarField();  // the constant 0
  ScalarField(double c);  // NOLINT(google-explicit-constructor): lets 2.0 * f read naturally
  explicit ScalarField(std::shared_ptr<const detail::ScalarNode> node);

  /// Taylor expansion to `order` at p. Throws EvalError on domain violations.
  Taylor3 taylor(const Point3& p, int order) const;
  double operator()(const Point3& p) const;
  Jet2 jet(const Point3& p) const;

  std::string str() const;
  std::optional<double> constant_value() const;
  const detail::ScalarNode& node() const { return *node_; }
  const std::shared_ptr<const detail::ScalarNode>& node_ptr() const { return node_; }

 private:
  std::shared_ptr<const detail::ScalarNode> node_;
};

/// Immutable vector field R^3 -> R^3.
class VectorField {
 public:
  VectorField();  // the zero field
  explicit VectorField(std::shared_ptr<const detail::VectorNode> node);
  VectorField(ScalarField fx, ScalarField fy, ScalarField fz);

  static VectorField constant(const Vec3& v);

  std::array<Taylor3, 3> taylor(const Point3& p, int order) const;
  Vec3 operator()(const Point3& p) const;
  std::array<Jet2, 3> jets(const Point3& p) const;
  /// Row i holds the gradient of component i.
  Mat3 jacobian(const Point3& p) const;

  std::string str() const;
  const detail::VectorNode& node() const { return *node_; }

 private:
  std::shared_ptr<const detail::VectorNode> node_;
};

// --- scalar constructors -------------------------------------------------

ScalarField coord(int axis);
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField exp(const ScalarField& a);
ScalarField log(const ScalarField& a);
ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField tan(const ScalarField& a);
ScalarField sqrt(const ScalarField& a);
ScalarField atan2(const ScalarField& num, const ScalarField& den);
ScalarField pow(const ScalarField& base, double exponent);
ScalarField pow(const ScalarField& base, const ScalarField& exponent);

/// outer(inner(p)): `outer` is read as a function of its x coordinate only
/// (the y and z slots are held at 0).
ScalarField compose(const ScalarField& outer, const ScalarField& inner);
/// outer(a(p), b(p), c(p)): full multivariate composition.
ScalarField substitute(const ScalarField& outer, const ScalarField& a, const ScalarField& b, const ScalarField& c);
/// Exact partial derivative node.
ScalarField partial(const ScalarField& f, int axis);

ScalarField dot(const VectorField& a, const VectorField& b);
ScalarField component(const VectorField& w, int i);
ScalarField divergence(const VectorField& w);
ScalarField norm_squared(const VectorField& w);

// --- vector constructors -------------------------------------------------

VectorField grad(const ScalarField& f);
VectorField curl(const VectorField& w);
VectorField cross(const VectorField& a, const VectorField& b);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a);
VectorField operator*(const ScalarField& s, const VectorField& w);
VectorField operator*(double s, const VectorField& w);

/// (xi . grad) w - (w . grad) xi.
VectorField lie_derivative(const VectorField& w, const VectorField& xi);

/// Lie derivative along the Euclidean Killing field a + b x r, written as
/// ((a + b x r) . grad) w - b x w.
VectorField lie_euclidean(const VectorField& w, const Vec3& a, const Vec3& b);

/// The Killing field a + b x r.
VectorField killing_field(const Vec3& a, const Vec3& b);

// --- pointwise helpers ---------------------------------------------------

Jet2 eval_jet(const ScalarField& f, const Point3& p);
double div(const VectorField& w, const Point3& p);

/// |grad phi|^2 (w . grad phi)^2, the characteristic form of the
/// magnetofluidostatic system.
double characteristic_polynomial(const Vec3& w_at_p, const Vec3& phi_grad);

}  // namespace mfs
