#include "mfs/expr.hpp"

#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace mfs {

EvalError::EvalError(std::string node, const std::string& what)
    : std::runtime_error(what + " in `" + node + "`"), node_(std::move(node)) {}

double Jet2::hessian(int i, int j) const {
  if (i > j) std::swap(i, j);
  static constexpr int kOffset[3] = {0, 3, 5};
  return hess[kOffset[i] + (j - i)];
}

Jet2 Jet2::from_taylor(const Taylor3& t) {
  Jet2 j;
  j.value = t.value();
  j.grad = {t.derivative(1, 0, 0), t.derivative(0, 1, 0), t.derivative(0, 0, 1)};
  j.hess = {t.derivative(2, 0, 0), t.derivative(1, 1, 0), t.derivative(1, 0, 1),
            t.derivative(0, 2, 0), t.derivative(0, 1, 1), t.derivative(0, 0, 2)};
  return j;
}

namespace detail {

using VTaylor = std::array<Taylor3, 3>;

struct ScalarNode {
  virtual ~ScalarNode() = default;
  virtual Taylor3 eval(const Point3& p, int order) const = 0;
  virtual std::string str() const = 0;
  virtual std::optional<double> constant() const { return std::nullopt; }
};

struct VectorNode {
  virtual ~VectorNode() = default;
  virtual VTaylor eval(const Point3& p, int order) const = 0;
  virtual std::string str() const = 0;
};

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (v < 0) return "(" + s + ")";
  return s;
}

std::string format_vec(const Vec3& v) {
  return "[" + format_number(v.x) + ", " + format_number(v.y) + ", " + format_number(v.z) + "]";
}

// Orders above kMaxJetOrder surface as EvalError rather than out_of_range.
template <class Node>
int raised(int order, const Node& who) {
  if (order + 1 > kMaxJetOrder) {
    throw EvalError(who.str(), "derivative order exceeds the supported jet order");
  }
  return order + 1;
}

Taylor3 checked(Taylor3 t, const ScalarNode& node) {
  if (!t.all_finite()) throw EvalError(node.str(), "non-finite result");
  return t;
}

// ---------------------------------------------------------------- scalars

struct ConstantNode final : ScalarNode {
  explicit ConstantNode(double v) : value(v) {}
  Taylor3 eval(const Point3&, int order) const override { return Taylor3(order, value); }
  std::string str() const override { return format_number(value); }
  std::optional<double> constant() const override { return value; }
  double value;
};

struct CoordinateNode final : ScalarNode {
  explicit CoordinateNode(int a) : axis(a) {}
  Taylor3 eval(const Point3& p, int order) const override {
    return Taylor3::variable(order, axis, p[axis]);
  }
  std::string str() const override { return std::string(1, "xyz"[axis]); }
  int axis;
};

enum class BinaryOp { kAdd, kSub, kMul, kDiv };

struct BinaryNode final : ScalarNode {
  BinaryNode(BinaryOp o, ScalarField l, ScalarField r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}

  Taylor3 eval(const Point3& p, int order) const override {
    Taylor3 a = lhs.taylor(p, order);
    Taylor3 b = rhs.taylor(p, order);
    switch (op) {
      case BinaryOp::kAdd: return a + b;
      case BinaryOp::kSub: return a - b;
      case BinaryOp::kMul: return a * b;
      case BinaryOp::kDiv:
        if (b.value() == 0.0) throw EvalError(str(), "division by zero");
        return checked(a * reciprocal(b), *this);
    }
    return a;
  }

  std::string str() const override {
    static constexpr const char* kSym[] = {" + ", " - ", " * ", " / "};
    return "(" + lhs.str() + kSym[static_cast<int>(op)] + rhs.str() + ")";
  }

  BinaryOp op;
  ScalarField lhs, rhs;
};

struct NegNode final : ScalarNode {
  explicit NegNode(ScalarField a) : arg(std::move(a)) {}
  Taylor3 eval(const Point3& p, int order) const override { return -arg.taylor(p, order); }
  std::string str() const override { return "(-" + arg.str() + ")"; }
  ScalarField arg;
};

enum class UnaryFn { kExp, kLog, kSin, kCos, kTan, kSqrt };

struct UnaryNode final : ScalarNode {
  UnaryNode(UnaryFn f, ScalarField a) : fn(f), arg(std::move(a)) {}

  Taylor3 eval(const Point3& p, int order) const override {
    const Taylor3 u = arg.taylor(p, order);
    const double u0 = u.value();
    switch (fn) {
      case UnaryFn::kExp: return checked(mfs::exp(u), *this);
      case UnaryFn::kLog:
        if (!(u0 > 0.0)) throw EvalError(str(), "log of nonpositive argument");
        return mfs::log(u);
      case UnaryFn::kSin: return mfs::sin(u);
      case UnaryFn::kCos: return mfs::cos(u);
      case UnaryFn::kTan: {
        const Taylor3 c = mfs::cos(u);
        if (c.value() == 0.0) throw EvalError(str(), "tan at a pole");
        return checked(mfs::sin(u) * reciprocal(c), *this);
      }
      case UnaryFn::kSqrt:
        if (u0 < 0.0 || (u0 == 0.0 && order > 0)) {
          throw EvalError(str(), "sqrt outside its smooth domain");
        }
        return order == 0 ? Taylor3(0, std::sqrt(u0)) : mfs::pow(u, 0.5);
    }
    return u;
  }

  std::string str() const override {
    static constexpr const char* kName[] = {"exp", "log", "sin", "cos", "tan", "sqrt"};
    return std::string(kName[static_cast<int>(fn)]) + "(" + arg.str() + ")";
  }

  UnaryFn fn;
  ScalarField arg;
};

struct PowConstNode final : ScalarNode {
  PowConstNode(ScalarField b, double e) : base(std::move(b)), exponent(e) {}

  Taylor3 eval(const Point3& p, int order) const override {
    const Taylor3 u = base.taylor(p, order);
    const double u0 = u.value();
    const bool integral = std::nearbyint(exponent) == exponent && std::abs(exponent) < 1e6;
    if (integral) {
      if (exponent < 0 && u0 == 0.0) throw EvalError(str(), "negative power of zero");
      return checked(pow_int(u, static_cast<int>(exponent)), *this);
    }
    if (u0 < 0.0 || (u0 == 0.0 && order > 0)) {
      throw EvalError(str(), "fractional power outside its smooth domain");
    }
    if (u0 == 0.0) return Taylor3(0, 0.0);
    return checked(mfs::pow(u, exponent), *this);
  }

  std::string str() const override { return "(" + base.str() + " ^ " + format_number(exponent) + ")"; }

  ScalarField base;
  double exponent;
};

struct PowNode final : ScalarNode {
  PowNode(ScalarField b, ScalarField e) : base(std::move(b)), exponent(std::move(e)) {}

  Taylor3 eval(const Point3& p, int order) const override {
    const Taylor3 u = base.taylor(p, order);
    if (!(u.value() > 0.0)) throw EvalError(str(), "variable power of nonpositive base");
    return checked(mfs::exp(exponent.taylor(p, order) * mfs::log(u)), *this);
  }

  std::string str() const override { return "(" + base.str() + " ^ " + exponent.str() + ")"; }

  ScalarField base, exponent;
};

struct Atan2Node final : ScalarNode {
  Atan2Node(ScalarField n, ScalarField d) : num(std::move(n)), den(std::move(d)) {}

  Taylor3 eval(const Point3& p, int order) const override {
    const Taylor3 a = num.taylor(p, order);
    const Taylor3 b = den.taylor(p, order);
    if (a.value() == 0.0 && b.value() == 0.0) throw EvalError(str(), "atan2 at the origin");
    return mfs::atan2(a, b);
  }

  std::string str() const override { return "atan2(" + num.str() + ", " + den.str() + ")"; }

  ScalarField num, den;
};

struct ComposeNode final : ScalarNode {
  ComposeNode(ScalarField o, ScalarField i) : outer(std::move(o)), inner(std::move(i)) {}

  Taylor3 eval(const Point3& p, int order) const override {
    const Taylor3 u = inner.taylor(p, order);
    const Taylor3 f = outer.taylor(Point3(u.value(), 0.0, 0.0), order);
    boost::container::small_vector<double, 16> c(order + 1);
    for (int k = 0; k <= order; ++k) c[k] = f.coeff(k, 0, 0);
    return compose_series(u, {c.data(), c.size()});
  }

  std::string str() const override { return "compose(" + outer.str() + ", " + inner.str() + ")"; }

  ScalarField outer, inner;
};

struct SubstituteNode final : ScalarNode {
  SubstituteNode(ScalarField o, std::array<ScalarField, 3> a) : outer(std::move(o)), args(std::move(a)) {}

  Taylor3 eval(const Point3& p, int order) const override {
    std::array<Taylor3, 3> d;
    Point3 at;
    for (int i = 0; i < 3; ++i) {
      d[i] = args[i].taylor(p, order);
      (i == 0 ? at.x : i == 1 ? at.y : at.z) = d[i].value();
      d[i].coeffs()[0] = 0.0;
    }
    const Taylor3 f = outer.taylor(at, order);
    // powers[axis][k] = d[axis]^k; each is nilpotent beyond `order`.
    std::array<std::vector<Taylor3>, 3> powers;
    for (int a = 0; a < 3; ++a) {
      powers[a].push_back(Taylor3(order, 1.0));
      for (int k = 1; k <= order; ++k) powers[a].push_back(powers[a].back() * d[a]);
    }
    Taylor3 out(order, 0.0);
    for (int i = 0; i <= order; ++i) {
      for (int j = 0; i + j <= order; ++j) {
        const Taylor3 ij = powers[0][i] * powers[1][j];
        for (int k = 0; i + j + k <= order; ++k) {
          const double c = f.coeff(i, j, k);
          if (c != 0.0) out += c * (k == 0 ? ij : ij * powers[2][k]);
        }
      }
    }
    return out;
  }

  std::string str() const override {
    return "subst(" + outer.str() + ", " + args[0].str() + ", " + args[1].str() + ", " + args[2].str() + ")";
  }

  ScalarField outer;
  std::array<ScalarField, 3> args;
};

struct PartialNode final : ScalarNode {
  PartialNode(ScalarField f, int a) : arg(std::move(f)), axis(a) {}
  Taylor3 eval(const Point3& p, int order) const override {
    return arg.taylor(p, raised(order, *this)).partial(axis);
  }
  std::string str() const override { return std::string("d") + "xyz"[axis] + "(" + arg.str() + ")"; }
  ScalarField arg;
  int axis;
};

struct DotNode final : ScalarNode {
  DotNode(VectorField a, VectorField b) : lhs(std::move(a)), rhs(std::move(b)) {}
  Taylor3 eval(const Point3& p, int order) const override {
    const VTaylor a = lhs.taylor(p, order);
    const VTaylor b = rhs.taylor(p, order);
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  }
  std::string str() const override { return "dot(" + lhs.str() + ", " + rhs.str() + ")"; }
  VectorField lhs, rhs;
};

struct ComponentNode final : ScalarNode {
  ComponentNode(VectorField w, int i) : field(std::move(w)), index(i) {}
  Taylor3 eval(const Point3& p, int order) const override { return field.taylor(p, order)[index]; }
  std::string str() const override { return field.str() + "[" + std::to_string(index) + "]"; }
  VectorField field;
  int index;
};

struct DivergenceNode final : ScalarNode {
  explicit DivergenceNode(VectorField w) : field(std::move(w)) {}
  Taylor3 eval(const Point3& p, int order) const override {
    const VTaylor t = field.taylor(p, raised(order, *this));
    return t[0].partial(0) + t[1].partial(1) + t[2].partial(2);
  }
  std::string str() const override { return "div(" + field.str() + ")"; }
  VectorField field;
};

// ---------------------------------------------------------------- vectors

struct ComponentsNode final : VectorNode {
  explicit ComponentsNode(std::array<ScalarField, 3> c) : comps(std::move(c)) {}
  VTaylor eval(const Point3& p, int order) const override {
    return {comps[0].taylor(p, order), comps[1].taylor(p, order), comps[2].taylor(p, order)};
  }
  std::string str() const override {
    return "[" + comps[0].str() + ", " + comps[1].str() + ", " + comps[2].str() + "]";
  }
  std::array<ScalarField, 3> comps;
};

struct GradientNode final : VectorNode {
  explicit GradientNode(ScalarField f) : arg(std::move(f)) {}
  VTaylor eval(const Point3& p, int order) const override {
    const Taylor3 t = arg.taylor(p, raised(order, *this));
    return {t.partial(0), t.partial(1), t.partial(2)};
  }
  std::string str() const override { return "grad(" + arg.str() + ")"; }
  ScalarField arg;
};

struct CurlNode final : VectorNode {
  explicit CurlNode(VectorField w) : field(std::move(w)) {}
  VTaylor eval(const Point3& p, int order) const override {
    const VTaylor t = field.taylor(p, raised(order, *this));
    return {t[2].partial(1) - t[1].partial(2), t[0].partial(2) - t[2].partial(0),
            t[1].partial(0) - t[0].partial(1)};
  }
  std::string str() const override { return "curl(" + field.str() + ")"; }
  VectorField field;
};

VTaylor cross_taylor(const VTaylor& a, const VTaylor& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct CrossNode final : VectorNode {
  CrossNode(VectorField a, VectorField b) : lhs(std::move(a)), rhs(std::move(b)) {}
  VTaylor eval(const Point3& p, int order) const override {
    return cross_taylor(lhs.taylor(p, order), rhs.taylor(p, order));
  }
  std::string str() const override { return "cross(" + lhs.str() + ", " + rhs.str() + ")"; }
  VectorField lhs, rhs;
};

struct VecSumNode final : VectorNode {
  VecSumNode(VectorField a, VectorField b, double s) : lhs(std::move(a)), rhs(std::move(b)), sign(s) {}
  VTaylor eval(const Point3& p, int order) const override {
    VTaylor a = lhs.taylor(p, order);
    const VTaylor b = rhs.taylor(p, order);
    for (int i = 0; i < 3; ++i) {
      if (sign > 0) a[i] += b[i]; else a[i] -= b[i];
    }
    return a;
  }
  std::string str() const override {
    return "(" + lhs.str() + (sign > 0 ? " + " : " - ") + rhs.str() + ")";
  }
  VectorField lhs, rhs;
  double sign;
};

struct ScaleNode final : VectorNode {
  ScaleNode(ScalarField s, VectorField w) : factor(std::move(s)), field(std::move(w)) {}
  VTaylor eval(const Point3& p, int order) const override {
    const Taylor3 s = factor.taylor(p, order);
    VTaylor t = field.taylor(p, order);
    if (s.order() == 0 || s.size() == 1) {
      for (auto& c : t) c *= s.value();
      return t;
    }
    for (auto& c : t) c = s * c;
    return t;
  }
  std::string str() const override { return "(" + factor.str() + " * " + field.str() + ")"; }
  ScalarField factor;
  VectorField field;
};

struct LieNode final : VectorNode {
  LieNode(VectorField w, VectorField x) : field(std::move(w)), along(std::move(x)) {}
  VTaylor eval(const Point3& p, int order) const override {
    const int up = raised(order, *this);
    const VTaylor w = field.taylor(p, up);
    const VTaylor xi = along.taylor(p, up);
    VTaylor r{Taylor3(order, 0.0), Taylor3(order, 0.0), Taylor3(order, 0.0)};
    for (int j = 0; j < 3; ++j) {
      const Taylor3 xj = xi[j].truncated(order);
      const Taylor3 wj = w[j].truncated(order);
      for (int i = 0; i < 3; ++i) {
        r[i] += xj * w[i].partial(j);
        r[i] -= wj * xi[i].partial(j);
      }
    }
    return r;
  }
  std::string str() const override { return "lie(" + field.str() + ", " + along.str() + ")"; }
  VectorField field, along;
};

struct LieEuclideanNode final : VectorNode {
  LieEuclideanNode(VectorField w, Vec3 a_, Vec3 b_) : field(std::move(w)), a(a_), b(b_) {}
  VTaylor eval(const Point3& p, int order) const override {
    const VTaylor w = field.taylor(p, raised(order, *this));
    VTaylor r{Taylor3(order, 0.0), Taylor3(order, 0.0), Taylor3(order, 0.0)};
    const VTaylor xi = killing_taylor(p, order);
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) r[i] += xi[j] * w[i].partial(j);
    }
    // - b x w
    for (int i = 0; i < 3; ++i) {
      const int i1 = (i + 1) % 3;
      const int i2 = (i + 2) % 3;
      r[i] -= b[i1] * w[i2].truncated(order) - b[i2] * w[i1].truncated(order);
    }
    return r;
  }
  VTaylor killing_taylor(const Point3& p, int order) const {
    const VTaylor x{Taylor3::variable(order, 0, p.x), Taylor3::variable(order, 1, p.y),
                    Taylor3::variable(order, 2, p.z)};
    VTaylor xi;
    for (int i = 0; i < 3; ++i) {
      const int i1 = (i + 1) % 3;
      const int i2 = (i + 2) % 3;
      xi[i] = b[i1] * x[i2] - b[i2] * x[i1] + a[i];
    }
    return xi;
  }
  std::string str() const override {
    return "lie_E(" + field.str() + ", a=" + format_vec(a) + ", b=" + format_vec(b) + ")";
  }
  VectorField field;
  Vec3 a, b;
};

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------- ScalarField

ScalarField::ScalarField() : ScalarField(0.0) {}
ScalarField::ScalarField(double c) : node_(std::make_shared<detail::ConstantNode>(c)) {}
ScalarField::ScalarField(std::shared_ptr<const detail::ScalarNode> node) : node_(std::move(node)) {}

Taylor3 ScalarField::taylor(const Point3& p, int order) const {
  if (order < 0 || order > kMaxJetOrder) {
    throw EvalError(str(), "requested jet order out of range");
  }
  return node_->eval(p, order);
}

double ScalarField::operator()(const Point3& p) const { return taylor(p, 0).value(); }

Jet2 ScalarField::jet(const Point3& p) const { return Jet2::from_taylor(taylor(p, 2)); }

std::string ScalarField::str() const { return node_->str(); }
std::optional<double> ScalarField::constant_value() const { return node_->constant(); }

// ---------------------------------------------------------------- VectorField

VectorField::VectorField() : VectorField(ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)) {}
VectorField::VectorField(std::shared_ptr<const detail::VectorNode> node) : node_(std::move(node)) {}
VectorField::VectorField(ScalarField fx, ScalarField fy, ScalarField fz)
    : node_(std::make_shared<detail::ComponentsNode>(
          std::array<ScalarField, 3>{std::move(fx), std::move(fy), std::move(fz)})) {}

VectorField VectorField::constant(const Vec3& v) { return VectorField(v.x, v.y, v.z); }

std::array<Taylor3, 3> VectorField::taylor(const Point3& p, int order) const {
  if (order < 0 || order > kMaxJetOrder) {
    throw EvalError(str(), "requested jet order out of range");
  }
  return node_->eval(p, order);
}

Vec3 VectorField::operator()(const Point3& p) const {
  const auto t = taylor(p, 0);
  return {t[0].value(), t[1].value(), t[2].value()};
}

std::array<Jet2, 3> VectorField::jets(const Point3& p) const {
  const auto t = taylor(p, 2);
  return {Jet2::from_taylor(t[0]), Jet2::from_taylor(t[1]), Jet2::from_taylor(t[2])};
}

Mat3 VectorField::jacobian(const Point3& p) const {
  const auto t = taylor(p, 1);
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    m.row[i] = {t[i].coeff(1, 0, 0), t[i].coeff(0, 1, 0), t[i].coeff(0, 0, 1)};
  }
  return m;
}

std::string VectorField::str() const { return node_->str(); }

// ---------------------------------------------------------------- builders

namespace {
template <typename Node, typename... Args>
ScalarField make_scalar(Args&&... args) {
  return ScalarField(std::make_shared<Node>(std::forward<Args>(args)...));
}
template <typename Node, typename... Args>
VectorField make_vector(Args&&... args) {
  return VectorField(std::make_shared<Node>(std::forward<Args>(args)...));
}
}  // namespace

ScalarField coord(int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("coord: axis must be 0, 1 or 2");
  return make_scalar<detail::CoordinateNode>(axis);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return make_scalar<detail::BinaryNode>(detail::BinaryOp::kAdd, a, b);
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return make_scalar<detail::BinaryNode>(detail::BinaryOp::kSub, a, b);
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return make_scalar<detail::BinaryNode>(detail::BinaryOp::kMul, a, b);
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return make_scalar<detail::BinaryNode>(detail::BinaryOp::kDiv, a, b);
}
ScalarField operator-(const ScalarField& a) { return make_scalar<detail::NegNode>(a); }

ScalarField exp(const ScalarField& a) { return make_scalar<detail::UnaryNode>(detail::UnaryFn::kExp, a); }
ScalarField log(const ScalarField& a) { return make_scalar<detail::UnaryNode>(detail::UnaryFn::kLog, a); }
ScalarField sin(const ScalarField& a) { return make_scalar<detail::UnaryNode>(detail::UnaryFn::kSin, a); }
ScalarField cos(const ScalarField& a) { return make_scalar<detail::UnaryNode>(detail::UnaryFn::kCos, a); }
ScalarField tan(const ScalarField& a) { return make_scalar<detail::UnaryNode>(detail::UnaryFn::kTan, a); }
ScalarField sqrt(const ScalarField& a) { return make_scalar<detail::UnaryNode>(detail::UnaryFn::kSqrt, a); }
ScalarField atan2(const ScalarField& num, const ScalarField& den) {
  return make_scalar<detail::Atan2Node>(num, den);
}
ScalarField pow(const ScalarField& base, double exponent) {
  return make_scalar<detail::PowConstNode>(base, exponent);
}
ScalarField pow(const ScalarField& base, const ScalarField& exponent) {
  if (auto c = exponent.constant_value()) return pow(base, *c);
  return make_scalar<detail::PowNode>(base, exponent);
}
ScalarField compose(const ScalarField& outer, const ScalarField& inner) {
  return make_scalar<detail::ComposeNode>(outer, inner);
}
ScalarField substitute(const ScalarField& outer, const ScalarField& a, const ScalarField& b, const ScalarField& c) {
  return make_scalar<detail::SubstituteNode>(outer, std::array<ScalarField, 3>{a, b, c});
}
ScalarField partial(const ScalarField& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("partial: axis must be 0, 1 or 2");
  return make_scalar<detail::PartialNode>(f, axis);
}

ScalarField dot(const VectorField& a, const VectorField& b) { return make_scalar<detail::DotNode>(a, b); }
ScalarField component(const VectorField& w, int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("component: index must be 0, 1 or 2");
  return make_scalar<detail::ComponentNode>(w, i);
}
ScalarField divergence(const VectorField& w) { return make_scalar<detail::DivergenceNode>(w); }
ScalarField norm_squared(const VectorField& w) { return dot(w, w); }

VectorField grad(const ScalarField& f) { return make_vector<detail::GradientNode>(f); }
VectorField curl(const VectorField& w) { return make_vector<detail::CurlNode>(w); }
VectorField cross(const VectorField& a, const VectorField& b) { return make_vector<detail::CrossNode>(a, b); }
VectorField operator+(const VectorField& a, const VectorField& b) {
  return make_vector<detail::VecSumNode>(a, b, 1.0);
}
VectorField operator-(const VectorField& a, const VectorField& b) {
  return make_vector<detail::VecSumNode>(a, b, -1.0);
}
VectorField operator-(const VectorField& a) { return make_vector<detail::ScaleNode>(ScalarField(-1.0), a); }
VectorField operator*(const ScalarField& s, const VectorField& w) { return make_vector<detail::ScaleNode>(s, w); }
VectorField operator*(double s, const VectorField& w) { return ScalarField(s) * w; }

VectorField lie_derivative(const VectorField& w, const VectorField& xi) {
  return make_vector<detail::LieNode>(w, xi);
}

VectorField lie_euclidean(const VectorField& w, const Vec3& a, const Vec3& b) {
  return make_vector<detail::LieEuclideanNode>(w, a, b);
}

VectorField killing_field(const Vec3& a, const Vec3& b) {
  const ScalarField x = coord(0), y = coord(1), z = coord(2);
  return VectorField(a.x + b.y * z - b.z * y, a.y + b.z * x - b.x * z, a.z + b.x * y - b.y * x);
}

Jet2 eval_jet(const ScalarField& f, const Point3& p) { return f.jet(p); }

double div(const VectorField& w, const Point3& p) {
  const auto t = w.taylor(p, 1);
  return t[0].coeff(1, 0, 0) + t[1].coeff(0, 1, 0) + t[2].coeff(0, 0, 1);
}

double characteristic_polynomial(const Vec3& w_at_p, const Vec3& phi_grad) {
  const double wp = dot(w_at_p, phi_grad);
  return dot(phi_grad, phi_grad) * wp * wp;
}

}  // namespace mfs
