#include "mfs/taylor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace mfs {
namespace {

struct Monomial {
  int e[3];
  int degree() const { return e[0] + e[1] + e[2]; }
};

struct Triple {
  int a, b, c;
};

// Lookup tables shared by every series. Built once; read-only afterwards.
class MonomialTable {
 public:
  static const MonomialTable& get() {
    static const MonomialTable table;
    return table;
  }

  int index(int i, int j, int k) const { return index_[(i * kDim + j) * kDim + k]; }
  const Monomial& monomial(std::size_t idx) const { return monomials_[idx]; }
  int shifted(int axis, std::size_t idx) const { return shift_[axis][idx]; }

  /// Product triples whose total degree is <= order.
  std::span<const Triple> product_terms(int order) const {
    return {triples_.data(), triple_count_[order]};
  }

 private:
  static constexpr int kDim = kMaxJetOrder + 1;

  MonomialTable() : index_(kDim * kDim * kDim, -1) {
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (int i = d; i >= 0; --i) {
        for (int j = d - i; j >= 0; --j) {
          const int k = d - i - j;
          index_[(i * kDim + j) * kDim + k] = static_cast<int>(monomials_.size());
          monomials_.push_back({{i, j, k}});
        }
      }
    }
    for (int axis = 0; axis < 3; ++axis) {
      shift_[axis].assign(monomials_.size(), -1);
      for (std::size_t m = 0; m < monomial_count(kMaxJetOrder - 1); ++m) {
        Monomial up = monomials_[m];
        ++up.e[axis];
        shift_[axis][m] = index(up.e[0], up.e[1], up.e[2]);
      }
    }
    triple_count_.resize(kDim);
    for (int s = 0; s <= kMaxJetOrder; ++s) {
      for (std::size_t a = 0; a < monomial_count(s); ++a) {
        const Monomial& ma = monomials_[a];
        const int db = s - ma.degree();
        for (std::size_t b = monomial_count(db - 1); b < monomial_count(db); ++b) {
          const Monomial& mb = monomials_[b];
          triples_.push_back({static_cast<int>(a), static_cast<int>(b),
                              index(ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2])});
        }
      }
      triple_count_[s] = triples_.size();
    }
  }

  std::vector<int> index_;
  std::vector<Monomial> monomials_;
  std::array<std::vector<int>, 3> shift_;
  std::vector<Triple> triples_;
  std::vector<std::size_t> triple_count_;
};

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw std::out_of_range("Taylor3: order outside [0, kMaxJetOrder]");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Taylor3::Taylor3(int order, double value) : order_(order) {
  check_order(order);
  c_.resize(monomial_count(order));
  std::fill(c_.begin() + 1, c_.end(), 0.0);
  c_[0] = value;
}

Taylor3 Taylor3::variable(int order, int axis, double value) {
  Taylor3 t(order, value);
  if (order >= 1) t.c_[1 + axis] = 1.0;  // degree-1 block is (x, y, z)
  return t;
}

double Taylor3::coeff(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i + j + k > order_) return 0.0;
  return c_[MonomialTable::get().index(i, j, k)];
}

double Taylor3::derivative(int i, int j, int k) const {
  return coeff(i, j, k) * factorial(i) * factorial(j) * factorial(k);
}

Taylor3 Taylor3::partial(int axis) const {
  if (order_ == 0) {
    throw std::logic_error("Taylor3::partial on an order-0 series");
  }
  const auto& table = MonomialTable::get();
  Taylor3 r(order_ - 1, 0.0);
  for (std::size_t m = 0; m < r.c_.size(); ++m) {
    r.c_[m] = (table.monomial(m).e[axis] + 1) * c_[table.shifted(axis, m)];
  }
  return r;
}

Taylor3 Taylor3::truncated(int order) const {
  if (order >= order_) return *this;
  Taylor3 r;
  r.order_ = order;
  r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(monomial_count(order)));
  return r;
}

bool Taylor3::all_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

Taylor3& Taylor3::operator+=(const Taylor3& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

Taylor3& Taylor3::operator-=(const Taylor3& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
  return *this;
}

Taylor3& Taylor3::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
  const int order = std::min(a.order_, b.order_);
  Taylor3 r(order, 0.0);
  if (order == 0) {
    r.c_[0] = a.c_[0] * b.c_[0];
    return r;
  }
  const double* pa = a.c_.data();
  const double* pb = b.c_.data();
  double* pr = r.c_.data();
  for (const Triple& t : MonomialTable::get().product_terms(order)) {
    pr[t.c] += pa[t.a] * pb[t.b];
  }
  return r;
}

Taylor3 operator+(Taylor3 a, const Taylor3& b) { return a += b; }
Taylor3 operator-(Taylor3 a, const Taylor3& b) { return a -= b; }
Taylor3 operator-(Taylor3 a) { return a *= -1.0; }
Taylor3 operator*(double s, Taylor3 a) { return a *= s; }
Taylor3 operator*(Taylor3 a, double s) { return a *= s; }
Taylor3 operator+(Taylor3 a, double s) { return a += s; }

Taylor3 compose_series(const Taylor3& u, std::span<const double> c) {
  const int order = u.order();
  assert(c.size() >= static_cast<std::size_t>(order + 1));
  if (order == 0) return Taylor3(0, c[0]);
  Taylor3 du = u;
  du.coeffs()[0] = 0.0;
  Taylor3 r(order, c[order]);
  for (int k = order - 1; k >= 0; --k) {
    r = r * du;
    r += c[k];
  }
  return r;
}

Taylor3 reciprocal(const Taylor3& u) {
  const double u0 = u.value();
  boost::container::small_vector<double, 16> c(u.order() + 1);
  double p = 1.0 / u0;
  for (int k = 0; k <= u.order(); ++k) {
    c[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= u0;
  }
  return compose_series(u, {c.data(), c.size()});
}

Taylor3 exp(const Taylor3& u) {
  const double e0 = std::exp(u.value());
  boost::container::small_vector<double, 16> c(u.order() + 1);
  double f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    if (k > 0) f /= k;
    c[k] = e0 * f;
  }
  return compose_series(u, {c.data(), c.size()});
}

Taylor3 log(const Taylor3& u) {
  const double u0 = u.value();
  boost::container::small_vector<double, 16> c(u.order() + 1);
  c[0] = std::log(u0);
  double p = 1.0;
  for (int k = 1; k <= u.order(); ++k) {
    p /= u0;
    c[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / k;
  }
  return compose_series(u, {c.data(), c.size()});
}

namespace {
boost::container::small_vector<double, 16> sincos_coeffs(double u0, int order, int phase) {
  // phase 0: sin, phase 1: cos. d^k sin = sin(u + k pi/2).
  const double s = std::sin(u0);
  const double co = std::cos(u0);
  const double cycle[4] = {s, co, -s, -co};
  boost::container::small_vector<double, 16> c(order + 1);
  double f = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) f /= k;
    c[k] = cycle[(k + phase) % 4] * f;
  }
  return c;
}
}  // namespace

Taylor3 sin(const Taylor3& u) {
  const auto c = sincos_coeffs(u.value(), u.order(), 0);
  return compose_series(u, {c.data(), c.size()});
}
Taylor3 cos(const Taylor3& u) {
  const auto c = sincos_coeffs(u.value(), u.order(), 1);
  return compose_series(u, {c.data(), c.size()});
}

Taylor3 pow_int(const Taylor3& u, int p) {
  if (p < 0) return reciprocal(pow_int(u, -p));
  Taylor3 result(u.order(), 1.0);
  Taylor3 base = u;
  while (p > 0) {
    if (p & 1) result = result * base;
    p >>= 1;
    if (p > 0) base = base * base;
  }
  return result;
}

Taylor3 pow(const Taylor3& u, double p) {
  const double u0 = u.value();
  boost::container::small_vector<double, 16> c(u.order() + 1);
  double binom = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    c[k] = binom * std::pow(u0, p - k);
    binom *= (p - k) / (k + 1);
  }
  return compose_series(u, {c.data(), c.size()});
}

Taylor3 atan2(const Taylor3& num, const Taylor3& den) {
  // atan2(a, b) = atan2(a0, b0) + atan(t), t = (a b0 - b a0) / (a a0 + b b0).
  // t has no constant term, so the arctangent series in t is exact after truncation.
  const int order = std::min(num.order(), den.order());
  const double a0 = num.value();
  const double b0 = den.value();
  const double theta0 = std::atan2(a0, b0);
  if (order == 0) return Taylor3(0, theta0);
  const Taylor3 a = num.truncated(order);
  const Taylor3 b = den.truncated(order);
  Taylor3 t = (a * b0 - b * a0) * reciprocal(a * a0 + b * b0);
  t.coeffs()[0] = 0.0;
  boost::container::small_vector<double, 16> c(order + 1, 0.0);
  c[0] = theta0;
  for (int k = 1; k <= order; k += 2) c[k] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) / k;
  return compose_series(t, {c.data(), c.size()});
}

}  // namespace mfs
