#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace mfs {

/// Highest derivative order a Taylor3 can carry.
inline constexpr int kMaxJetOrder = 12;

/// Number of monomials x^i y^j z^k with i + j + k <= order.
constexpr std::size_t monomial_count(int order) {
  return order < 0 ? 0 : static_cast<std::size_t>((order + 1) * (order + 2) * (order + 3) / 6);
}

/// Truncated Taylor series in the three Cartesian variables around a point.
///
/// Coefficients are stored in graded order (all degree-0 terms, then degree 1,
/// ...), so a series of order K is a prefix of the same series at order K+1.
/// coeff(i, j, k) multiplies dx^i dy^j dz^k; the corresponding partial
/// derivative is coeff * i! j! k!.
class Taylor3 {
 public:
  Taylor3() : order_(0), c_(1, 0.0) {}
  Taylor3(int order, double value);

  /// The coordinate function `axis` expanded at `value`.
  static Taylor3 variable(int order, int axis, double value);

  int order() const { return order_; }
  std::size_t size() const { return c_.size(); }
  double value() const { return c_[0]; }
  std::span<const double> coeffs() const { return {c_.data(), c_.size()}; }
  std::span<double> coeffs() { return {c_.data(), c_.size()}; }

  double coeff(int i, int j, int k) const;
  double derivative(int i, int j, int k) const;

  /// d/d(axis); the result has order one lower.
  Taylor3 partial(int axis) const;
  Taylor3 truncated(int order) const;
  bool all_finite() const;

  Taylor3& operator+=(const Taylor3& o);
  Taylor3& operator-=(const Taylor3& o);
  Taylor3& operator*=(double s);
  Taylor3& operator+=(double s) { c_[0] += s; return *this; }

  friend Taylor3 operator*(const Taylor3& a, const Taylor3& b);

 private:
  int order_;
  // Inline storage covers series up to order 3 without touching the heap.
  boost::container::small_vector<double, monomial_count(3)> c_;
};

Taylor3 operator+(Taylor3 a, const Taylor3& b);
Taylor3 operator-(Taylor3 a, const Taylor3& b);
Taylor3 operator-(Taylor3 a);
Taylor3 operator*(double s, Taylor3 a);
Taylor3 operator*(Taylor3 a, double s);
Taylor3 operator+(Taylor3 a, double s);

/// sum_k c[k] (u - u(0))^k, truncated at the order of u. This is how every
/// univariate function is lifted onto a series: c[k] = f^(k)(u0) / k!.
Taylor3 compose_series(const Taylor3& u, std::span<const double> c);

// The functions below assume the argument lies in the function's domain;
// callers validate the constant term first.
Taylor3 reciprocal(const Taylor3& u);
Taylor3 exp(const Taylor3& u);
Taylor3 log(const Taylor3& u);
Taylor3 sin(const Taylor3& u);
Taylor3 cos(const Taylor3& u);
Taylor3 pow(const Taylor3& u, double p);
Taylor3 pow_int(const Taylor3& u, int p);
Taylor3 atan2(const Taylor3& num, const Taylor3& den);

}  // namespace mfs
