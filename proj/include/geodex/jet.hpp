#ifndef GEODEX_JET_HPP
#define GEODEX_JET_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodex/errors.hpp"
#include "geodex/scalar_traits.hpp"

namespace geodex
{

/**
 * Truncated power series in one formal variable t.
 *
 * Coefficients are normalized: `c[k]` is the k-th derivative at t = 0 divided by
 * k!, so the jet represents sum_k c[k] t^k truncated after t^N. The order is fixed
 * at construction; binary operations require equal orders.
 *
 * Every coefficient recurrence below computes c[k] from lower-index data only, so
 * evaluating at order N and dropping to M < N gives the same bits as evaluating at
 * order M directly.
 */
template<typename T>
class Jet
{
public:
  using value_type = T;

  explicit Jet(int order = 0)
  : coeffs_(check_order(order) + 1, T(0.0)) {}

  explicit Jet(std::vector<T> coeffs)
  : coeffs_(std::move(coeffs))
  {
    if (coeffs_.empty()) {
      throw std::invalid_argument("Jet: at least one coefficient required");
    }
  }

  static Jet constant(int order, const T & c)
  {
    Jet j(order);
    j.coeffs_[0] = c;
    return j;
  }

  /// c0 + c1 t
  static Jet variable(int order, const T & c0, const T & c1)
  {
    Jet j(order);
    j.coeffs_[0] = c0;
    if (order >= 1) {
      j.coeffs_[1] = c1;
    }
    return j;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const T & operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  T & operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

  std::span<const T> coeffs() const { return coeffs_; }

  Jet truncated(int order) const
  {
    if (order > this->order()) {
      throw std::invalid_argument("Jet::truncated: cannot raise order");
    }
    return Jet(std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  /// d/dt, returned at one order lower (order 0 stays order 0 with a zero coefficient).
  Jet derivative() const
  {
    const int n = order();
    if (n == 0) {
      return Jet(0);
    }
    Jet d(n - 1);
    for (int k = 0; k < n; ++k) {
      d[k] = static_cast<double>(k + 1) * coeffs_[static_cast<std::size_t>(k + 1)];
    }
    return d;
  }

  /// Horner evaluation of the truncated polynomial.
  T operator()(double t) const
  {
    T acc = coeffs_.back();
    for (int k = order() - 1; k >= 0; --k) {
      acc = acc * t + coeffs_[static_cast<std::size_t>(k)];
    }
    return acc;
  }

  Jet & operator+=(const Jet & o)
  {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      coeffs_[k] += o.coeffs_[k];
    }
    return *this;
  }

  Jet & operator-=(const Jet & o)
  {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      coeffs_[k] -= o.coeffs_[k];
    }
    return *this;
  }

  void require_same_order(const Jet & o) const
  {
    if (o.order() != order()) {
      throw std::invalid_argument(
              "Jet order mismatch: " + std::to_string(order()) + " vs " +
              std::to_string(o.order()));
    }
  }

private:
  static std::size_t check_order(int order)
  {
    if (order < 0) {
      throw std::invalid_argument("Jet: negative order");
    }
    return static_cast<std::size_t>(order);
  }

  std::vector<T> coeffs_;
};

template<typename T>
struct ScalarTraits<Jet<T>>
{
  static constexpr bool smooth = true;
  static double leading(const Jet<T> & s) { return ScalarTraits<T>::leading(s[0]); }
  static Jet<T> constant(double c, const Jet<T> & like)
  {
    return Jet<T>::constant(like.order(), T(c));
  }
};

template<typename T>
Jet<T> operator+(Jet<T> a, const Jet<T> & b) { return a += b; }

template<typename T>
Jet<T> operator-(Jet<T> a, const Jet<T> & b) { return a -= b; }

template<typename T>
Jet<T> operator-(Jet<T> a)
{
  for (int k = 0; k <= a.order(); ++k) {
    a[k] = -a[k];
  }
  return a;
}

/// Cauchy product truncated at the common order.
template<typename T>
Jet<T> operator*(const Jet<T> & a, const Jet<T> & b)
{
  a.require_same_order(b);
  Jet<T> c(a.order());
  for (int k = 0; k <= a.order(); ++k) {
    T s = a[0] * b[k];
    for (int j = 1; j <= k; ++j) {
      s += a[j] * b[k - j];
    }
    c[k] = s;
  }
  return c;
}

template<typename T>
Jet<T> operator*(const Jet<T> & a, double s)
{
  Jet<T> c(a);
  for (int k = 0; k <= c.order(); ++k) {
    c[k] = c[k] * s;
  }
  return c;
}

template<typename T>
Jet<T> operator*(double s, const Jet<T> & a) { return a * s; }

template<typename T>
Jet<T> operator/(const Jet<T> & a, const Jet<T> & b)
{
  a.require_same_order(b);
  if (leading_value(b[0]) == 0.0) {
    throw SingularSeriesError("division by a series with zero constant term");
  }
  Jet<T> q(a.order());
  for (int k = 0; k <= a.order(); ++k) {
    T s = a[k];
    for (int j = 0; j < k; ++j) {
      s -= q[j] * b[k - j];
    }
    q[k] = s / b[0];
  }
  return q;
}

template<typename T>
Jet<T> sqrt(const Jet<T> & a)
{
  using std::sqrt;
  if (!(leading_value(a[0]) > 0.0)) {
    throw DomainError("sqrt of series with non-positive constant term");
  }
  Jet<T> s(a.order());
  s[0] = sqrt(a[0]);
  const T twice = s[0] * 2.0;
  for (int k = 1; k <= a.order(); ++k) {
    T acc = a[k];
    for (int j = 1; j < k; ++j) {
      acc -= s[j] * s[k - j];
    }
    s[k] = acc / twice;
  }
  return s;
}

template<typename T>
Jet<T> exp(const Jet<T> & a)
{
  using std::exp;
  Jet<T> e(a.order());
  e[0] = exp(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T acc = a[1] * e[k - 1];
    for (int j = 2; j <= k; ++j) {
      acc += (a[j] * e[k - j]) * static_cast<double>(j);
    }
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

template<typename T>
Jet<T> log(const Jet<T> & a)
{
  using std::log;
  if (!(leading_value(a[0]) > 0.0)) {
    throw DomainError("log of series with non-positive constant term");
  }
  Jet<T> l(a.order());
  l[0] = log(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T acc(0.0);
    for (int j = 1; j < k; ++j) {
      acc += (l[j] * a[k - j]) * static_cast<double>(j);
    }
    l[k] = (a[k] - acc / static_cast<double>(k)) / a[0];
  }
  return l;
}

/// sin and cos share one recurrence; both are produced together.
template<typename T>
std::pair<Jet<T>, Jet<T>> sincos(const Jet<T> & a)
{
  using std::cos;
  using std::sin;
  Jet<T> s(a.order());
  Jet<T> c(a.order());
  s[0] = sin(a[0]);
  c[0] = cos(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T ss(0.0);
    T cc(0.0);
    for (int j = 1; j <= k; ++j) {
      const T ja = a[j] * static_cast<double>(j);
      ss += ja * c[k - j];
      cc += ja * s[k - j];
    }
    s[k] = ss / static_cast<double>(k);
    c[k] = -cc / static_cast<double>(k);
  }
  return {s, c};
}

template<typename T>
Jet<T> sin(const Jet<T> & a) { return sincos(a).first; }

template<typename T>
Jet<T> cos(const Jet<T> & a) { return sincos(a).second; }

/// a^r for real r, requires a positive constant term.
template<typename T>
Jet<T> pow(const Jet<T> & a, double r)
{
  using std::pow;
  if (!(leading_value(a[0]) > 0.0)) {
    throw DomainError("power of series with non-positive constant term");
  }
  Jet<T> p(a.order());
  p[0] = pow(a[0], r);
  for (int k = 1; k <= a.order(); ++k) {
    T acc(0.0);
    for (int j = 0; j < k; ++j) {
      acc += (a[k - j] * p[j]) * (r * static_cast<double>(k - j) - static_cast<double>(j));
    }
    p[k] = acc / (a[0] * static_cast<double>(k));
  }
  return p;
}

}  // namespace geodex

#endif  // GEODEX_JET_HPP
