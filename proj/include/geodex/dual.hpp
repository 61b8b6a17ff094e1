#ifndef GEODEX_DUAL_HPP
#define GEODEX_DUAL_HPP

#include <cmath>

#include <Eigen/Core>

#include "geodex/errors.hpp"
#include "geodex/scalar_traits.hpp"

namespace geodex
{

/**
 * First-order forward sensitivity with two seed directions.
 *
 * `grad` holds the partials of `value` with respect to the two initial-velocity
 * components. Threading a Jet<Dual> through the geodesic recurrence yields the
 * exact Jacobian of the truncated exponential map.
 */
struct Dual
{
  double value = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();

  Dual() = default;
  Dual(double v)  // NOLINT(google-explicit-constructor): constants lift implicitly
  : value(v) {}
  Dual(double v, const Eigen::Vector2d & g)
  : value(v), grad(g) {}

  static Dual seeded(double v, int direction)
  {
    Dual d(v);
    d.grad[direction] = 1.0;
    return d;
  }

  Dual & operator+=(const Dual & o) { value += o.value; grad += o.grad; return *this; }
  Dual & operator-=(const Dual & o) { value -= o.value; grad -= o.grad; return *this; }
  Dual & operator*=(const Dual & o)
  {
    grad = grad * o.value + value * o.grad;
    value *= o.value;
    return *this;
  }
  Dual & operator/=(const Dual & o)
  {
    if (o.value == 0.0) {
      throw DomainError("division by zero");
    }
    const double q = value / o.value;
    grad = (grad - q * o.grad) / o.value;
    value = q;
    return *this;
  }
};

inline Dual operator-(const Dual & a) { return Dual(-a.value, -a.grad); }
inline Dual operator+(Dual a, const Dual & b) { return a += b; }
inline Dual operator-(Dual a, const Dual & b) { return a -= b; }
inline Dual operator*(Dual a, const Dual & b) { return a *= b; }
inline Dual operator/(Dual a, const Dual & b) { return a /= b; }
inline Dual operator*(double s, const Dual & a) { return Dual(s * a.value, s * a.grad); }
inline Dual operator*(const Dual & a, double s) { return Dual(s * a.value, s * a.grad); }
inline Dual operator/(const Dual & a, double s) { return Dual(a.value / s, a.grad / s); }
inline Dual operator+(double s, const Dual & a) { return Dual(s + a.value, a.grad); }
inline Dual operator+(const Dual & a, double s) { return Dual(s + a.value, a.grad); }
inline Dual operator-(double s, const Dual & a) { return Dual(s - a.value, -a.grad); }
inline Dual operator-(const Dual & a, double s) { return Dual(a.value - s, a.grad); }

inline Dual sqrt(const Dual & a)
{
  if (!(a.value > 0.0)) {
    throw DomainError("sqrt of non-positive argument");
  }
  const double s = std::sqrt(a.value);
  return Dual(s, a.grad / (2.0 * s));
}

inline Dual sin(const Dual & a) { return Dual(std::sin(a.value), std::cos(a.value) * a.grad); }
inline Dual cos(const Dual & a) { return Dual(std::cos(a.value), -std::sin(a.value) * a.grad); }

inline Dual exp(const Dual & a)
{
  const double e = std::exp(a.value);
  return Dual(e, e * a.grad);
}

inline Dual log(const Dual & a)
{
  if (!(a.value > 0.0)) {
    throw DomainError("log of non-positive argument");
  }
  return Dual(std::log(a.value), a.grad / a.value);
}

inline Dual pow(const Dual & a, double r)
{
  if (!(a.value > 0.0)) {
    throw DomainError("power of non-positive argument");
  }
  const double p = std::pow(a.value, r);
  return Dual(p, (r * p / a.value) * a.grad);
}

template<>
struct ScalarTraits<Dual>
{
  static constexpr bool smooth = true;
  static double leading(const Dual & s) { return s.value; }
  static Dual constant(double c, const Dual &) { return Dual(c); }
};

}  // namespace geodex

#endif  // GEODEX_DUAL_HPP
