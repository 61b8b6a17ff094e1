#ifndef GEODEX_GEODESIC_HPP
#define GEODEX_GEODESIC_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "geodex/dual.hpp"
#include "geodex/jet.hpp"
#include "geodex/metric.hpp"

namespace geodex
{

using Point = Eigen::Vector2d;
using Velocity = Eigen::Vector2d;

/// Default truncation degree of the Taylor expansion.
inline constexpr int kDefaultOrder = 7;

/**
 * Taylor polynomial of a geodesic through p with initial velocity a:
 *
 *   x^i(t) = p^i + a^i t + c^i_2 t^2 + ... + c^i_n t^n,   coeffs_i = [p^i, a^i, c^i_2, ...]
 */
struct GeodesicSeries
{
  Point p;
  Velocity a;
  int order = 0;
  Eigen::VectorXd coeffs1;
  Eigen::VectorXd coeffs2;

  /// Horner evaluation at t.
  Point operator()(double t) const;
};

namespace detail
{

template<typename T>
T horner(std::span<const T> c, double t)
{
  T acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0; ) {
    acc = acc * t + c[k];
  }
  return acc;
}

/// Velocity jet of order k-1 from position coefficients c[0..k].
template<typename T>
Jet<T> velocity_jet(const std::vector<T> & c, int k)
{
  Jet<T> d(k - 1);
  for (int j = 0; j < k; ++j) {
    d[j] = c[static_cast<std::size_t>(j + 1)] * static_cast<double>(j + 1);
  }
  return d;
}

template<typename T>
Jet<T> position_jet(const std::vector<T> & c, int order)
{
  Jet<T> x(order);
  for (int j = 0; j <= order; ++j) {
    x[j] = c[static_cast<std::size_t>(j)];
  }
  return x;
}

/// Geodesic acceleration -Γ^i_jk ẋ^j ẋ^k as a jet, for both components.
template<typename T>
std::pair<Jet<T>, Jet<T>> geodesic_acceleration(
  const MetricField & m,
  const Jet<T> & x, const Jet<T> & y, const Jet<T> & dx, const Jet<T> & dy)
{
  const auto c = christoffel(m, x, y);
  const Jet<T> xx = dx * dx;
  const Jet<T> xy = dx * dy;
  const Jet<T> yy = dy * dy;
  return {
    -(c.g111 * xx + c.g112 * xy * 2.0 + c.g122 * yy),
    -(c.g211 * xx + c.g212 * xy * 2.0 + c.g222 * yy),
  };
}

/**
 * Taylor recurrence for the geodesic equation on normalized coefficients.
 *
 * With coefficients known through t^k, the t^{k-1} coefficient of the
 * acceleration only involves those, and equals k(k+1) c_{k+1}.
 */
template<typename T>
std::pair<std::vector<T>, std::vector<T>> develop_coefficients(
  const MetricField & m, const T & p1, const T & p2, const T & a1, const T & a2, int order)
{
  if (order < 1) {
    throw std::invalid_argument("develop_series: order must be >= 1");
  }
  const auto n = static_cast<std::size_t>(order) + 1;
  std::vector<T> cx(n, T(0.0));
  std::vector<T> cy(n, T(0.0));
  cx[0] = p1;
  cy[0] = p2;
  cx[1] = a1;
  cy[1] = a2;
  for (int k = 1; k < order; ++k) {
    const Jet<T> x = position_jet(cx, k - 1);
    const Jet<T> y = position_jet(cy, k - 1);
    const auto [r1, r2] = geodesic_acceleration(m, x, y, velocity_jet(cx, k), velocity_jet(cy, k));
    const double scale = static_cast<double>(k) * static_cast<double>(k + 1);
    cx[static_cast<std::size_t>(k + 1)] = r1[k - 1] / scale;
    cy[static_cast<std::size_t>(k + 1)] = r2[k - 1] / scale;
  }
  return {std::move(cx), std::move(cy)};
}

}  // namespace detail

/// Taylor coefficients of the geodesic with γ(0) = p, γ'(0) = a, through t^order.
GeodesicSeries develop_series(const MetricField & m, const Point & p, const Velocity & a, int order);

/// exp_p(a): the truncated series evaluated at t = 1.
Point exp_map(const MetricField & m, const Point & p, const Velocity & a, int order);

/// Points of the series at each t (Horner).
std::vector<Point> eval_curve(const GeodesicSeries & s, std::span<const double> ts);

struct ExpMapJacobian
{
  Point point;
  Eigen::Matrix2d jacobian;  ///< ∂exp_p(a)/∂a, column j is the sensitivity to a^j.
};

/// exp_p(a) with exact forward sensitivities to a (duals threaded through the recurrence).
ExpMapJacobian exp_map_with_jacobian(
  const MetricField & m, const Point & p, const Velocity & a, int order);

/**
 * Residual of the geodesic equation for a developed series:
 * ẍ^i + Γ^i_jk ẋ^j ẋ^k, coefficients of t^0 .. t^(order-2). Requires order >= 2.
 */
std::pair<Eigen::VectorXd, Eigen::VectorXd> series_defect(
  const MetricField & m, const GeodesicSeries & s);

/// State (x, y, x', y') of the first-order geodesic system.
using GeodesicState = Eigen::Vector4d;

/// Right-hand side of the first-order geodesic system.
GeodesicState geodesic_rhs(const MetricField & m, const GeodesicState & s);

/// Fixed-step classical RK4 for the geodesic equation; returns the position at t_end.
Point integrate_reference(
  const MetricField & m, const Point & p, const Velocity & a, double t_end, int steps);

/// As integrate_reference, returning every state including the initial one.
std::vector<GeodesicState> integrate_reference_trajectory(
  const MetricField & m, const Point & p, const Velocity & a, double t_end, int steps);

}  // namespace geodex

#endif  // GEODEX_GEODESIC_HPP
