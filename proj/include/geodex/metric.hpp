#ifndef GEODEX_METRIC_HPP
#define GEODEX_METRIC_HPP

#include <string>

#include <Eigen/Core>

#include "geodex/errors.hpp"
#include "geodex/expression.hpp"

namespace geodex
{

/**
 * 2-D Riemannian metric g = E dx^2 + 2F dx dy + G dy^2 in a chart.
 *
 * The six first partials are differentiated once at construction. Positive
 * definiteness is not validated here; it is checked at every evaluation point.
 */
struct MetricField
{
  std::string name;
  Expr E, F, G;
  Expr Ex, Ey, Fx, Fy, Gx, Gy;
  /// Free text describing the chart domain, e.g. "y > 0". Used in diagnostics only.
  std::string domain_hint;
};

MetricField metric_from_components(
  const Expr & E, const Expr & F, const Expr & G,
  std::string name = {}, std::string domain_hint = {});

/// Induced metric of the graph z = f(x, y): E = 1 + f_x^2, F = f_x f_y, G = 1 + f_y^2.
MetricField metric_from_graph(const Expr & f, std::string name = {}, std::string domain_hint = {});

template<typename S>
struct MetricValues
{
  S E, F, G;
};

/// Christoffel symbols of the second kind; lower-index symmetry is structural.
template<typename S>
struct ChristoffelValues
{
  S g111;  ///< Γ¹₁₁
  S g112;  ///< Γ¹₁₂ = Γ¹₂₁
  S g122;  ///< Γ¹₂₂
  S g211;  ///< Γ²₁₁
  S g212;  ///< Γ²₁₂ = Γ²₂₁
  S g222;  ///< Γ²₂₂
};

namespace detail
{
template<typename S>
void check_definite(const S & E, const S & W)
{
  if (!(leading_value(E) > 0.0) || !(leading_value(W) > 0.0)) {
    throw DefinitenessError("metric not positive definite (need E > 0 and EG - F^2 > 0)");
  }
}

template<typename Fn>
auto with_point(double x, double y, Fn && fn)
{
  try {
    return fn();
  } catch (DomainError & e) {
    if (!e.point()) {
      e.set_point(x, y);
    }
    throw;
  }
}
}  // namespace detail

/// E, F, G at a point, with the definiteness check applied.
template<typename S>
MetricValues<S> metric_values(const MetricField & m, const S & x, const S & y)
{
  return detail::with_point(
    leading_value(x), leading_value(y), [&] {
      MetricValues<S> v{evaluate(m.E, x, y), evaluate(m.F, x, y), evaluate(m.G, x, y)};
      detail::check_definite(v.E, S(v.E * v.G - v.F * v.F));
      return v;
    });
}

/**
 * The six Christoffel symbols from the closed 2-D formulas, W = EG - F^2:
 *
 *   Γ¹₁₁ = (G E_x - 2F F_x + F E_y) / 2W     Γ²₁₁ = (2E F_x - E E_y - F E_x) / 2W
 *   Γ¹₁₂ = (G E_y - F G_x) / 2W              Γ²₁₂ = (E G_x - F E_y) / 2W
 *   Γ¹₂₂ = (2G F_y - G G_x - F G_y) / 2W     Γ²₂₂ = (E G_y - 2F F_y + F G_x) / 2W
 *
 * Scalar-generic: doubles, Jet<double>, Jet<Dual>.
 */
template<typename S>
ChristoffelValues<S> christoffel(const MetricField & m, const S & x, const S & y)
{
  return detail::with_point(
    leading_value(x), leading_value(y), [&] {
      const S E = evaluate(m.E, x, y);
      const S F = evaluate(m.F, x, y);
      const S G = evaluate(m.G, x, y);
      const S W = E * G - F * F;
      detail::check_definite(E, W);

      const S Ex = evaluate(m.Ex, x, y);
      const S Ey = evaluate(m.Ey, x, y);
      const S Fx = evaluate(m.Fx, x, y);
      const S Fy = evaluate(m.Fy, x, y);
      const S Gx = evaluate(m.Gx, x, y);
      const S Gy = evaluate(m.Gy, x, y);

      const S inv = ScalarTraits<S>::constant(1.0, W) / (W * 2.0);
      ChristoffelValues<S> c{
        (G * Ex - F * Fx * 2.0 + F * Ey) * inv,
        (G * Ey - F * Gx) * inv,
        (G * Fy * 2.0 - G * Gx - F * Gy) * inv,
        (E * Fx * 2.0 - E * Ey - F * Ex) * inv,
        (E * Gx - F * Ey) * inv,
        (E * Gy - F * Fy * 2.0 + F * Gx) * inv,
      };
      return c;
    });
}

/// Squared length g(v, v) at point p.
double g_norm_squared(const MetricField & m, const Eigen::Vector2d & p, const Eigen::Vector2d & v);

/// Throws DomainError (with the point and the domain hint) if p is outside the chart.
void require_in_domain(const MetricField & m, const Eigen::Vector2d & p);

}  // namespace geodex

#endif  // GEODEX_METRIC_HPP
