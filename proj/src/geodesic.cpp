#include "geodex/geodesic.hpp"

namespace geodex
{

Point GeodesicSeries::operator()(double t) const
{
  const std::span<const double> c1(coeffs1.data(), static_cast<std::size_t>(coeffs1.size()));
  const std::span<const double> c2(coeffs2.data(), static_cast<std::size_t>(coeffs2.size()));
  return Point(detail::horner(c1, t), detail::horner(c2, t));
}

GeodesicSeries develop_series(const MetricField & m, const Point & p, const Velocity & a, int order)
{
  auto [cx, cy] = detail::develop_coefficients<double>(m, p.x(), p.y(), a.x(), a.y(), order);
  GeodesicSeries s;
  s.p = p;
  s.a = a;
  s.order = order;
  s.coeffs1 = Eigen::Map<const Eigen::VectorXd>(cx.data(), static_cast<Eigen::Index>(cx.size()));
  s.coeffs2 = Eigen::Map<const Eigen::VectorXd>(cy.data(), static_cast<Eigen::Index>(cy.size()));
  return s;
}

Point exp_map(const MetricField & m, const Point & p, const Velocity & a, int order)
{
  return develop_series(m, p, a, order)(1.0);
}

std::vector<Point> eval_curve(const GeodesicSeries & s, std::span<const double> ts)
{
  std::vector<Point> out;
  out.reserve(ts.size());
  for (const double t : ts) {
    out.push_back(s(t));
  }
  return out;
}

ExpMapJacobian exp_map_with_jacobian(
  const MetricField & m, const Point & p, const Velocity & a, int order)
{
  const auto [cx, cy] = detail::develop_coefficients<Dual>(
    m, Dual(p.x()), Dual(p.y()), Dual::seeded(a.x(), 0), Dual::seeded(a.y(), 1), order);
  const Dual ex = detail::horner(std::span<const Dual>(cx), 1.0);
  const Dual ey = detail::horner(std::span<const Dual>(cy), 1.0);
  ExpMapJacobian out;
  out.point = Point(ex.value, ey.value);
  out.jacobian.row(0) = ex.grad.transpose();
  out.jacobian.row(1) = ey.grad.transpose();
  return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> series_defect(
  const MetricField & m, const GeodesicSeries & s)
{
  if (s.order < 2) {
    throw std::invalid_argument("series_defect: order must be >= 2");
  }
  const int n = s.order - 2;
  const std::vector<double> cx(s.coeffs1.begin(), s.coeffs1.end());
  const std::vector<double> cy(s.coeffs2.begin(), s.coeffs2.end());
  const Jet<double> x = detail::position_jet(cx, n);
  const Jet<double> y = detail::position_jet(cy, n);
  const Jet<double> dx = detail::velocity_jet(cx, n + 1);
  const Jet<double> dy = detail::velocity_jet(cy, n + 1);
  const auto [r1, r2] = detail::geodesic_acceleration(m, x, y, dx, dy);

  Eigen::VectorXd d1(n + 1);
  Eigen::VectorXd d2(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double w = static_cast<double>((j + 1) * (j + 2));
    d1[j] = w * cx[static_cast<std::size_t>(j + 2)] - r1[j];
    d2[j] = w * cy[static_cast<std::size_t>(j + 2)] - r2[j];
  }
  return {d1, d2};
}

GeodesicState geodesic_rhs(const MetricField & m, const GeodesicState & s)
{
  const auto c = christoffel(m, s[0], s[1]);
  const double u = s[2];
  const double v = s[3];
  GeodesicState d;
  d << u, v,
    -(c.g111 * u * u + 2.0 * c.g112 * u * v + c.g122 * v * v),
    -(c.g211 * u * u + 2.0 * c.g212 * u * v + c.g222 * v * v);
  return d;
}

namespace
{

template<typename Visit>
GeodesicState rk4(
  const MetricField & m, const Point & p, const Velocity & a, double t_end, int steps,
  Visit && visit)
{
  if (steps < 1) {
    throw std::invalid_argument("integrate_reference: steps must be >= 1");
  }
  const double h = t_end / steps;
  GeodesicState s;
  s << p, a;
  GeodesicState carry = GeodesicState::Zero();  // Kahan compensation
  visit(s);
  for (int i = 0; i < steps; ++i) {
    const GeodesicState k1 = geodesic_rhs(m, s);
    const GeodesicState k2 = geodesic_rhs(m, s + 0.5 * h * k1);
    const GeodesicState k3 = geodesic_rhs(m, s + 0.5 * h * k2);
    const GeodesicState k4 = geodesic_rhs(m, s + h * k3);
    const GeodesicState y = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4) - carry;
    const GeodesicState next = s + y;
    carry = (next - s) - y;
    s = next;
    visit(s);
  }
  return s;
}

}  // namespace

Point integrate_reference(
  const MetricField & m, const Point & p, const Velocity & a, double t_end, int steps)
{
  return rk4(m, p, a, t_end, steps, [](const GeodesicState &) {}).head<2>();
}

std::vector<GeodesicState> integrate_reference_trajectory(
  const MetricField & m, const Point & p, const Velocity & a, double t_end, int steps)
{
  std::vector<GeodesicState> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  rk4(m, p, a, t_end, steps, [&](const GeodesicState & s) {out.push_back(s);});
  return out;
}

}  // namespace geodex
