#include "geodex/metric.hpp"

namespace geodex
{

MetricField metric_from_components(
  const Expr & E, const Expr & F, const Expr & G,
  std::string name, std::string domain_hint)
{
  MetricField m;
  m.name = std::move(name);
  m.domain_hint = std::move(domain_hint);
  m.E = E;
  m.F = F;
  m.G = G;
  m.Ex = differentiate(E, Var::x);
  m.Ey = differentiate(E, Var::y);
  m.Fx = differentiate(F, Var::x);
  m.Fy = differentiate(F, Var::y);
  m.Gx = differentiate(G, Var::x);
  m.Gy = differentiate(G, Var::y);
  return m;
}

MetricField metric_from_graph(const Expr & f, std::string name, std::string domain_hint)
{
  const Expr fx = differentiate(f, Var::x);
  const Expr fy = differentiate(f, Var::y);
  const Expr one = Expr::constant(1.0);
  return metric_from_components(
    one + pow(fx, Rational(2)), fx * fy, one + pow(fy, Rational(2)),
    std::move(name), std::move(domain_hint));
}

double g_norm_squared(const MetricField & m, const Eigen::Vector2d & p, const Eigen::Vector2d & v)
{
  const auto g = metric_values(m, p.x(), p.y());
  return g.E * v.x() * v.x() + 2.0 * g.F * v.x() * v.y() + g.G * v.y() * v.y();
}

void require_in_domain(const MetricField & m, const Eigen::Vector2d & p)
{
  try {
    const auto g = metric_values(m, p.x(), p.y());
    if (!std::isfinite(g.E) || !std::isfinite(g.F) || !std::isfinite(g.G)) {
      throw DomainError("metric not finite");
    }
  } catch (const DomainError & e) {
    if (m.domain_hint.empty()) {
      throw;
    }
    DomainError out(m.domain_hint + " violated");
    out.set_point(p.x(), p.y());
    throw out;
  }
}

}  // namespace geodex
