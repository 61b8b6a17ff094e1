#include "geodex/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>

namespace geodex
{

void SolverConfig::validate() const
{
  if (order < 1) {
    throw std::invalid_argument("order must be >= 1");
  }
  if (!(newton_tol > 0.0) || !(dedupe_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("damping must lie in (0, 1)");
  }
  if (max_newton_iters < 1 || seed_rings < 1 || seed_directions < 1 || max_halvings < 1 ||
    verify_steps < 1)
  {
    throw std::invalid_argument("iteration and seed counts must be >= 1");
  }
}

std::vector<Velocity> seed_velocities(const Point & p, const Point & q, const SolverConfig & cfg)
{
  const Velocity direct = q - p;
  const double rho = 2.0 * direct.norm();
  std::vector<Velocity> seeds{direct};
  if (rho == 0.0) {
    return seeds;
  }
  for (int k = 1; k <= cfg.seed_rings; ++k) {
    const double r = static_cast<double>(k) / cfg.seed_rings * rho;
    for (int j = 0; j < cfg.seed_directions; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / cfg.seed_directions;
      seeds.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }
  return seeds;
}

namespace
{

double inf_norm(const Eigen::Vector2d & v)
{
  return v.lpNorm<Eigen::Infinity>();
}

/// Residual at A, or +inf when the series cannot be developed there.
double residual_at(const MetricField & m, const Point & p, const Point & q, const Velocity & A,
  int order)
{
  try {
    const double r = inf_norm(exp_map(m, p, A, order) - q);
    return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
  } catch (const DomainError &) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::optional<NewtonOutcome> newton_shoot(
  const MetricField & m, const Point & p, const Point & q, const Velocity & seed,
  const SolverConfig & cfg)
{
  NewtonOutcome out{seed, 0.0, 0, {}};
  try {
    for (;; ++out.iterations) {
      const auto ej = exp_map_with_jacobian(m, p, out.a, cfg.order);
      const Eigen::Vector2d F = ej.point - q;
      out.residual = inf_norm(F);
      if (!std::isfinite(out.residual)) {
        return std::nullopt;
      }
      out.residual_history.push_back(out.residual);
      if (out.residual <= cfg.newton_tol) {
        return out;
      }
      if (out.iterations >= cfg.max_newton_iters) {
        return std::nullopt;
      }

      const Eigen::Matrix2d & J = ej.jacobian;
      const double det = J.determinant();
      if (!std::isfinite(det) || std::abs(det) <= 1e-14 * J.squaredNorm()) {
        return std::nullopt;
      }
      const Eigen::Vector2d step = J.partialPivLu().solve(-F);

      double lambda = 1.0;
      bool accepted = false;
      for (int h = 0; h <= cfg.max_halvings; ++h, lambda *= cfg.damping) {
        const Velocity trial = out.a + lambda * step;
        if (residual_at(m, p, q, trial, cfg.order) < out.residual) {
          out.a = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        return std::nullopt;
      }
    }
  } catch (const DomainError &) {
    return std::nullopt;
  }
}

void classify_solutions(std::vector<ShootingSolution> & solutions)
{
  std::stable_sort(
    solutions.begin(), solutions.end(),
    [](const ShootingSolution & l, const ShootingSolution & r) {
      if (l.euclidean_norm != r.euclidean_norm) {
        return l.euclidean_norm < r.euclidean_norm;
      }
      if (l.g_norm != r.g_norm) {
        return l.g_norm < r.g_norm;
      }
      return l.seed_index < r.seed_index;
    });
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    solutions[i].shortest = i == 0;
  }
}

namespace
{

ShootingSolution make_solution(
  const MetricField & m, const Point & p, const Point & q, const NewtonOutcome & n,
  int seed_index, const SolverConfig & cfg)
{
  ShootingSolution s;
  s.a = n.a;
  s.endpoint_series = exp_map(m, p, n.a, cfg.order);
  s.residual_series = inf_norm(s.endpoint_series - q);
  s.euclidean_norm = n.a.norm();
  s.g_norm = std::sqrt(std::max(0.0, g_norm_squared(m, p, n.a)));
  s.iterations = n.iterations;
  s.seed_index = seed_index;
  s.residual_history = n.residual_history;
  try {
    s.endpoint_rk = integrate_reference(m, p, n.a, 1.0, cfg.verify_steps);
    s.residual_rk = inf_norm(s.endpoint_rk - q);
  } catch (const DomainError & e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.endpoint_rk = Point(nan, nan);
    s.residual_rk = std::numeric_limits<double>::infinity();
    s.rk_error = e.what();
  }
  return s;
}

}  // namespace

std::vector<ShootingSolution> solve(
  const MetricField & m, const Point & p, const Point & q, const SolverConfig & cfg)
{
  cfg.validate();
  require_in_domain(m, p);
  require_in_domain(m, q);

  std::vector<ShootingSolution> found;
  const auto seeds = seed_velocities(p, q, cfg);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto outcome = newton_shoot(m, p, q, seeds[i], cfg);
    if (!outcome) {
      continue;
    }
    const bool duplicate = std::any_of(
      found.begin(), found.end(), [&](const ShootingSolution & s) {
        return (s.a - outcome->a).norm() < cfg.dedupe_tol;
      });
    if (!duplicate) {
      found.push_back(make_solution(m, p, q, *outcome, static_cast<int>(i), cfg));
    }
  }
  classify_solutions(found);
  return found;
}

}  // namespace geodex
