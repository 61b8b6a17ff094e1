#ifndef GEODEX_SHOOTING_HPP
#define GEODEX_SHOOTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "geodex/geodesic.hpp"

namespace geodex
{

struct SolverConfig
{
  int order = kDefaultOrder;
  double newton_tol = 1e-12;  ///< on ||exp_p(A) - q||_inf
  int max_newton_iters = 50;
  int seed_rings = 4;
  int seed_directions = 16;
  double dedupe_tol = 1e-7;  ///< velocity-space distance below which roots merge
  double damping = 0.5;
  int max_halvings = 30;
  int verify_steps = 10000;

  /// Throws std::invalid_argument on non-positive tolerances or counts.
  void validate() const;
};

struct ShootingSolution
{
  Velocity a = Velocity::Zero();
  Point endpoint_series = Point::Zero();
  double residual_series = 0.0;
  /// NaN when the RK trajectory left the chart; see rk_error.
  Point endpoint_rk = Point::Zero();
  double residual_rk = 0.0;
  std::string rk_error;
  double euclidean_norm = 0.0;
  double g_norm = 0.0;
  int iterations = 0;
  int seed_index = 0;
  bool shortest = false;
  /// ||F||_inf at every Newton iterate, last entry is the accepted residual.
  std::vector<double> residual_history;
};

/**
 * Deterministic starting velocities: the direct guess q - p first, then
 * seed_rings rings of radius k/seed_rings * 2|q - p| with seed_directions
 * equally spaced directions each. Collapses to the single zero seed when p = q.
 */
std::vector<Velocity> seed_velocities(const Point & p, const Point & q, const SolverConfig & cfg);

struct NewtonOutcome
{
  Velocity a;
  double residual;
  int iterations;
  std::vector<double> residual_history;
};

/// Damped Newton on exp_p(A) = q from one seed. Empty when the seed is abandoned.
std::optional<NewtonOutcome> newton_shoot(
  const MetricField & m, const Point & p, const Point & q, const Velocity & seed,
  const SolverConfig & cfg);

/// Sorts by Euclidean norm, then g-norm, then seed index, and flags the first as shortest.
void classify_solutions(std::vector<ShootingSolution> & solutions);

/**
 * All deduplicated initial velocities A with ||exp_p(A) - q||_inf <= newton_tol
 * found from the seed grid, each checked against the RK integrator and returned
 * shortest first. An empty result means no seed converged.
 */
std::vector<ShootingSolution> solve(
  const MetricField & m, const Point & p, const Point & q, const SolverConfig & cfg = {});

}  // namespace geodex

#endif  // GEODEX_SHOOTING_HPP
