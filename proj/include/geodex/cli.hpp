#ifndef GEODEX_CLI_HPP
#define GEODEX_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geodex/shooting.hpp"

namespace geodex::cli
{

/// Version string echoed in reports.
std::string tool_version();

/// Plain decimal or a simple fraction such as "-1/3".
double parse_real(std::string_view text);

/// "x,y" where each component is accepted by parse_real.
Point parse_point(std::string_view text);

/// 12 significant digits.
std::string fmt(double v);

struct RunReport
{
  std::string surface;
  Point p = Point::Zero();
  Point q = Point::Zero();
  SolverConfig config;
  std::vector<ShootingSolution> solutions;
  double wall_time_s = 0.0;
  std::string version;
};

/// JSON with full double precision; non-finite numbers are written as strings.
std::string report_to_json(const RunReport & r);
RunReport report_from_json(std::string_view text);

/// CSV `t,x,y` with `samples` rows on a uniform grid of [0, 1].
std::string polyline_csv(const GeodesicSeries & s, int samples);

struct TableRow
{
  std::string surface;
  Point p, q;
  Point reported;  ///< endpoint as printed in the reference table
  bool solved = false;
  ShootingSolution best;
  Point deviation_from_reported = Point::Zero();
  Point deviation_from_target = Point::Zero();
  bool pass = false;
};

struct TableResult
{
  int order = kDefaultOrder;
  std::vector<TableRow> rows;
  bool pass = false;

  std::string text() const;
  std::string json() const;
};

/// Solves the three reference rows (sphere chart, monkey saddle, half-plane).
TableResult run_table(const SolverConfig & cfg);

/**
 * Entry point shared by the executable and the tests. `args` excludes the
 * program name. Exit codes: 0 success, 1 bad input, 2 no solution / row failed.
 */
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace geodex::cli

#endif  // GEODEX_CLI_HPP
