#include "geodex/cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodex/surface_io.hpp"

#ifndef GEODEX_VERSION
#define GEODEX_VERSION "0.0.0"
#endif

namespace geodex::cli
{

using nlohmann::json;

std::string tool_version() { return "geodex " GEODEX_VERSION; }

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_decimal(std::string_view s)
{
  s = trim(s);
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

double parse_real(std::string_view text)
{
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return parse_decimal(text);
  }
  const double num = parse_decimal(text.substr(0, slash));
  const double den = parse_decimal(text.substr(slash + 1));
  if (den == 0.0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return num / den;
}

Point parse_point(std::string_view text)
{
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw std::invalid_argument("expected 'x,y', got '" + std::string(text) + "'");
  }
  return Point(parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1)));
}

std::string fmt(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace
{

std::string fmt_point(const Point & p)
{
  return "(" + fmt(p.x()) + ", " + fmt(p.y()) + ")";
}

json number(double v)
{
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  return v;
}

double read_number(const json & j)
{
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") {
      return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("bad number '" + s + "' in report");
  }
  return j.get<double>();
}

json pair(const Eigen::Vector2d & v) { return json::array({number(v.x()), number(v.y())}); }

Eigen::Vector2d read_pair(const json & j)
{
  return Eigen::Vector2d(read_number(j.at(0)), read_number(j.at(1)));
}

json config_json(const SolverConfig & c)
{
  return {
    {"order", c.order},
    {"newton_tol", c.newton_tol},
    {"max_newton_iters", c.max_newton_iters},
    {"seed_rings", c.seed_rings},
    {"seed_directions", c.seed_directions},
    {"dedupe_tol", c.dedupe_tol},
    {"damping", c.damping},
    {"max_halvings", c.max_halvings},
    {"verify_steps", c.verify_steps},
  };
}

SolverConfig read_config(const json & j)
{
  SolverConfig c;
  c.order = j.at("order").get<int>();
  c.newton_tol = j.at("newton_tol").get<double>();
  c.max_newton_iters = j.at("max_newton_iters").get<int>();
  c.seed_rings = j.at("seed_rings").get<int>();
  c.seed_directions = j.at("seed_directions").get<int>();
  c.dedupe_tol = j.at("dedupe_tol").get<double>();
  c.damping = j.at("damping").get<double>();
  c.max_halvings = j.at("max_halvings").get<int>();
  c.verify_steps = j.at("verify_steps").get<int>();
  return c;
}

json solution_json(const ShootingSolution & s)
{
  json history = json::array();
  for (const double r : s.residual_history) {
    history.push_back(number(r));
  }
  return {
    {"a", pair(s.a)},
    {"endpoint_series", pair(s.endpoint_series)},
    {"residual_series", number(s.residual_series)},
    {"endpoint_rk", pair(s.endpoint_rk)},
    {"residual_rk", number(s.residual_rk)},
    {"rk_error", s.rk_error},
    {"euclidean_norm", number(s.euclidean_norm)},
    {"g_norm", number(s.g_norm)},
    {"iterations", s.iterations},
    {"seed_index", s.seed_index},
    {"shortest", s.shortest},
    {"newton_residuals", history},
  };
}

ShootingSolution read_solution(const json & j)
{
  ShootingSolution s;
  s.a = read_pair(j.at("a"));
  s.endpoint_series = read_pair(j.at("endpoint_series"));
  s.residual_series = read_number(j.at("residual_series"));
  s.endpoint_rk = read_pair(j.at("endpoint_rk"));
  s.residual_rk = read_number(j.at("residual_rk"));
  s.rk_error = j.at("rk_error").get<std::string>();
  s.euclidean_norm = read_number(j.at("euclidean_norm"));
  s.g_norm = read_number(j.at("g_norm"));
  s.iterations = j.at("iterations").get<int>();
  s.seed_index = j.at("seed_index").get<int>();
  s.shortest = j.at("shortest").get<bool>();
  for (const auto & r : j.at("newton_residuals")) {
    s.residual_history.push_back(read_number(r));
  }
  return s;
}

}  // namespace

std::string report_to_json(const RunReport & r)
{
  json sols = json::array();
  for (const auto & s : r.solutions) {
    sols.push_back(solution_json(s));
  }
  const json j{
    {"surface", r.surface},
    {"p", pair(r.p)},
    {"q", pair(r.q)},
    {"config", config_json(r.config)},
    {"solutions", sols},
    {"wall_time_s", number(r.wall_time_s)},
    {"version", r.version},
  };
  return j.dump(2);
}

RunReport report_from_json(std::string_view text)
{
  const json j = json::parse(text);
  RunReport r;
  r.surface = j.at("surface").get<std::string>();
  r.p = read_pair(j.at("p"));
  r.q = read_pair(j.at("q"));
  r.config = read_config(j.at("config"));
  for (const auto & s : j.at("solutions")) {
    r.solutions.push_back(read_solution(s));
  }
  r.wall_time_s = read_number(j.at("wall_time_s"));
  r.version = j.at("version").get<std::string>();
  return r;
}

std::string polyline_csv(const GeodesicSeries & s, int samples)
{
  if (samples < 2) {
    throw std::invalid_argument("samples must be >= 2");
  }
  std::string out = "t,x,y\n";
  for (int i = 0; i < samples; ++i) {
    const double t = i == samples - 1 ? 1.0 : static_cast<double>(i) / (samples - 1);
    const Point x = s(t);
    out += fmt(t) + "," + fmt(x.x()) + "," + fmt(x.y()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference table

namespace
{

struct ReferenceRow
{
  const char * surface;
  Point p, q, reported;
};

const ReferenceRow kRows[] = {
  {"sphere-chart", {0.5, 0.5}, {-1.0 / 3.0, 2.0 / 3.0}, {-0.333333333, 0.666666666}},
  {"monkey-saddle", {1.0, 2.0}, {15.0, 7.0}, {14.999999987, 6.999997216}},
  {"half-plane", {0.5, 0.5}, {0.55, 0.6}, {0.549999999, 0.599999999}},
};

constexpr double kMatchReported = 1e-8;
constexpr double kMatchTarget = 1e-5;

}  // namespace

TableResult run_table(const SolverConfig & cfg)
{
  TableResult result;
  result.order = cfg.order;
  result.pass = true;
  for (std::size_t i = 0; i < std::size(kRows); ++i) {
    const ReferenceRow & ref = kRows[i];
    TableRow row;
    row.surface = ref.surface;
    row.p = ref.p;
    row.q = ref.q;
    row.reported = ref.reported;
    const auto metric = builtin_surface(ref.surface).to_metric();
    const auto sols = solve(metric, ref.p, ref.q, cfg);
    if (!sols.empty()) {
      row.solved = true;
      row.best = sols.front();
      row.deviation_from_reported = (row.best.endpoint_series - ref.reported).cwiseAbs();
      row.deviation_from_target = (row.best.endpoint_series - ref.q).cwiseAbs();
      // The saddle row's printed endpoint is itself ~3e-6 off target; it is judged
      // against the target instead.
      row.pass = i == 1 ?
        row.deviation_from_target.maxCoeff() <= kMatchTarget :
        row.deviation_from_reported.maxCoeff() <= kMatchReported;
    }
    result.pass = result.pass && row.pass;
    result.rows.push_back(row);
  }
  return result;
}

std::string TableResult::text() const
{
  std::vector<std::vector<std::string>> cells{
    {"surface", "p", "q", "endpoint by series", "reported", "|dev| reported", "rk endpoint", "status"}};
  for (const auto & r : rows) {
    cells.push_back({
        r.surface, fmt_point(r.p), fmt_point(r.q),
        r.solved ? fmt_point(r.best.endpoint_series) : "no solution",
        fmt_point(r.reported),
        r.solved ? fmt_point(r.deviation_from_reported) : "-",
        r.solved ? fmt_point(r.best.endpoint_rk) : "-",
        r.pass ? "PASS" : "FAIL"});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto & line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }

  std::ostringstream os;
  os << "order " << order << "\n";
  for (const auto & line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c + 1 == line.size()) {
        os << line[c] << "\n";
      } else {
        os << line[c] << std::string(width[c] - line[c].size(), ' ') << " | ";
      }
    }
  }
  os << (pass ? "all rows pass\n" : "some rows FAILED\n");
  return os.str();
}

std::string TableResult::json() const
{
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto & r : rows) {
    nlohmann::json row{
      {"surface", r.surface},
      {"p", pair(r.p)},
      {"q", pair(r.q)},
      {"reported", pair(r.reported)},
      {"solved", r.solved},
      {"pass", r.pass},
    };
    if (r.solved) {
      row["solution"] = solution_json(r.best);
      row["deviation_from_reported"] = pair(r.deviation_from_reported);
      row["deviation_from_target"] = pair(r.deviation_from_target);
    }
    rows_json.push_back(row);
  }
  const nlohmann::json j{
    {"order", order}, {"rows", rows_json}, {"pass", pass}, {"version", tool_version()}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Command line

namespace
{

struct Options
{
  std::string surface;
  std::string from;
  std::string to;
  std::string velocity;
  int order = kDefaultOrder;
  int samples = 100;
  double tol = 1e-12;
  std::string seeds;
  std::string out_dir;
  bool trace = false;
  bool json = false;
};

SolverConfig make_config(const Options & o)
{
  SolverConfig cfg;
  cfg.order = o.order;
  cfg.newton_tol = o.tol;
  if (!o.seeds.empty()) {
    const Point rd = parse_point(o.seeds);
    cfg.seed_rings = static_cast<int>(rd.x());
    cfg.seed_directions = static_cast<int>(rd.y());
    if (cfg.seed_rings != rd.x() || cfg.seed_directions != rd.y()) {
      throw std::invalid_argument("--seeds expects two integers R,D");
    }
  }
  cfg.validate();
  return cfg;
}

void write_file(const std::filesystem::path & path, const std::string & content)
{
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  f << content;
}

int cmd_solve(const Options & o, std::ostream & out)
{
  const auto def = resolve_surface(o.surface);
  const auto metric = def.to_metric();
  const Point p = parse_point(o.from);
  const Point q = parse_point(o.to);
  const SolverConfig cfg = make_config(o);
  if (o.samples < 2) {
    throw std::invalid_argument("--samples must be >= 2");
  }

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.surface = def.name;
  report.p = p;
  report.q = q;
  report.config = cfg;
  report.solutions = solve(metric, p, q, cfg);
  report.wall_time_s =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.version = tool_version();

  if (!o.out_dir.empty()) {
    const std::filesystem::path dir(o.out_dir);
    write_file(dir / "report.json", report_to_json(report) + "\n");
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
      const auto series = develop_series(metric, p, report.solutions[i].a, cfg.order);
      write_file(dir / ("solution_" + std::to_string(i) + ".csv"), polyline_csv(series, o.samples));
    }
  }

  if (o.json) {
    out << report_to_json(report) << "\n";
  } else {
    out << "surface " << def.name << "  p = " << fmt_point(p) << "  q = " << fmt_point(q)
        << "  order " << cfg.order << "\n";
    out << report.solutions.size() << " solution(s)\n";
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
      const auto & s = report.solutions[i];
      out << "#" << i << (s.shortest ? " [shortest]" : "") << "  a = " << fmt_point(s.a)
          << "  |a| = " << fmt(s.euclidean_norm) << "  |a|_g = " << fmt(s.g_norm) << "\n"
          << "    series endpoint " << fmt_point(s.endpoint_series)
          << "  residual " << fmt(s.residual_series) << "\n"
          << "    rk endpoint     " << fmt_point(s.endpoint_rk)
          << "  residual " << fmt(s.residual_rk)
          << (s.rk_error.empty() ? "" : "  (" + s.rk_error + ")") << "\n"
          << "    newton iterations " << s.iterations << "  seed " << s.seed_index << "\n";
    }
  }
  return report.solutions.empty() ? 2 : 0;
}

int cmd_expmap(const Options & o, std::ostream & out)
{
  const auto def = resolve_surface(o.surface);
  const auto metric = def.to_metric();
  const Point p = parse_point(o.from);
  const Velocity v = parse_point(o.velocity);
  const SolverConfig cfg = make_config(o);
  require_in_domain(metric, p);

  const auto series = develop_series(metric, p, v, cfg.order);
  const Point endpoint = series(1.0);
  const Point rk = integrate_reference(metric, p, v, 1.0, cfg.verify_steps);
  require_in_domain(metric, endpoint);
  const double gap = (endpoint - rk).lpNorm<Eigen::Infinity>();

  if (o.trace) {
    const std::filesystem::path dir(o.out_dir.empty() ? "." : o.out_dir);
    write_file(dir / "expmap.csv", polyline_csv(series, o.samples));
  }
  if (o.json) {
    const json j{
      {"surface", def.name}, {"p", pair(p)}, {"v", pair(v)}, {"order", cfg.order},
      {"series_endpoint", pair(endpoint)}, {"rk_endpoint", pair(rk)}, {"gap", number(gap)},
      {"version", tool_version()}};
    out << j.dump(2) << "\n";
  } else {
    out << "series endpoint " << fmt_point(endpoint) << "\n"
        << "rk endpoint     " << fmt_point(rk) << "\n"
        << "gap             " << fmt(gap) << "\n";
  }
  return 0;
}

int cmd_table(const Options & o, std::ostream & out)
{
  const SolverConfig cfg = make_config(o);
  const TableResult t = run_table(cfg);
  const std::string text = o.json ? t.json() + "\n" : t.text();
  if (!o.out_dir.empty()) {
    write_file(std::filesystem::path(o.out_dir) / "table.json", t.json() + "\n");
  }
  out << text;
  return t.pass ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Geodesics of 2-D Riemannian metrics by Taylor series and shooting", "geodex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  Options o;
  auto common = [&](CLI::App * sub) {
      sub->add_option("--order", o.order, "Taylor truncation degree")->capture_default_str();
      sub->add_option("--samples", o.samples, "Polyline sample count")->capture_default_str();
      sub->add_option("--tol", o.tol, "Newton residual tolerance")->capture_default_str();
      sub->add_option("--seeds", o.seeds, "Seed rings and directions, R,D");
      sub->add_option("--out", o.out_dir, "Output directory");
      sub->add_flag("--json", o.json, "Print JSON instead of text");
    };

  auto * solve_cmd = app.add_subcommand("solve", "Join two points by geodesics");
  solve_cmd->add_option("--surface", o.surface, "Built-in name or definition file")->required();
  solve_cmd->add_option("--from", o.from, "Start point x,y")->required();
  solve_cmd->add_option("--to", o.to, "End point x,y")->required();
  common(solve_cmd);

  auto * exp_cmd = app.add_subcommand("expmap", "Exponential map of a tangent vector");
  exp_cmd->add_option("--surface", o.surface, "Built-in name or definition file")->required();
  exp_cmd->add_option("--from", o.from, "Base point x,y")->required();
  exp_cmd->add_option("--v", o.velocity, "Tangent vector x,y")->required();
  exp_cmd->add_flag("--trace", o.trace, "Write the polyline to <out>/expmap.csv");
  common(exp_cmd);

  auto * table_cmd = app.add_subcommand("table", "Reproduce the reference geodesic table");
  common(table_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success & e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError & e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(o, out);
    }
    if (exp_cmd->parsed()) {
      return cmd_expmap(o, out);
    }
    return cmd_table(o, out);
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace geodex::cli
