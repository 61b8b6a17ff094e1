#ifndef GEODEX_SURFACE_IO_HPP
#define GEODEX_SURFACE_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "geodex/metric.hpp"

namespace geodex
{

/// One surface document: either a graph z = f(x, y) or direct metric components.
struct SurfaceDefinition
{
  enum class Kind { graph, components };

  std::string name;
  Kind kind = Kind::components;
  std::string f;
  std::string E = "1", F = "0", G = "1";
  std::string domain;

  MetricField to_metric() const;
};

/// euclidean, sphere-chart, monkey-saddle, half-plane.
const std::vector<SurfaceDefinition> & builtin_surfaces();

/// Throws std::invalid_argument listing the known names.
const SurfaceDefinition & builtin_surface(std::string_view name);

/// Parses one JSON object `{ "name": ..., "kind": "graph" | "components", ... }`.
SurfaceDefinition parse_surface_document(std::string_view json_text);

/// Reads every JSON object in `text` (whitespace- or newline-separated).
std::vector<SurfaceDefinition> parse_surface_documents(std::string_view text);

std::string to_json(const SurfaceDefinition & s);

/**
 * Resolves `ref` as a built-in name, else as a file path. `path#name` selects one
 * document from a multi-document file; otherwise the file must hold exactly one
 * document or the first is used.
 */
SurfaceDefinition resolve_surface(const std::string & ref);

}  // namespace geodex

#endif  // GEODEX_SURFACE_IO_HPP
