#include "geodex/surface_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace geodex
{

using nlohmann::json;

MetricField SurfaceDefinition::to_metric() const
{
  if (kind == Kind::graph) {
    return metric_from_graph(parse(f), name, domain);
  }
  return metric_from_components(parse(E), parse(F), parse(G), name, domain);
}

const std::vector<SurfaceDefinition> & builtin_surfaces()
{
  using K = SurfaceDefinition::Kind;
  static const std::vector<SurfaceDefinition> catalog{
    {"euclidean", K::components, "", "1", "0", "1", ""},
    {"sphere-chart", K::graph, "sqrt(1 - x^2 - y^2)", "", "", "", "x^2 + y^2 < 1"},
    {"monkey-saddle", K::graph, "x^3 - 3*x*y^2", "", "", "", ""},
    {"half-plane", K::components, "", "1/y^2", "0", "1/y^2", "y > 0"},
  };
  return catalog;
}

const SurfaceDefinition & builtin_surface(std::string_view name)
{
  for (const auto & s : builtin_surfaces()) {
    if (s.name == name) {
      return s;
    }
  }
  std::string known;
  for (const auto & s : builtin_surfaces()) {
    known += (known.empty() ? "" : ", ") + s.name;
  }
  throw std::invalid_argument("unknown surface '" + std::string(name) + "' (built-in: " + known + ")");
}

namespace
{

SurfaceDefinition from_json(const json & j)
{
  if (!j.is_object()) {
    throw std::invalid_argument("surface document must be a JSON object");
  }
  SurfaceDefinition s;
  s.name = j.value("name", "");
  const std::string kind = j.value("kind", "");
  s.domain = j.value("domain", "");
  if (kind == "graph") {
    s.kind = SurfaceDefinition::Kind::graph;
    if (!j.contains("f")) {
      throw std::invalid_argument("graph surface requires field 'f'");
    }
    s.f = j.at("f").get<std::string>();
    s.E = s.F = s.G = "";
  } else if (kind == "components") {
    s.kind = SurfaceDefinition::Kind::components;
    for (const char * key : {"E", "F", "G"}) {
      if (!j.contains(key)) {
        throw std::invalid_argument(std::string("components surface requires field '") + key + "'");
      }
    }
    s.E = j.at("E").get<std::string>();
    s.F = j.at("F").get<std::string>();
    s.G = j.at("G").get<std::string>();
  } else {
    throw std::invalid_argument("surface 'kind' must be 'graph' or 'components'");
  }
  // Fail on malformed expressions at load time rather than at first use.
  (void)s.to_metric();
  return s;
}

}  // namespace

SurfaceDefinition parse_surface_document(std::string_view json_text)
{
  return from_json(json::parse(json_text));
}

std::vector<SurfaceDefinition> parse_surface_documents(std::string_view text)
{
  std::vector<SurfaceDefinition> out;
  std::istringstream in{std::string(text)};
  for (;;) {
    in >> std::ws;
    if (in.peek() == std::char_traits<char>::eof()) {
      break;
    }
    json j;
    in >> j;
    out.push_back(from_json(j));
  }
  return out;
}

std::string to_json(const SurfaceDefinition & s)
{
  json j;
  j["name"] = s.name;
  if (s.kind == SurfaceDefinition::Kind::graph) {
    j["kind"] = "graph";
    j["f"] = s.f;
  } else {
    j["kind"] = "components";
    j["E"] = s.E;
    j["F"] = s.F;
    j["G"] = s.G;
  }
  if (!s.domain.empty()) {
    j["domain"] = s.domain;
  }
  return j.dump();
}

SurfaceDefinition resolve_surface(const std::string & ref)
{
  for (const auto & s : builtin_surfaces()) {
    if (s.name == ref) {
      return s;
    }
  }
  std::string path = ref;
  std::string wanted;
  if (const auto hash = ref.rfind('#'); hash != std::string::npos) {
    path = ref.substr(0, hash);
    wanted = ref.substr(hash + 1);
  }
  if (!std::filesystem::is_regular_file(path)) {
    (void)builtin_surface(ref);  // throws with the list of known names
  }
  std::ifstream file(path);
  std::stringstream buf;
  buf << file.rdbuf();
  const auto docs = parse_surface_documents(buf.str());
  if (docs.empty()) {
    throw std::invalid_argument("no surface documents in '" + path + "'");
  }
  if (wanted.empty()) {
    return docs.front();
  }
  for (const auto & s : docs) {
    if (s.name == wanted) {
      return s;
    }
  }
  throw std::invalid_argument("surface '" + wanted + "' not found in '" + path + "'");
}

}  // namespace geodex
