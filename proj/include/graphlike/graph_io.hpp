#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphlike/embedding.hpp"

namespace graphlike {

/// A malformed graph file; the message starts with the offending field path.
class GraphFileError : public GraphError {
 public:
  GraphFileError(const std::string& field, const std::string& what) : GraphError(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct GraphFile {
  MetricGraph graph;
  std::optional<EmbeddedGraph> embedding;
};

namespace detail {

using nlohmann::json;

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw GraphFileError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw GraphFileError(path + "." + key, "missing");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw GraphFileError(path, "expected a number");
  return v.get<double>();
}

inline int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw GraphFileError(path, "expected an integer");
  return v.get<int>();
}

inline std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw GraphFileError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline DensitySpec density(const json& d, const std::string& path) {
  if (d.is_number()) {
    try {
      return DensitySpec::constant(d.get<double>());
    } catch (const GraphError& e) {
      throw GraphFileError(path, e.what());
    }
  }
  const json& type = member(d, "type", path);
  if (!type.is_string()) throw GraphFileError(path + ".type", "expected \"const\" or \"sampled\"");
  try {
    if (type == "const") return DensitySpec::constant(number(member(d, "value", path), path + ".value"));
    if (type == "sampled")
      return DensitySpec::sampled(numbers(member(d, "x", path), path + ".x"), numbers(member(d, "p", path), path + ".p"));
  } catch (const GraphFileError&) {
    throw;
  } catch (const GraphError& e) {
    throw GraphFileError(path, e.what());
  }
  throw GraphFileError(path + ".type", "expected \"const\" or \"sampled\"");
}

inline double length(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v == "inf") return kInfinity;
    throw GraphFileError(path, "expected a positive number or \"inf\"");
  }
  const double l = number(v, path);
  if (!(l > 0.0)) throw GraphFileError(path, "expected a positive number or \"inf\"");
  return l;
}

}  // namespace detail

inline GraphFile parse_graph_json(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphFileError("<document>", std::string("invalid JSON: ") + e.what());
  }
  const json& vs = detail::member(doc, "vertices", "<document>");
  if (!vs.is_array() || vs.empty()) throw GraphFileError("vertices", "expected a non-empty array");
  std::vector<VertexId> ids;
  std::vector<std::optional<Point2>> pos;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = "vertices[" + std::to_string(i) + "]";
    ids.push_back(detail::integer(detail::member(vs[i], "id", p), p + ".id"));
    const bool hx = vs[i].contains("x"), hy = vs[i].contains("y");
    if (hx != hy) throw GraphFileError(p + (hx ? ".y" : ".x"), "missing (x and y come together)");
    if (hx)
      pos.emplace_back(Point2(detail::number(vs[i]["x"], p + ".x"), detail::number(vs[i]["y"], p + ".y")));
    else
      pos.emplace_back();
  }
  const json& es = detail::member(doc, "edges", "<document>");
  if (!es.is_array()) throw GraphFileError("edges", "expected an array");
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = "edges[" + std::to_string(i) + "]";
    EdgeRecord r;
    r.id = detail::integer(detail::member(es[i], "id", p), p + ".id");
    r.tail = detail::integer(detail::member(es[i], "tail", p), p + ".tail");
    if (es[i].contains("head") && !es[i]["head"].is_null()) r.head = detail::integer(es[i]["head"], p + ".head");
    r.length = detail::length(detail::member(es[i], "length", p), p + ".length");
    if (es[i].contains("density")) r.density = detail::density(es[i]["density"], p + ".density");
    edges.push_back(std::move(r));
  }
  GraphFile out{[&] {
                  try {
                    return MetricGraph(ids, edges);
                  } catch (const GraphError& e) {
                    throw GraphFileError("edges", e.what());
                  }
                }(),
                std::nullopt};

  if (doc.contains("embedding")) {
    const json& em = doc["embedding"];
    if (!em.is_object()) throw GraphFileError("embedding", "expected an object");
    std::vector<Point2> p;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (!pos[i]) throw GraphFileError("vertices[" + std::to_string(i) + "].x", "missing (required by the embedding)");
      p.push_back(*pos[i]);
    }
    std::optional<DensitySpec> fallback;
    if (em.contains("radius")) fallback = detail::density(em["radius"], "embedding.radius");
    std::vector<std::optional<DensitySpec>> radii(edges.size());
    std::vector<std::optional<Polyline>> curves(edges.size());
    if (em.contains("edges")) {
      const json& ee = em["edges"];
      if (!ee.is_array()) throw GraphFileError("embedding.edges", "expected an array");
      for (std::size_t i = 0; i < ee.size(); ++i) {
        const std::string q = "embedding.edges[" + std::to_string(i) + "]";
        const int id = detail::integer(detail::member(ee[i], "id", q), q + ".id");
        std::size_t e;
        try {
          e = out.graph.edge_index(id);
        } catch (const GraphError&) {
          throw GraphFileError(q + ".id", "unknown edge id " + std::to_string(id));
        }
        if (ee[i].contains("radius")) radii[e] = detail::density(ee[i]["radius"], q + ".radius");
        if (ee[i].contains("polyline")) {
          const json& pl = ee[i]["polyline"];
          if (!pl.is_array()) throw GraphFileError(q + ".polyline", "expected an array of [x, y] points");
          std::vector<Point2> pts;
          for (std::size_t k = 0; k < pl.size(); ++k) {
            const std::vector<double> xy = detail::numbers(pl[k], q + ".polyline[" + std::to_string(k) + "]");
            if (xy.size() != 2) throw GraphFileError(q + ".polyline[" + std::to_string(k) + "]", "expected [x, y]");
            pts.emplace_back(xy[0], xy[1]);
          }
          try {
            curves[e] = Polyline(std::move(pts));
          } catch (const GraphError& err) {
            throw GraphFileError(q + ".polyline", err.what());
          }
        }
      }
    }
    std::vector<DensitySpec> rs;
    bool any_curve = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!radii[e] && !fallback) throw GraphFileError("embedding.radius", "missing (edge " + std::to_string(edges[e].id) + " has no radius)");
      rs.push_back(radii[e] ? *radii[e] : *fallback);
      any_curve = any_curve || curves[e].has_value();
    }
    std::vector<Polyline> cs;
    if (any_curve)
      for (std::size_t e = 0; e < edges.size(); ++e)
        cs.push_back(curves[e] ? *curves[e]
                               : Polyline({p[out.graph.tail_index(e)], p[out.graph.head_index(e)]}));
    try {
      out.embedding.emplace(out.graph, std::move(p), std::move(rs), std::move(cs));
    } catch (const GraphError& err) {
      throw GraphFileError("embedding", err.what());
    }
  }
  return out;
}

inline GraphFile load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphFileError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_json(ss.str());
}

}  // namespace graphlike
