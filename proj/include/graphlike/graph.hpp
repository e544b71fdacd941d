#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphlike {

using VertexId = int;
using EdgeId = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Input validation failure for graphs, meshes and their parameters.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Edge weight p_e, either constant or piecewise linear in the edge coordinate.
/// Sampled densities are extended constantly beyond the first and last sample.
class DensitySpec {
 public:
  static DensitySpec constant(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw GraphError("density: constant value must be positive and finite");
    DensitySpec d;
    d.xs_ = {0.0};
    d.ps_ = {value};
    return d;
  }

  static DensitySpec sampled(std::vector<double> xs, std::vector<double> ps) {
    if (xs.empty() || xs.size() != ps.size())
      throw GraphError("density: sampled grid needs matching non-empty x and p arrays");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(ps[i] > 0.0) || !std::isfinite(ps[i]))
        throw GraphError("density: sampled values must be strictly positive");
      if (i > 0 && !(xs[i] > xs[i - 1]))
        throw GraphError("density: sample abscissae must be strictly increasing");
    }
    DensitySpec d;
    d.xs_ = std::move(xs);
    d.ps_ = std::move(ps);
    d.sampled_ = true;
    return d;
  }

  bool is_constant() const { return !sampled_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ps() const { return ps_; }

  double operator()(double x) const {
    if (!sampled_ || x <= xs_.front()) return ps_.front();
    if (x >= xs_.back()) return ps_.back();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return (1.0 - t) * ps_[i - 1] + t * ps_[i];
  }

  /// Minimum over [a, b]; exact for the piecewise-linear interpolant.
  double min_on(double a, double b) const {
    double m = std::min((*this)(a), (*this)(b));
    for (std::size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i] > a && xs_[i] < b) m = std::min(m, ps_[i]);
    return m;
  }

  double max_on(double a, double b) const {
    double m = std::max((*this)(a), (*this)(b));
    for (std::size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i] > a && xs_[i] < b) m = std::max(m, ps_[i]);
    return m;
  }

  /// Slope of the interpolant at x (right derivative at kinks).
  double derivative(double x) const {
    if (!sampled_ || xs_.size() < 2 || x < xs_.front() || x >= xs_.back()) return 0.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    return (ps_[i] - ps_[i - 1]) / (xs_[i] - xs_[i - 1]);
  }

 private:
  DensitySpec() = default;
  std::vector<double> xs_;
  std::vector<double> ps_;
  bool sampled_ = false;
};

/// An edge e with orientation tail = ∂₋e (x = 0) and head = ∂₊e (x = ℓ_e).
/// A lead has no head and infinite length.
struct EdgeRecord {
  EdgeId id = 0;
  VertexId tail = 0;
  std::optional<VertexId> head;
  double length = 1.0;
  DensitySpec density = DensitySpec::constant(1.0);

  bool is_lead() const { return !head.has_value(); }
  bool is_loop() const { return head.has_value() && *head == tail; }
};

enum class EdgeSide { Tail, Head };

/// One element of E_v: the edge (by index) and which end touches v.
/// A loop contributes two incidences.
struct Incidence {
  std::size_t edge;
  EdgeSide side;
};

/// Connected, locally finite weighted metric graph. Immutable after construction.
class MetricGraph {
 public:
  MetricGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!index_.emplace(vertices_[i], i).second)
        throw GraphError("graph: duplicate vertex id " + std::to_string(vertices_[i]));
    if (vertices_.empty()) throw GraphError("graph: no vertices");
    std::unordered_map<EdgeId, std::size_t> seen;
    incidences_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const EdgeRecord& rec = edges_[e];
      const std::string tag = "graph: edge " + std::to_string(rec.id);
      if (!seen.emplace(rec.id, e).second) throw GraphError(tag + " has a duplicate id");
      if (!(rec.length > 0.0)) throw GraphError(tag + " must have positive length");
      if (std::isinf(rec.length) != rec.is_lead())
        throw GraphError(tag + ": infinite length is allowed exactly for leads (edges without head)");
      incidences_[vertex_index(rec.tail)].push_back({e, EdgeSide::Tail});
      if (rec.head) incidences_[vertex_index(*rec.head)].push_back({e, EdgeSide::Head});
    }
    if (!connected()) throw GraphError("graph: not connected");
  }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::size_t vertex_index(VertexId v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw GraphError("graph: unknown vertex id " + std::to_string(v));
    return it->second;
  }

  std::size_t edge_index(EdgeId id) const {
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (edges_[e].id == id) return e;
    throw GraphError("graph: unknown edge id " + std::to_string(id));
  }

  /// E_v as a disjoint union of E_v⁺ and E_v⁻.
  const std::vector<Incidence>& incident(std::size_t vertex_idx) const { return incidences_.at(vertex_idx); }

  std::size_t tail_index(std::size_t e) const { return vertex_index(edges_[e].tail); }
  std::size_t head_index(std::size_t e) const { return vertex_index(edges_.at(e).head.value()); }

  bool has_leads() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const EdgeRecord& r) { return r.is_lead(); });
  }

 private:
  bool connected() const {
    std::vector<char> seen(vertices_.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (const Incidence& inc : incidences_[v]) {
        const EdgeRecord& rec = edges_[inc.edge];
        if (!rec.head) continue;
        const std::size_t w = vertex_index(inc.side == EdgeSide::Tail ? *rec.head : rec.tail);
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          q.push(w);
        }
      }
    }
    return count == vertices_.size();
  }

  std::vector<VertexId> vertices_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<Incidence>> incidences_;
};

/// deg v = |E_v⁺| + |E_v⁻|; a loop counts twice.
inline int degree(const MetricGraph& g, VertexId v) {
  return static_cast<int>(g.incident(g.vertex_index(v)).size());
}

/// Replaces every lead by a finite edge of the given length ending in a new vertex.
/// New vertex ids start above the largest existing id.
inline MetricGraph truncate_leads(const MetricGraph& g, double truncation_length) {
  if (!(truncation_length > 0.0) || std::isinf(truncation_length))
    throw GraphError("truncate_leads: truncation length must be positive and finite");
  std::vector<VertexId> vertices = g.vertices();
  VertexId next = *std::max_element(vertices.begin(), vertices.end()) + 1;
  std::vector<EdgeRecord> edges = g.edges();
  for (EdgeRecord& rec : edges) {
    if (!rec.is_lead()) continue;
    rec.head = next;
    rec.length = truncation_length;
    vertices.push_back(next++);
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Uniformity: degree, length and density bounds

struct UniformityBounds {
  int max_degree = 0;        // d₀
  double min_length = 0.0;   // ℓ₀
  double density_lower = 0;  // p₋, near-vertex zone only
  double density_upper = 0;  // p₊, whole edge
};

struct UniformityReport {
  int observed_max_degree = 0;
  double observed_min_length = kInfinity;
  double observed_density_lower = kInfinity;
  double observed_density_upper = 0.0;
  bool degree_ok = false;
  bool length_ok = false;
  bool density_ok = false;
  bool uniform() const { return degree_ok && length_ok && density_ok; }
};

/// The lower density bound is only checked where dist(x, ∂±e) ≤ min{1, ℓ_e/2}.
inline UniformityReport check_uniform_graph(const MetricGraph& g, const UniformityBounds& bounds) {
  UniformityReport rep;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    rep.observed_max_degree = std::max(rep.observed_max_degree, static_cast<int>(g.incident(v).size()));
  for (const EdgeRecord& rec : g.edges()) {
    rep.observed_min_length = std::min(rep.observed_min_length, rec.length);
    const double zone = std::min(1.0, rec.length / 2.0);
    double lower = rec.density.min_on(0.0, zone);
    if (!rec.is_lead()) lower = std::min(lower, rec.density.min_on(rec.length - zone, rec.length));
    rep.observed_density_lower = std::min(rep.observed_density_lower, lower);
    const double upper_end = rec.is_lead() ? std::max(rec.density.xs().back(), 0.0) : rec.length;
    rep.observed_density_upper = std::max(rep.observed_density_upper, rec.density.max_on(0.0, upper_end));
  }
  rep.degree_ok = rep.observed_max_degree <= bounds.max_degree;
  rep.length_ok = rep.observed_min_length >= bounds.min_length;
  rep.density_ok = rep.observed_density_lower >= bounds.density_lower &&
                   rep.observed_density_upper <= bounds.density_upper;
  return rep;
}

// ---------------------------------------------------------------------------
// Combinatorial graphs

/// Undirected multigraph on vertices 0..n-1; loops allowed.
struct DiscreteGraph {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<int> degrees() const {
    std::vector<int> d(num_vertices, 0);
    for (auto [a, b] : edges) {
      ++d[a];
      ++d[b];
    }
    return d;
  }
};

/// Drops lengths and densities. Leads cannot be represented and are rejected.
inline DiscreteGraph to_discrete(const MetricGraph& g) {
  DiscreteGraph d;
  d.num_vertices = g.num_vertices();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edges()[e].is_lead()) throw GraphError("to_discrete: graph has a lead; truncate it first");
    d.edges.emplace_back(g.tail_index(e), g.head_index(e));
  }
  return d;
}

}  // namespace graphlike
