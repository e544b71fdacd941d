#pragma once

#include <array>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "graphlike/graph.hpp"

namespace graphlike {

namespace kind {
struct Interval { double length = 1.0; };
/// Circle of total circumference `length`, realized with 3 vertices and edges of length/3.
struct Cycle { double length = 1.0; };
struct Star { int n_edges = 3; double length = 1.0; };
struct CompleteK4 { double length = 1.0; };
/// Rooted tree: the root has d0 children, every other interior vertex d0-1.
struct TreeTruncation { int d0 = 3; int depth = 1; double length = 1.0; };
struct SierpinskiMetric { int generation = 1; double length = 1.0; };
}  // namespace kind

using GraphKind = std::variant<kind::Interval, kind::Cycle, kind::Star, kind::CompleteK4,
                               kind::TreeTruncation, kind::SierpinskiMetric>;

namespace detail {

inline void require_length(double l) {
  if (!(l > 0.0) || std::isinf(l)) throw GraphError("generate_graph: edge length must be positive and finite");
}

inline MetricGraph from_pairs(std::size_t n, const std::vector<std::pair<int, int>>& pairs, double length) {
  std::vector<VertexId> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<VertexId>(i);
  std::vector<EdgeRecord> es;
  es.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    es.push_back({static_cast<EdgeId>(i), pairs[i].first, pairs[i].second, length, DensitySpec::constant(1.0)});
  return MetricGraph(std::move(vs), std::move(es));
}

/// Gₙ₊₁ from three copies of Gₙ: corner i of copy j is glued to corner j of copy i.
/// Returns the vertex count, edge list and the three outer corners.
struct SierpinskiCombinatorics {
  int num_vertices = 3;
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 0}};
  std::array<int, 3> corners{0, 1, 2};
};

inline SierpinskiCombinatorics sierpinski_step(const SierpinskiCombinatorics& g) {
  const int n = g.num_vertices;
  // global id of (copy c, local v)
  std::vector<int> id(3 * n, -1);
  int next = 0;
  for (int c = 0; c < 3; ++c) {
    for (int v = 0; v < n; ++v) {
      int& slot = id[c * n + v];
      if (slot >= 0) continue;
      slot = next++;
      for (int j = 0; j < 3; ++j)
        if (j != c && v == g.corners[j]) id[j * n + g.corners[c]] = slot;
    }
  }
  SierpinskiCombinatorics out;
  out.num_vertices = next;
  out.edges.clear();
  for (int c = 0; c < 3; ++c)
    for (auto [a, b] : g.edges) out.edges.emplace_back(id[c * n + a], id[c * n + b]);
  for (int i = 0; i < 3; ++i) out.corners[i] = id[i * n + g.corners[i]];
  return out;
}

inline SierpinskiCombinatorics sierpinski_combinatorics(int generation) {
  SierpinskiCombinatorics g;
  for (int i = 1; i < generation; ++i) g = sierpinski_step(g);
  return g;
}

}  // namespace detail

inline MetricGraph generate_graph(const GraphKind& k) {
  return std::visit(
      [](const auto& p) -> MetricGraph {
        using T = std::decay_t<decltype(p)>;
        detail::require_length(p.length);
        if constexpr (std::is_same_v<T, kind::Interval>) {
          return detail::from_pairs(2, {{0, 1}}, p.length);
        } else if constexpr (std::is_same_v<T, kind::Cycle>) {
          return detail::from_pairs(3, {{0, 1}, {1, 2}, {2, 0}}, p.length / 3.0);
        } else if constexpr (std::is_same_v<T, kind::Star>) {
          if (p.n_edges < 1) throw GraphError("generate_graph: Star needs n_edges >= 1");
          std::vector<std::pair<int, int>> pairs;
          for (int i = 1; i <= p.n_edges; ++i) pairs.emplace_back(0, i);
          return detail::from_pairs(static_cast<std::size_t>(p.n_edges) + 1, pairs, p.length);
        } else if constexpr (std::is_same_v<T, kind::CompleteK4>) {
          return detail::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, p.length);
        } else if constexpr (std::is_same_v<T, kind::TreeTruncation>) {
          if (p.d0 < 2) throw GraphError("generate_graph: TreeTruncation needs d0 >= 2");
          if (p.depth < 1) throw GraphError("generate_graph: TreeTruncation needs depth >= 1");
          std::vector<std::pair<int, int>> pairs;
          std::vector<int> frontier{0};
          int next = 1;
          for (int level = 0; level < p.depth; ++level) {
            std::vector<int> grown;
            const int children = level == 0 ? p.d0 : p.d0 - 1;
            for (int parent : frontier)
              for (int c = 0; c < children; ++c) {
                pairs.emplace_back(parent, next);
                grown.push_back(next++);
              }
            frontier = std::move(grown);
          }
          return detail::from_pairs(static_cast<std::size_t>(next), pairs, p.length);
        } else {
          if (p.generation < 1) throw GraphError("generate_graph: SierpinskiMetric needs generation >= 1");
          if (p.generation > 8) throw GraphError("generate_graph: Sierpinski generation > 8 exceeds the dense solver guard");
          const auto s = detail::sierpinski_combinatorics(p.generation);
          return detail::from_pairs(static_cast<std::size_t>(s.num_vertices), s.edges, p.length);
        }
      },
      k);
}

}  // namespace graphlike
