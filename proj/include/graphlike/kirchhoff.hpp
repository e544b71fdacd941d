#pragma once

#include <cmath>
#include <algorithm>
#include <functional>
#include <memory>
#include <vector>

#include "graphlike/fem_system.hpp"
#include "graphlike/graph.hpp"

namespace graphlike {

/// P1 system with the given number of cells on every edge. DOFs 0..|V|-1 are the vertices,
/// interior nodes follow edge by edge. Loops need at least two cells.
inline FemSystem assemble_kirchhoff_cells(const MetricGraph& g, const std::vector<int>& cells) {
  if (cells.size() != g.num_edges()) throw GraphError("assemble_kirchhoff: need one cell count per edge");
  const auto nv = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::Index next = nv;
  std::vector<std::vector<Eigen::Index>> nodes(g.num_edges());
  std::vector<std::vector<double>> coords(g.num_edges());
  std::vector<DofLocation> dofs(static_cast<std::size_t>(nv));
  for (Eigen::Index v = 0; v < nv; ++v) dofs[static_cast<std::size_t>(v)] = {-1, 0.0, static_cast<int>(v)};
  double hmax = 0.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const EdgeRecord& rec = g.edges()[e];
    if (rec.is_lead()) throw GraphError("assemble_kirchhoff: edge " + std::to_string(rec.id) + " is infinite; truncate leads first");
    const int n = cells[e];
    if (n < (rec.is_loop() ? 2 : 1)) throw GraphError("assemble_kirchhoff: too few cells on edge " + std::to_string(rec.id));
    nodes[e].push_back(static_cast<Eigen::Index>(g.tail_index(e)));
    coords[e].push_back(0.0);
    for (int i = 1; i < n; ++i) {
      const double x = rec.length * i / n;
      nodes[e].push_back(next++);
      coords[e].push_back(x);
      dofs.push_back({static_cast<int>(e), x, -1});
    }
    nodes[e].push_back(static_cast<Eigen::Index>(g.head_index(e)));
    coords[e].push_back(rec.length);
    hmax = std::max(hmax, rec.length / n);
  }
  std::vector<Eigen::Triplet<double>> kt, mt;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const DensitySpec& p = g.edges()[e].density;
    for (std::size_t c = 0; c + 1 < nodes[e].size(); ++c) {
      const double h = coords[e][c + 1] - coords[e][c];
      const double pm = p(0.5 * (coords[e][c] + coords[e][c + 1]));
      const int a = static_cast<int>(nodes[e][c]), b = static_cast<int>(nodes[e][c + 1]);
      const double k = pm / h, m = pm * h / 6.0;
      kt.insert(kt.end(), {{a, a, k}, {b, b, k}, {a, b, -k}, {b, a, -k}});
      mt.insert(mt.end(), {{a, a, 2 * m}, {b, b, 2 * m}, {a, b, m}, {b, a, m}});
    }
  }
  SpMat K(next, next), M(next, next);
  K.setFromTriplets(kt.begin(), kt.end());
  M.setFromTriplets(mt.begin(), mt.end());
  FemSystem sys(std::move(K), std::move(M), hmax);
  sys.dofs = std::move(dofs);
  sys.edge_nodes = std::move(nodes);
  sys.edge_coords = std::move(coords);
  return sys;
}

/// At least ⌈ℓ_e/h⌉ cells per edge.
inline FemSystem assemble_kirchhoff(const MetricGraph& g, double h) {
  if (!(h > 0.0)) throw GraphError("assemble_kirchhoff: mesh width must be positive");
  std::vector<int> cells;
  for (const EdgeRecord& rec : g.edges()) {
    if (rec.is_lead()) throw GraphError("assemble_kirchhoff: edge " + std::to_string(rec.id) + " is infinite; truncate leads first");
    int n = static_cast<int>(std::ceil(rec.length / h - 1e-9));
    cells.push_back(std::max(n, rec.is_loop() ? 2 : 1));
  }
  return assemble_kirchhoff_cells(g, cells);
}

/// Piecewise-linear evaluation of a DOF vector on edge e at x ∈ [0, ℓ_e].
inline double evaluate_on_edge(const FemSystem& sys, const Vec& u, std::size_t e, double x) {
  const auto& xs = sys.edge_coords.at(e);
  const auto& ns = sys.edge_nodes.at(e);
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  i = std::min(i, xs.size() - 2);
  const double t = std::clamp((x - xs[i]) / (xs[i + 1] - xs[i]), 0.0, 1.0);
  return (1.0 - t) * u(ns[i]) + t * u(ns[i + 1]);
}

struct MetricEigenpair {
  double lambda = 0.0;
  Vec coeffs;
  std::function<double(std::size_t edge, double x)> eval;
};

inline std::vector<MetricEigenpair> eigenpairs(const FemSystem& sys, Eigen::Index n) {
  if (sys.edge_nodes.empty()) throw std::invalid_argument("eigenpairs: not a metric graph system");
  const EigenDecomposition d = lowest(sys, n);
  auto keep = std::make_shared<const FemSystem>(sys);
  std::vector<MetricEigenpair> out;
  for (Eigen::Index j = 0; j < n; ++j) {
    MetricEigenpair p;
    p.lambda = d.values(j);
    p.coeffs = d.vectors.col(j);
    p.eval = [keep, c = p.coeffs](std::size_t e, double x) { return evaluate_on_edge(*keep, c, e, x); };
    out.push_back(std::move(p));
  }
  return out;
}

/// |Σ_{e∈E_v} p_e(v) f'_e(v)| per vertex, outgoing derivatives from the first cell.
inline std::vector<double> kirchhoff_residuals(const MetricGraph& g, const FemSystem& sys, const Vec& u) {
  std::vector<double> res(g.num_vertices(), 0.0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    double s = 0.0;
    for (const Incidence& inc : g.incident(v)) {
      const auto& xs = sys.edge_coords[inc.edge];
      const auto& ns = sys.edge_nodes[inc.edge];
      const DensitySpec& p = g.edges()[inc.edge].density;
      const std::size_t k = xs.size() - 1;
      if (inc.side == EdgeSide::Tail)
        s += p(0.0) * (u(ns[1]) - u(ns[0])) / (xs[1] - xs[0]);
      else
        s += p(xs[k]) * (u(ns[k - 1]) - u(ns[k])) / (xs[k] - xs[k - 1]);
    }
    res[v] = std::abs(s);
  }
  return res;
}

}  // namespace graphlike
