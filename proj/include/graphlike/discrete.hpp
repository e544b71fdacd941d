#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "graphlike/graph.hpp"
#include "graphlike/linalg.hpp"

namespace graphlike {

/// S = I - D^{-1/2} A D^{-1/2}, similar to the degree-normalized Laplacian Δ_G.
struct SymmetrizedLaplacian {
  Mat S;
  Vec degrees;
  bool connected = true;
};

struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 1;
};

inline bool is_connected(const DiscreteGraph& g) {
  if (g.num_vertices == 0) return true;
  std::vector<std::vector<std::size_t>> adj(g.num_vertices);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(g.num_vertices, 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
  }
  return count == g.num_vertices;
}

/// Loops add 2 to the degree and 2 to the diagonal adjacency count; multi-edges add multiplicity.
inline SymmetrizedLaplacian discrete_laplacian(const DiscreteGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices);
  Mat A = Mat::Zero(n, n);
  for (auto [a, b] : g.edges) {
    if (a >= g.num_vertices || b >= g.num_vertices) throw GraphError("discrete_laplacian: edge endpoint out of range");
    const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
    if (i == j) {
      A(i, i) += 2.0;
    } else {
      A(i, j) += 1.0;
      A(j, i) += 1.0;
    }
  }
  SymmetrizedLaplacian L;
  L.degrees = A.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i)
    if (L.degrees(i) == 0.0) throw GraphError("discrete_laplacian: isolated vertex " + std::to_string(i));
  const Vec s = L.degrees.cwiseSqrt().cwiseInverse();
  L.S = Mat::Identity(n, n) - s.asDiagonal() * A * s.asDiagonal();
  L.connected = is_connected(g);
  return L;
}

/// D^{-1}(D - A): the non-symmetric form acting on functions on V.
inline Mat discrete_laplacian_unsymmetric(const DiscreteGraph& g) {
  const SymmetrizedLaplacian L = discrete_laplacian(g);
  const Vec s = L.degrees.cwiseSqrt();
  return s.cwiseInverse().asDiagonal() * L.S * s.asDiagonal();
}

inline Vec discrete_eigenvalues(const SymmetrizedLaplacian& L) { return symmetric_eig(L.S, false).values; }

/// Ascending spectrum with merged multiplicities (relative gap 1e-6).
inline std::vector<SpectrumEntry> discrete_spectrum(const SymmetrizedLaplacian& L) {
  const std::vector<double> vals = to_std(discrete_eigenvalues(L));
  const std::vector<int> mult = cluster_multiplicities(vals);
  std::vector<SpectrumEntry> out;
  for (std::size_t i = 0; i < vals.size(); i += static_cast<std::size_t>(mult[i])) {
    double mean = 0.0;
    for (int k = 0; k < mult[i]; ++k) mean += vals[i + static_cast<std::size_t>(k)];
    out.push_back({mean / mult[i], mult[i]});
  }
  return out;
}

inline std::pair<double, double> tree_band(int d0) {
  if (d0 < 3) throw GraphError("tree_band: d0 must be at least 3");
  const double w = 2.0 * std::sqrt(d0 - 1.0) / d0;
  return {1.0 - w, 1.0 + w};
}

inline double sierpinski_map(double z) { return z * (5.0 - 4.0 * z); }

struct SierpinskiValue {
  double z = 0.0;
  int level = 0;  // p^level(z) = 3/4; level -1 marks the value 3/2
};

/// D_n = {3/2} ∪ ⋃_{j≤n} p^{-j}{3/4}, real preimages only.
inline std::vector<SierpinskiValue> sierpinski_levels_tagged(int n_levels) {
  if (n_levels < 0) throw GraphError("sierpinski_levels: n_levels must be non-negative");
  std::vector<SierpinskiValue> out{{1.5, -1}, {0.75, 0}};
  std::vector<double> frontier{0.75};
  for (int j = 1; j <= n_levels; ++j) {
    std::vector<double> next;
    for (double w : frontier) {
      // 4z² - 5z + w = 0
      const double disc = 25.0 - 16.0 * w;
      if (disc < 0.0) continue;
      const double r = std::sqrt(disc);
      for (double z : {(5.0 - r) / 8.0, (5.0 + r) / 8.0}) {
        next.push_back(z);
        out.push_back({z, j});
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const SierpinskiValue& a, const SierpinskiValue& b) { return a.z < b.z; });
  std::vector<SierpinskiValue> uniq;
  for (const auto& v : out)
    if (uniq.empty() || std::abs(uniq.back().z - v.z) > 1e-12) uniq.push_back(v);
  return uniq;
}

inline std::vector<double> sierpinski_levels(int n_levels) {
  std::vector<double> out;
  for (const auto& v : sierpinski_levels_tagged(n_levels)) out.push_back(v.z);
  return out;
}

}  // namespace graphlike
