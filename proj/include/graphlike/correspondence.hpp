#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "graphlike/discrete.hpp"
#include "graphlike/kirchhoff.hpp"

namespace graphlike {

inline std::vector<double> dirichlet_spectrum(double ell, double lambda_max) {
  if (!(ell > 0.0)) throw GraphError("dirichlet_spectrum: length must be positive");
  std::vector<double> out;
  for (int k = 1;; ++k) {
    const double v = std::pow(k * std::numbers::pi / ell, 2);
    if (v > lambda_max) break;
    out.push_back(v);
  }
  return out;
}

inline double g_map(double lambda, double ell) {
  if (lambda < 0.0) throw GraphError("g_map: lambda must be non-negative");
  return 1.0 - std::cos(ell * std::sqrt(lambda));
}

/// All λ ∈ (0, λmax] with g(λ) = μ, ascending.
inline std::vector<double> mu_preimages(double mu, double ell, double lambda_max) {
  if (!(mu > 0.0 && mu < 2.0)) throw GraphError("mu_preimages: mu must lie strictly inside (0, 2)");
  if (!(ell > 0.0)) throw GraphError("mu_preimages: length must be positive");
  const double a = std::acos(1.0 - mu);
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double base = 2.0 * k * std::numbers::pi;
    const double lo = std::pow((base - a) / ell, 2);
    if (k > 0 && lo > lambda_max) break;
    if (k > 0) out.push_back(lo);
    const double hi = std::pow((base + a) / ell, 2);
    if (hi <= lambda_max) out.push_back(hi);
  }
  return out;
}

struct CorrespondenceValue {
  double lambda = 0.0;
  double mu = 0.0;
  int multiplicity = 1;
};

/// Preimages of the discrete spectrum inside (0, 2); spectral values at 0 and 2 map to Σ^Dir and are dropped.
inline std::vector<CorrespondenceValue> correspondence_from_spectrum(const std::vector<SpectrumEntry>& discrete,
                                                                     double ell, double lambda_max,
                                                                     double endpoint_tol = 1e-9) {
  std::vector<CorrespondenceValue> out;
  for (const SpectrumEntry& s : discrete) {
    if (s.value <= endpoint_tol || s.value >= 2.0 - endpoint_tol) continue;
    for (double l : mu_preimages(s.value, ell, lambda_max)) out.push_back({l, s.value, s.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  return out;
}

/// Requires deg v ≥ 2 and no loops.
inline std::vector<CorrespondenceValue> metric_spectrum_via_correspondence(const DiscreteGraph& g, double ell,
                                                                           double lambda_max) {
  for (auto [a, b] : g.edges)
    if (a == b) throw GraphError("correspondence: self-loop present");
  const std::vector<int> deg = g.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (deg[v] < 2) throw GraphError("correspondence: vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]) + " < 2");
  return correspondence_from_spectrum(discrete_spectrum(discrete_laplacian(g)), ell, lambda_max);
}

/// sqrt(Σ_v deg v |a(v)|²)
inline double weighted_norm(const DiscreteGraph& g, const Vec& a) {
  const std::vector<int> deg = g.degrees();
  double s = 0.0;
  for (std::size_t v = 0; v < deg.size(); ++v) s += deg[v] * a(static_cast<Eigen::Index>(v)) * a(static_cast<Eigen::Index>(v));
  return std::sqrt(s);
}

/// (U_λ a)_e(x) = √2/(√ℓ sin(ℓ√λ)) (a(∂₋e) sin((ℓ-x)√λ) + a(∂₊e) sin(x√λ)) on an equilateral graph.
/// If `sys` is given the lift is also interpolated onto its DOFs.
inline MetricEigenpair lift_eigenvector(const MetricGraph& g, const Vec& a, double lambda, const FemSystem* sys = nullptr) {
  if (a.size() != static_cast<Eigen::Index>(g.num_vertices())) throw GraphError("lift_eigenvector: need one value per vertex");
  const double ell = g.edges().at(0).length;
  for (const EdgeRecord& r : g.edges())
    if (std::abs(r.length - ell) > 1e-12 * ell) throw GraphError("lift_eigenvector: graph is not equilateral");
  const double k = std::sqrt(lambda);
  const double s = std::sin(ell * k);
  if (std::abs(s) < 1e-8) throw GraphError("lift_eigenvector: lambda lies in the Dirichlet set");
  const double pref = std::sqrt(2.0) / (std::sqrt(ell) * s);
  std::vector<std::pair<double, double>> ends;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    ends.emplace_back(a(static_cast<Eigen::Index>(g.tail_index(e))), a(static_cast<Eigen::Index>(g.head_index(e))));
  MetricEigenpair out;
  out.lambda = lambda;
  out.eval = [ends, pref, k, ell](std::size_t e, double x) {
    return pref * (ends.at(e).first * std::sin((ell - x) * k) + ends.at(e).second * std::sin(x * k));
  };
  if (sys) {
    out.coeffs = Vec::Zero(sys->dim());
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      for (std::size_t i = 0; i < sys->edge_nodes[e].size(); ++i)
        out.coeffs(sys->edge_nodes[e][i]) = out.eval(e, sys->edge_coords[e][i]);
  }
  return out;
}

struct GapInterval {
  int k = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct TreeGaps {
  double omega0 = 0.0;
  std::vector<GapInterval> intervals;
};

/// I₀ = (0, ω₀²), I_k = ((kπ-ω₀)², (kπ)²) ∪ ((kπ)², (kπ+ω₀)²); unit edge length.
inline TreeGaps gap_intervals_tree(int d0, double lambda_max) {
  if (d0 < 3) throw GraphError("gap_intervals_tree: d0 must be at least 3");
  TreeGaps out;
  out.omega0 = std::acos(2.0 * std::sqrt(d0 - 1.0) / d0);
  const double w = out.omega0;
  out.intervals.push_back({0, 0.0, w * w});
  for (int k = 1;; ++k) {
    const double c = k * std::numbers::pi;
    if ((c - w) * (c - w) >= lambda_max) break;
    out.intervals.push_back({k, (c - w) * (c - w), c * c});
    out.intervals.push_back({k, c * c, (c + w) * (c + w)});
  }
  return out;
}

/// {0 with multiplicity |V|} ∪ {π²k²/ℓ_e²}, coinciding values merged.
inline std::vector<SpectrumEntry> decoupled_spectrum(const std::vector<double>& lengths, double lambda_max, int num_vertices) {
  std::vector<double> vals;
  for (double l : lengths) {
    if (!(l > 0.0) || std::isinf(l)) throw GraphError("decoupled_spectrum: lengths must be positive and finite");
    for (double v : dirichlet_spectrum(l, lambda_max)) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  std::vector<SpectrumEntry> out;
  if (num_vertices > 0) out.push_back({0.0, num_vertices});
  for (double v : vals) {
    if (!out.empty() && std::abs(out.back().value - v) <= 1e-12 * std::max(1.0, v))
      ++out.back().multiplicity;
    else
      out.push_back({v, 1});
  }
  return out;
}

}  // namespace graphlike
