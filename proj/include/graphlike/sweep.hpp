#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphlike/bounds.hpp"
#include "graphlike/identification.hpp"
#include "graphlike/kirchhoff.hpp"
#include "graphlike/neumann.hpp"

namespace graphlike {

struct SweepPoint {
  double eps = 0.0;
  Eigen::Index graph_dofs = 0, manifold_dofs = 0;
  DeltaReport delta;
  std::vector<CheckResult> resolvent;  // powers 1..3
  double dbar = 0.0;
  std::optional<EigenvectorCheck> eigvec;
  std::vector<double> manifold_eigs, graph_eigs, errors;
};

/// First simple eigenvalue above the bottom of the spectrum, with an isolating interval from the midpoints.
struct SimpleMode {
  Eigen::Index index = -1;
  double lo = 0.0, hi = 0.0;
};

inline SimpleMode first_simple_mode(const std::vector<double>& sorted) {
  const std::vector<int> mult = cluster_multiplicities(sorted, 1e-4);
  for (std::size_t i = 1; i + 1 < sorted.size(); ++i)
    if (mult[i] == 1)
      return {static_cast<Eigen::Index>(i), 0.5 * (sorted[i - 1] + sorted[i]), 0.5 * (sorted[i] + sorted[i + 1])};
  return {};
}

/// Everything measured for the pair (graph, X_ε) at one ε. `reference` are the graph eigenvalues
/// against which the manifold eigenvalues are compared.
inline SweepPoint run_sweep_point(const EmbeddedGraph& eg, double eps, int h_rel, const std::vector<double>& reference,
                                  double lambda_max, ThinMesh* mesh_out = nullptr) {
  SweepPoint pt;
  pt.eps = eps;
  ThinMesh mesh;
  try {
    mesh = build_thin_mesh(eg, eps, h_rel);
  } catch (const GraphError& e) {
    throw GraphError(std::string(e.what()) + " (eps = " + std::to_string(eps) + ")");
  }
  const FemSystem manifold = assemble_neumann(mesh);
  const FemSystem graph = build_pair_graph_system(eg, mesh);
  const IdentificationSet ids = build_identification(graph, mesh, manifold, eps);
  const ScaledSpace H(graph), Ht(manifold);
  pt.graph_dofs = H.dim();
  pt.manifold_dofs = Ht.dim();
  pt.delta = measure_closeness(H, Ht, ids);
  pt.resolvent = verify_resolvent(H, Ht, ids, pt.delta.delta);
  pt.dbar = spectral_distance(H, Ht, lambda_max);
  const SimpleMode mode = first_simple_mode(to_std(H.values().head(std::min<Eigen::Index>(H.dim(), 16))));
  if (mode.index >= 0) pt.eigvec = eigenvector_closeness(H, Ht, ids, mode.index, mode.lo, mode.hi, pt.delta.delta, 1e-9);
  for (std::size_t k = 0; k < reference.size() && static_cast<Eigen::Index>(k) < Ht.dim(); ++k) {
    pt.manifold_eigs.push_back(Ht.values()(static_cast<Eigen::Index>(k)));
    pt.graph_eigs.push_back(reference[k]);
    pt.errors.push_back(std::abs(pt.manifold_eigs.back() - reference[k]));
  }
  if (mesh_out) *mesh_out = std::move(mesh);
  return pt;
}

}  // namespace graphlike
