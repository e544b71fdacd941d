#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "graphlike/kirchhoff.hpp"
#include "graphlike/neumann.hpp"
#include "graphlike/thin_mesh.hpp"

namespace graphlike {

/// J, J₁: graph DOFs → manifold DOFs. J′, J₁′: manifold DOFs → graph DOFs.
/// `extension` is the nodal ε^{-1/2}f_e(x) on edge grids (0 elsewhere), of which J′ is an exact left inverse.
struct IdentificationSet {
  Mat J, J1, Jp, J1p;
  Mat extension;
  int k = 1;
  double eps = 0.0;
};

/// Graph FEM matched to the mesh: p_e = r_e and one graph node per cross-line of the edge grid.
inline FemSystem build_pair_graph_system(const EmbeddedGraph& eg, const ThinMesh& mesh) {
  if (mesh.edges.size() != eg.graph().num_edges()) throw GraphError("build_pair_graph_system: mesh does not belong to this graph");
  std::vector<int> cells;
  for (const EdgeGrid& G : mesh.edges) cells.push_back(G.cells_along);
  return assemble_kirchhoff_cells(eg.weighted_graph(), cells);
}

/// The ε-scaled maps of the graph/manifold pair, discretised in the P1 spaces.
/// Graph coordinate x on edge e corresponds to the axial position εℓ₀/2 + c_e x, c_e = 1 - εℓ₀/ℓ_e.
/// J is the mass projection of ε^{-1/2} f_e(x)·1_{U_e}; J′ is the transversal average tested
/// against graph hats, so that J′ is the adjoint of J up to the factor c_e.
inline IdentificationSet build_identification(const FemSystem& graph, const ThinMesh& mesh, const FemSystem& manifold,
                                              double eps) {
  if (std::abs(eps - mesh.eps) > 1e-12 * eps)
    throw GraphError("build_identification: eps " + std::to_string(eps) + " does not match the mesh eps " + std::to_string(mesh.eps));
  const Eigen::Index n = graph.dim(), nt = manifold.dim();
  if (nt != static_cast<Eigen::Index>(mesh.nodes.size())) throw GraphError("build_identification: manifold system does not match the mesh");
  if (mesh.tags.size() != mesh.triangles.size()) throw GraphError("build_identification: untagged triangles");
  const std::size_t ne = mesh.edges.size();
  if (graph.edge_nodes.size() != ne) throw GraphError("build_identification: graph and mesh have different edge counts");
  for (std::size_t e = 0; e < ne; ++e)
    if (graph.edge_nodes[e].size() != mesh.edges[e].nodes.size())
      throw GraphError("build_identification: edge " + std::to_string(e) + " has a different number of nodes in graph and mesh");

  // E: node of an edge grid → graph DOF over its cross-line; -1 for vertex-only nodes
  std::vector<Eigen::Index> over(mesh.nodes.size(), -1);
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t i = 0; i < mesh.edges[e].nodes.size(); ++i)
      for (int id : mesh.edges[e].nodes[i]) over[id] = graph.edge_nodes[e][i];
  std::vector<int> region(mesh.nodes.size(), -1);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    if (mesh.tags[t].kind == RegionKind::Vertex)
      for (int id : mesh.triangles[t]) region[id] = mesh.tags[t].index;
  for (std::size_t id = 0; id < mesh.nodes.size(); ++id)
    if (over[id] < 0 && region[id] < 0) throw GraphError("build_identification: node " + std::to_string(id) + " lies in no region");

  const double se = std::sqrt(eps);
  std::vector<std::vector<int>> edge_tris(ne);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    if (mesh.tags[t].kind == RegionKind::Edge) edge_tris[static_cast<std::size_t>(mesh.tags[t].index)].push_back(static_cast<int>(t));

  SpMat E(nt, n);
  {
    std::vector<Eigen::Triplet<double>> tr;
    for (std::size_t id = 0; id < mesh.nodes.size(); ++id)
      if (over[id] >= 0) tr.emplace_back(static_cast<int>(id), static_cast<int>(over[id]), 1.0);
    E.setFromTriplets(tr.begin(), tr.end());
  }

  SpMat Medge(nt, nt), B(n, nt);
  for (std::size_t e = 0; e < ne; ++e) {
    const SpMat Me = assemble_p1(mesh.nodes, mesh.triangles, &edge_tris[e]).M();
    const double ell = graph.edge_coords[e].back();
    const double c = 1.0 - 2.0 * mesh.offset / ell;
    Medge += Me;
    B += SpMat((E.transpose() * Me) / c);
  }

  IdentificationSet out;
  out.k = 1;
  out.eps = eps;
  Eigen::SimplicialLDLT<SpMat> mt(manifold.M());
  Eigen::SimplicialLDLT<SpMat> mg(graph.M());
  if (mt.info() != Eigen::Success || mg.info() != Eigen::Success) throw SolverError("build_identification: mass matrix factorization failed");
  out.J = mt.solve(Mat(Medge * E)) / se;
  out.Jp = mg.solve(Mat(B)) / se;

  out.extension = Mat(E) / se;
  out.J1 = Mat::Zero(nt, n);
  for (std::size_t id = 0; id < mesh.nodes.size(); ++id)
    out.J1(static_cast<Eigen::Index>(id), over[id] >= 0 ? over[id] : region[id]) = 1.0 / se;

  // vertex means C_v as row vectors
  const std::size_t nv = mesh.vertex_triangles.size();
  Mat C = Mat::Zero(static_cast<Eigen::Index>(nv), nt);
  for (std::size_t v = 0; v < nv; ++v) {
    if (mesh.vertex_triangles[v].empty()) throw GraphError("build_identification: vertex " + std::to_string(v) + " has no region");
    const SpMat Mv = assemble_p1(mesh.nodes, mesh.triangles, &mesh.vertex_triangles[v]).M();
    const Vec w = Mv * Vec::Ones(nt);
    C.row(static_cast<Eigen::Index>(v)) = w.transpose() / w.sum();
  }

  out.J1p = Mat::Zero(n, nt);
  for (std::size_t v = 0; v < nv; ++v) out.J1p.row(static_cast<Eigen::Index>(v)) = se * C.row(static_cast<Eigen::Index>(v));
  for (std::size_t e = 0; e < ne; ++e) {
    const EdgeGrid& G = mesh.edges[e];
    const auto& xs = graph.edge_coords[e];
    const double ell = xs.back();
    const double a = std::min(1.0, ell / 2.0);
    auto average = [&](std::size_t i) {
      Vec row = Vec::Zero(nt);
      const int h = G.cells_across;
      for (int j = 0; j <= h; ++j) row(G.nodes[i][static_cast<std::size_t>(j)]) += (j == 0 || j == h ? 0.5 : 1.0) / h;
      return row;
    };
    const Vec N0 = average(0), N1 = average(G.nodes.size() - 1);
    const Vec Ct = C.row(graph.edge_nodes[e].front()).transpose(), Ch = C.row(graph.edge_nodes[e].back()).transpose();
    for (std::size_t i = 1; i + 1 < G.nodes.size(); ++i) {
      const double x = xs[i];
      const double rm = std::max(0.0, 1.0 - x / a), rp = std::max(0.0, 1.0 - (ell - x) / a);
      out.J1p.row(graph.edge_nodes[e][i]) = se * (average(i) + rp * (Ch - N1) + rm * (Ct - N0)).transpose();
    }
  }
  return out;
}

}  // namespace graphlike
