#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "graphlike/fem_system.hpp"
#include "graphlike/thin_mesh.hpp"

namespace graphlike {

/// Element matrices of P1 on one triangle. Throws on degenerate triangles.
inline void p1_element(const Point2& a, const Point2& b, const Point2& c, Eigen::Matrix3d& Ke, Eigen::Matrix3d& Me) {
  const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
  const double area = 0.5 * std::abs(area2);
  if (area < 1e-14) throw GraphError("assemble_neumann: degenerate triangle (area " + std::to_string(area) + ")");
  Eigen::Matrix<double, 2, 3> grad;
  grad << b.y() - c.y(), c.y() - a.y(), a.y() - b.y(), c.x() - b.x(), a.x() - c.x(), b.x() - a.x();
  grad /= area2;
  Ke = area * grad.transpose() * grad;
  Me = Eigen::Matrix3d::Constant(area / 12.0);
  Me.diagonal().array() += area / 12.0;
}

/// Flat P1 stiffness and mass on the listed triangles. Unused nodes are compressed away if `kept`
/// is given; it receives the map from new to old node ids.
inline FemSystem assemble_p1(const std::vector<Point2>& nodes, const std::vector<std::array<int, 3>>& tris,
                             const std::vector<int>* subset = nullptr, std::vector<int>* kept = nullptr) {
  std::vector<int> local(nodes.size(), -1);
  std::vector<int> back;
  auto each = [&](auto&& f) {
    if (subset)
      for (int t : *subset) f(tris[static_cast<std::size_t>(t)]);
    else
      for (const auto& T : tris) f(T);
  };
  if (kept) {
    each([&](const std::array<int, 3>& T) {
      for (int i : T)
        if (local[i] < 0) {
          local[i] = static_cast<int>(back.size());
          back.push_back(i);
        }
    });
    *kept = back;
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i) local[i] = static_cast<int>(i);
  }
  const Eigen::Index n = kept ? static_cast<Eigen::Index>(back.size()) : static_cast<Eigen::Index>(nodes.size());
  std::vector<Eigen::Triplet<double>> kt, mt;
  double hmax = 0.0;
  Eigen::Matrix3d Ke, Me;
  each([&](const std::array<int, 3>& T) {
    p1_element(nodes[T[0]], nodes[T[1]], nodes[T[2]], Ke, Me);
    for (int i = 0; i < 3; ++i) {
      hmax = std::max(hmax, (nodes[T[i]] - nodes[T[(i + 1) % 3]]).norm());
      for (int j = 0; j < 3; ++j) {
        kt.emplace_back(local[T[i]], local[T[j]], Ke(i, j));
        mt.emplace_back(local[T[i]], local[T[j]], Me(i, j));
      }
    }
  });
  SpMat K(n, n), M(n, n);
  K.setFromTriplets(kt.begin(), kt.end());
  M.setFromTriplets(mt.begin(), mt.end());
  return FemSystem(std::move(K), std::move(M), hmax);
}

/// Neumann Laplacian of X_ε: no boundary conditions are imposed.
inline FemSystem assemble_neumann(const ThinMesh& mesh) { return assemble_p1(mesh.nodes, mesh.triangles); }

/// Structured rectangle [0,Lx]×[0,Ly] with nx×ny quads split into triangles, all tagged as vertex 0.
inline ThinMesh rectangle_mesh(double Lx, double Ly, int nx, int ny) {
  ThinMesh m;
  m.eps = 1.0;
  detail::MeshBuilder B{m};
  std::vector<std::vector<int>> rows;
  for (int i = 0; i <= nx; ++i) {
    std::vector<int> row;
    for (int j = 0; j <= ny; ++j) row.push_back(B.add({Lx * i / nx, Ly * j / ny}));
    rows.push_back(std::move(row));
  }
  B.strip(rows, {RegionKind::Vertex, 0, false});
  m.vertex_triangles.assign(1, {});
  for (std::size_t t = 0; t < m.triangles.size(); ++t) m.vertex_triangles[0].push_back(static_cast<int>(t));
  return m;
}

struct VertexRegionCheck {
  double volume = 0.0;   // of the unscaled region U_v = ε⁻¹U_{ε,v}
  double lambda2 = 0.0;  // first non-zero Neumann eigenvalue of U_v
  std::size_t triangles = 0;
};

inline VertexRegionCheck vertex_region_checks(const ThinMesh& mesh, std::size_t v) {
  if (v >= mesh.vertex_triangles.size() || mesh.vertex_triangles[v].empty())
    throw GraphError("vertex_region_checks: no region for vertex index " + std::to_string(v));
  const std::vector<int>& tris = mesh.vertex_triangles[v];
  if (tris.size() < 10)
    throw GraphError("vertex_region_checks: region has only " + std::to_string(tris.size()) +
                     " triangles; refine the mesh (larger h_rel) to get at least 10");
  std::vector<Point2> scaled(mesh.nodes.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = mesh.nodes[i] / mesh.eps;
  std::vector<int> back;
  const FemSystem sys = assemble_p1(scaled, mesh.triangles, &tris, &back);
  VertexRegionCheck out;
  out.triangles = tris.size();
  out.volume = Vec::Ones(sys.dim()).dot(sys.M() * Vec::Ones(sys.dim()));
  const Vec ev = generalized_eig(Mat(sys.K()), Mat(sys.M()), false).values;
  out.lambda2 = ev.size() > 1 ? ev(1) : 0.0;
  return out;
}

}  // namespace graphlike
