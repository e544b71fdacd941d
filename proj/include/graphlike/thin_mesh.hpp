#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "graphlike/embedding.hpp"

namespace graphlike {

enum class RegionKind { Edge, Vertex };

/// Region of a triangle: U_{ε,e} (index = edge index) or U_{ε,v} (index = vertex index).
/// Collar rectangles belong to their vertex region.
struct RegionTag {
  RegionKind kind = RegionKind::Edge;
  int index = 0;
  bool collar = false;
};

/// Structured grid of U_{ε,e}: nodes[i][j], i along the edge (cross-line i sits over graph node i),
/// j across from the -n_e side to the +n_e side.
struct EdgeGrid {
  int cells_along = 0;
  int cells_across = 0;
  std::vector<std::vector<int>> nodes;
  std::vector<double> axial;  // arclength position s_i of cross-line i
};

struct ThinMesh {
  std::vector<Point2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<RegionTag> tags;
  double eps = 0.0;
  double ell0 = 0.0;
  double offset = 0.0;  // εℓ₀/2, the shortening at each edge end
  std::vector<EdgeGrid> edges;
  std::vector<std::vector<int>> vertex_triangles;

  double triangle_area(std::size_t t) const {
    const auto& T = triangles[t];
    const Point2 a = nodes[T[1]] - nodes[T[0]], b = nodes[T[2]] - nodes[T[0]];
    return 0.5 * (a.x() * b.y() - a.y() * b.x());
  }

  double region_area(RegionKind kind, int index) const {
    double s = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t)
      if (tags[t].kind == kind && tags[t].index == index) s += triangle_area(t);
    return s;
  }

  std::size_t count_triangles(RegionKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(tags.begin(), tags.end(), [kind](const RegionTag& t) { return t.kind == kind; }));
  }
};

namespace detail {

struct MeshBuilder {
  ThinMesh& m;

  int add(const Point2& p) {
    m.nodes.push_back(p);
    return static_cast<int>(m.nodes.size()) - 1;
  }

  void tri(int a, int b, int c, RegionTag tag) {
    std::array<int, 3> T{a, b, c};
    const Point2 u = m.nodes[b] - m.nodes[a], w = m.nodes[c] - m.nodes[a];
    if (u.x() * w.y() - u.y() * w.x() < 0.0) std::swap(T[1], T[2]);
    m.triangles.push_back(T);
    m.tags.push_back(tag);
  }

  /// Quad grid between consecutive node rows, each row of equal length.
  void strip(const std::vector<std::vector<int>>& rows, RegionTag tag) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      for (std::size_t j = 0; j + 1 < rows[i].size(); ++j) {
        const int a = rows[i][j], b = rows[i + 1][j], c = rows[i + 1][j + 1], d = rows[i][j + 1];
        tri(a, b, c, tag);
        tri(a, c, d, tag);
      }
  }
};

inline int cells_for(double len, double h) { return std::max(1, static_cast<int>(std::ceil(len / h - 1e-9))); }

/// Separating-axis test of two oriented rectangles given by their four corners.
inline bool rectangles_overlap(const std::array<Point2, 4>& A, const std::array<Point2, 4>& B) {
  auto separated = [](const std::array<Point2, 4>& P, const std::array<Point2, 4>& Q) {
    for (int k = 0; k < 2; ++k) {
      const Point2 axis = rot90(P[k + 1] - P[k]);
      double pmin = kInfinity, pmax = -kInfinity, qmin = kInfinity, qmax = -kInfinity;
      for (const Point2& p : P) {
        pmin = std::min(pmin, axis.dot(p));
        pmax = std::max(pmax, axis.dot(p));
      }
      for (const Point2& q : Q) {
        qmin = std::min(qmin, axis.dot(q));
        qmax = std::max(qmax, axis.dot(q));
      }
      if (pmax <= qmin || qmax <= pmin) return true;
    }
    return false;
  };
  return !separated(A, B) && !separated(B, A);
}

}  // namespace detail

/// Thin ε-neighbourhood of a planar graph with straight edges.
/// Edge regions are structured grids with `h_rel` cells across the width εr_e and cells of
/// length at most twice the cross spacing. Degree-one vertices get a cap rectangle of depth εℓ₀/2.
/// Higher-degree vertices get a collar rectangle per edge end plus a central polygon, bounded by the
/// collar ends and the intersections of neighbouring tube sides, meshed in rings around the vertex.
inline ThinMesh build_thin_mesh(const EmbeddedGraph& eg, double eps, int h_rel) {
  if (!(eps > 0.0)) throw GraphError("build_thin_mesh: eps must be positive");
  if (h_rel < 1) throw GraphError("build_thin_mesh: h_rel must be at least 1");
  if (!eg.all_straight()) throw GraphError("build_thin_mesh: only straight edges can be meshed");
  const MetricGraph& g = eg.graph();
  ThinMesh m;
  m.eps = eps;
  m.ell0 = eg.ell0();
  m.offset = eps * m.ell0 / 2.0;
  detail::MeshBuilder B{m};

  const std::size_t ne = g.num_edges();
  std::vector<Point2> tan(ne), nor(ne);
  double r_min = kInfinity;
  for (std::size_t e = 0; e < ne; ++e) {
    tan[e] = eg.curve(e).tangent(0.0);
    nor[e] = rot90(tan[e]);
    const double l = g.edges()[e].length;
    r_min = std::min(r_min, eg.radius(e).min_on(0.0, l));
    if (!(l > 2.0 * m.offset)) throw GraphError("build_thin_mesh: eps too large, edge " + std::to_string(g.edges()[e].id) + " vanishes");
  }
  const double h_across = eps * r_min / h_rel;

  // overlap of non-incident tubes
  for (std::size_t a = 0; a < ne; ++a)
    for (std::size_t b = a + 1; b < ne; ++b) {
      const std::size_t ta = g.tail_index(a), ha = g.head_index(a), tb = g.tail_index(b), hb = g.head_index(b);
      if (ta == tb || ta == hb || ha == tb || ha == hb) continue;
      auto rect = [&](std::size_t e) {
        const Point2 p0 = eg.position(g.tail_index(e)), p1 = eg.position(g.head_index(e));
        const double w = eps * eg.radius(e).max_on(0.0, g.edges()[e].length) / 2.0;
        return std::array<Point2, 4>{p0 - w * nor[e], p1 - w * nor[e], p1 + w * nor[e], p0 + w * nor[e]};
      };
      if (detail::rectangles_overlap(rect(a), rect(b)))
        throw GraphError("build_thin_mesh: tubes of edges " + std::to_string(g.edges()[a].id) + " and " +
                         std::to_string(g.edges()[b].id) + " overlap at eps = " + std::to_string(eps));
    }

  // edge grids
  m.edges.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const double l = g.edges()[e].length;
    const DensitySpec& r = eg.radius(e);
    const Point2 p0 = eg.position(g.tail_index(e));
    EdgeGrid& G = m.edges[e];
    G.cells_across = h_rel;
    const double w_min = eps * r.min_on(0.0, l);
    G.cells_along = detail::cells_for(l - 2.0 * m.offset, 2.0 * w_min / h_rel);
    for (int i = 0; i <= G.cells_along; ++i) {
      const double s = m.offset + (l - 2.0 * m.offset) * i / G.cells_along;
      G.axial.push_back(s);
      std::vector<int> row;
      for (int j = 0; j <= h_rel; ++j) {
        const double y = static_cast<double>(j) / h_rel - 0.5;
        row.push_back(B.add(p0 + s * tan[e] + eps * r(s) * y * nor[e]));
      }
      G.nodes.push_back(std::move(row));
    }
    B.strip(G.nodes, {RegionKind::Edge, static_cast<int>(e), false});
  }

  // vertex regions
  m.vertex_triangles.assign(g.num_vertices(), {});
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const std::size_t first_tri = m.triangles.size();
    const Point2 pv = eg.position(v);
    const RegionTag vtag{RegionKind::Vertex, static_cast<int>(v), false};
    const RegionTag ctag{RegionKind::Vertex, static_cast<int>(v), true};
    struct End {
      std::size_t edge;
      EdgeSide side;
      Point2 d, n;         // outgoing direction and its left normal
      double w;            // tube width at the vertex
      std::vector<int> outer;  // edge-grid cross-line at axial εℓ₀/2, ordered from -n to +n
    };
    std::vector<End> ends;
    for (const Incidence& inc : g.incident(v)) {
      End E;
      E.edge = inc.edge;
      E.side = inc.side;
      const double l = g.edges()[inc.edge].length;
      const bool tail = inc.side == EdgeSide::Tail;
      E.d = tail ? tan[inc.edge] : Point2(-tan[inc.edge]);
      E.n = rot90(E.d);
      E.w = eps * eg.radius(inc.edge)(tail ? 0.0 : l);
      const EdgeGrid& G = m.edges[inc.edge];
      E.outer = tail ? G.nodes.front() : G.nodes.back();
      if (!tail) std::reverse(E.outer.begin(), E.outer.end());
      ends.push_back(std::move(E));
    }

    if (ends.size() == 1) {
      const End& E = ends[0];
      const int n_cap = detail::cells_for(m.offset, 2.0 * h_across);
      std::vector<std::vector<int>> rows;
      for (int i = 0; i < n_cap; ++i) {
        const double t = m.offset * i / n_cap;
        std::vector<int> row;
        for (int j = 0; j <= h_rel; ++j)
          row.push_back(B.add(pv + t * E.d + E.w * (static_cast<double>(j) / h_rel - 0.5) * E.n));
        rows.push_back(std::move(row));
      }
      rows.push_back(E.outer);
      B.strip(rows, vtag);
    } else {
      std::sort(ends.begin(), ends.end(), [](const End& a, const End& b) {
        return std::atan2(a.d.y(), a.d.x()) < std::atan2(b.d.y(), b.d.x());
      });
      const std::size_t k = ends.size();
      // corner between ends[i] (+n side) and ends[i+1] (-n side)
      std::vector<bool> has_corner(k, true);
      std::vector<Point2> corner(k);
      std::vector<double> collar_start(k, m.offset / 4.0);
      for (std::size_t i = 0; i < k; ++i) {
        const End& a = ends[i];
        const End& b = ends[(i + 1) % k];
        const Point2 pa = pv + 0.5 * a.w * a.n, pb = pv - 0.5 * b.w * b.n;
        const double cross = a.d.x() * b.d.y() - a.d.y() * b.d.x();
        const double angle = std::acos(std::clamp(a.d.dot(b.d), -1.0, 1.0));
        if (std::abs(cross) < 1e-12 && a.d.dot(b.d) < 0.0) {
          if (std::abs(a.w - b.w) > 1e-12 * std::max(a.w, b.w))
            throw GraphError("build_thin_mesh: opposite edges of different width at vertex " + std::to_string(g.vertices()[v]));
          has_corner[i] = false;
          continue;
        }
        if (angle < 1e-9) throw GraphError("build_thin_mesh: coincident edge directions at vertex " + std::to_string(g.vertices()[v]));
        // pa + t a.d = pb + s b.d
        Eigen::Matrix2d A;
        A << a.d, -b.d;
        const Eigen::Vector2d ts = A.colPivHouseholderQr().solve(pb - pa);
        corner[i] = pa + ts(0) * a.d;
        const double axial_a = (corner[i] - pv).dot(a.d), axial_b = (corner[i] - pv).dot(b.d);
        if (std::max(axial_a, axial_b) >= m.offset)
          throw GraphError("build_thin_mesh: tubes overlap beyond the vertex neighbourhood of vertex " +
                           std::to_string(g.vertices()[v]) + " at eps = " + std::to_string(eps) +
                           " (angle too small for the radii)");
        collar_start[i] = std::max(collar_start[i], axial_a);
        collar_start[(i + 1) % k] = std::max(collar_start[(i + 1) % k], axial_b);
      }

      // collars; neighbouring inner lines share their end node when the corner sits exactly there
      const double tiny = 1e-9 * h_across;
      auto collar_point = [&](std::size_t i, double t, int j) {
        const End& E = ends[i];
        return Point2(pv + t * E.d + E.w * (static_cast<double>(j) / h_rel - 0.5) * E.n);
      };
      std::vector<std::vector<int>> inner(k, std::vector<int>(static_cast<std::size_t>(h_rel) + 1, -1));
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t prev = (i + k - 1) % k;
        for (int j = 0; j <= h_rel; ++j) {
          const Point2 p = collar_point(i, collar_start[i], j);
          if (j == 0 && i > 0 && (m.nodes[inner[prev].back()] - p).norm() < tiny) {
            inner[i][0] = inner[prev].back();
            continue;
          }
          if (j == h_rel && i + 1 == k && inner[0][0] >= 0 && (m.nodes[inner[0][0]] - p).norm() < tiny) {
            inner[i][static_cast<std::size_t>(j)] = inner[0][0];
            continue;
          }
          inner[i][static_cast<std::size_t>(j)] = B.add(p);
        }
      }
      for (std::size_t i = 0; i < k; ++i) {
        const double a0 = collar_start[i];
        const int nc = detail::cells_for(m.offset - a0, 2.0 * h_across);
        std::vector<std::vector<int>> rows{inner[i]};
        for (int c = 1; c < nc; ++c) {
          std::vector<int> row;
          for (int j = 0; j <= h_rel; ++j) row.push_back(B.add(collar_point(i, a0 + (m.offset - a0) * c / nc, j)));
          rows.push_back(std::move(row));
        }
        rows.push_back(ends[i].outer);
        B.strip(rows, ctag);
      }

      // central polygon boundary, counter-clockwise
      std::vector<Point2> poly;
      std::vector<int> poly_ids;
      auto push = [&](const Point2& p, int id) {
        if (id >= 0 && !poly_ids.empty() && poly_ids.back() == id) return;
        poly.push_back(p);
        poly_ids.push_back(id);
      };
      auto add_path = [&](const Point2& from, const Point2& to) {
        const int n = detail::cells_for((to - from).norm(), h_across);
        for (int s = 1; s < n; ++s) push(from + (to - from) * (static_cast<double>(s) / n), -1);
      };
      for (std::size_t i = 0; i < k; ++i) {
        for (int id : inner[i]) push(m.nodes[id], id);
        const Point2 q_from = m.nodes[inner[i].back()];
        const Point2 q_to = m.nodes[inner[(i + 1) % k].front()];
        if (has_corner[i] && (corner[i] - q_from).norm() > tiny && (corner[i] - q_to).norm() > tiny) {
          add_path(q_from, corner[i]);
          push(corner[i], -1);
          add_path(corner[i], q_to);
        } else {
          add_path(q_from, q_to);
        }
      }
      if (poly_ids.size() > 1 && poly_ids.back() >= 0 && poly_ids.back() == poly_ids.front()) {
        poly.pop_back();
        poly_ids.pop_back();
      }
      const std::size_t np = poly.size();
      double rmax = 0.0;
      for (std::size_t i = 0; i < np; ++i) {
        const Point2 a = poly[i] - pv, b = poly[(i + 1) % np] - pv;
        if (a.x() * b.y() - a.y() * b.x() <= 0.0)
          throw GraphError("build_thin_mesh: vertex region of vertex " + std::to_string(g.vertices()[v]) +
                           " is not star-shaped around the vertex");
        rmax = std::max(rmax, a.norm());
      }
      for (std::size_t i = 0; i < np; ++i)
        if (poly_ids[i] < 0) poly_ids[i] = B.add(poly[i]);
      const int rings = detail::cells_for(rmax, h_across);
      const int center = B.add(pv);
      std::vector<std::vector<int>> ring(static_cast<std::size_t>(rings) + 1);
      for (int q = 1; q < rings; ++q)
        for (std::size_t i = 0; i < np; ++i)
          ring[q].push_back(B.add(pv + (poly[i] - pv) * (static_cast<double>(q) / rings)));
      ring[rings] = poly_ids;
      for (std::size_t i = 0; i < np; ++i) B.tri(center, ring[1][i], ring[1][(i + 1) % np], vtag);
      for (int q = 1; q < rings; ++q)
        for (std::size_t i = 0; i < np; ++i) {
          const std::size_t j = (i + 1) % np;
          B.tri(ring[q][i], ring[q + 1][i], ring[q + 1][j], vtag);
          B.tri(ring[q][i], ring[q + 1][j], ring[q][j], vtag);
        }
    }
    for (std::size_t t = first_tri; t < m.triangles.size(); ++t) m.vertex_triangles[v].push_back(static_cast<int>(t));
  }
  return m;
}

/// "x y" per node, then "i j k tag" per triangle with tags e<edge id>, v<vertex id>, c<vertex id> (collar).
inline void write_mesh(std::ostream& os, const ThinMesh& m, const MetricGraph& g) {
  char buf[64];
  os << m.nodes.size() << ' ' << m.triangles.size() << '\n';
  for (const Point2& p : m.nodes) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g\n", p.x(), p.y());
    os << buf;
  }
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const RegionTag& tag = m.tags[t];
    const char kind = tag.kind == RegionKind::Edge ? 'e' : (tag.collar ? 'c' : 'v');
    const int id = tag.kind == RegionKind::Edge ? g.edges()[tag.index].id : g.vertices()[tag.index];
    os << m.triangles[t][0] << ' ' << m.triangles[t][1] << ' ' << m.triangles[t][2] << ' ' << kind << id << '\n';
  }
}

}  // namespace graphlike
