#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "graphlike/graph.hpp"

namespace graphlike {

using Point2 = Eigen::Vector2d;

inline Point2 rot90(const Point2& d) { return {-d.y(), d.x()}; }

/// Arclength-parameterized polyline.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Point2> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw GraphError("embedding: a curve needs at least two points");
    cum_.assign(pts_.size(), 0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      const double seg = (pts_[i] - pts_[i - 1]).norm();
      if (!(seg > 0.0)) throw GraphError("embedding: repeated polyline point");
      cum_[i] = cum_[i - 1] + seg;
    }
  }

  const std::vector<Point2>& points() const { return pts_; }
  double arclength() const { return cum_.back(); }
  bool straight() const {
    if (pts_.size() == 2) return true;
    const Point2 d = (pts_.back() - pts_.front()).normalized();
    for (const Point2& p : pts_)
      if (std::abs(rot90(d).dot(p - pts_.front())) > 1e-12) return false;
    return true;
  }

  Point2 point(double s) const {
    const std::size_t i = segment(s);
    const double t = (s - cum_[i]) / (cum_[i + 1] - cum_[i]);
    return (1.0 - t) * pts_[i] + t * pts_[i + 1];
  }

  Point2 tangent(double s) const {
    const std::size_t i = segment(s);
    return (pts_[i + 1] - pts_[i]).normalized();
  }

  /// Discrete curvature at a polyline node: signed turning angle over the mean adjacent segment length.
  double curvature(double s) const {
    if (pts_.size() < 3) return 0.0;
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < pts_.size(); ++i)
      if (std::abs(cum_[i] - s) < std::abs(cum_[best] - s)) best = i;
    return node_curvature(best);
  }

  double max_abs_curvature() const {
    double k = 0.0;
    for (std::size_t i = 1; i + 1 < pts_.size(); ++i) k = std::max(k, std::abs(node_curvature(i)));
    return k;
  }

 private:
  std::size_t segment(double s) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    return std::min(i, pts_.size() - 2);
  }

  double node_curvature(std::size_t i) const {
    const Point2 a = pts_[i] - pts_[i - 1];
    const Point2 b = pts_[i + 1] - pts_[i];
    const double turn = std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    return turn / (0.5 * (a.norm() + b.norm()));
  }

  std::vector<Point2> pts_;
  std::vector<double> cum_;
};

/// Planar realization ψ_e of a finite metric graph with tube radii r_e.
class EmbeddedGraph {
 public:
  /// `curves` may be empty, in which case every edge is the straight segment between its vertices.
  EmbeddedGraph(MetricGraph g, std::vector<Point2> positions, std::vector<DensitySpec> radii,
                std::vector<Polyline> curves = {})
      : graph_(std::move(g)), pos_(std::move(positions)), radii_(std::move(radii)), curves_(std::move(curves)) {
    if (pos_.size() != graph_.num_vertices()) throw GraphError("embedding: need one position per vertex");
    if (radii_.size() != graph_.num_edges()) throw GraphError("embedding: need one radius per edge");
    if (curves_.empty()) {
      for (std::size_t e = 0; e < graph_.num_edges(); ++e) {
        if (graph_.edges()[e].is_lead()) throw GraphError("embedding: leads cannot be embedded");
        const Point2& a = pos_[graph_.tail_index(e)];
        const Point2& b = pos_[graph_.head_index(e)];
        curves_.emplace_back(std::vector<Point2>{a, b});
      }
    }
    if (curves_.size() != graph_.num_edges()) throw GraphError("embedding: need one curve per edge");
    for (std::size_t e = 0; e < graph_.num_edges(); ++e) {
      const EdgeRecord& rec = graph_.edges()[e];
      const std::string tag = "embedding: edge " + std::to_string(rec.id);
      if (rec.is_lead()) throw GraphError(tag + " is a lead");
      const Polyline& c = curves_[e];
      if ((c.points().front() - pos_[graph_.tail_index(e)]).norm() > 1e-8 ||
          (c.points().back() - pos_[graph_.head_index(e)]).norm() > 1e-8)
        throw GraphError(tag + ": curve endpoints do not match the vertex positions");
      if (std::abs(c.arclength() - rec.length) > 1e-6)
        throw GraphError(tag + ": declared length " + std::to_string(rec.length) +
                         " differs from the curve arclength " + std::to_string(c.arclength()));
    }
  }

  const MetricGraph& graph() const { return graph_; }
  const Point2& position(std::size_t v) const { return pos_.at(v); }
  const DensitySpec& radius(std::size_t e) const { return radii_.at(e); }
  const Polyline& curve(std::size_t e) const { return curves_.at(e); }
  bool all_straight() const {
    return std::all_of(curves_.begin(), curves_.end(), [](const Polyline& c) { return c.straight(); });
  }

  /// Unit tangent pointing away from the vertex at the given end of e.
  Point2 outgoing_tangent(std::size_t e, EdgeSide side) const {
    const Polyline& c = curves_[e];
    return side == EdgeSide::Tail ? c.tangent(0.0) : Point2(-c.tangent(c.arclength()));
  }

  /// ℓ₀ used for the vertex neighbourhoods: min{1, min_e ℓ_e}.
  double ell0() const {
    double l = 1.0;
    for (const EdgeRecord& r : graph_.edges()) l = std::min(l, r.length);
    return l;
  }

  /// The weighted metric graph with p_e := r_e.
  MetricGraph weighted_graph() const {
    std::vector<EdgeRecord> es = graph_.edges();
    for (std::size_t e = 0; e < es.size(); ++e) es[e].density = radii_[e];
    return MetricGraph(graph_.vertices(), std::move(es));
  }

 private:
  MetricGraph graph_;
  std::vector<Point2> pos_;
  std::vector<DensitySpec> radii_;
  std::vector<Polyline> curves_;
};

// ---------------------------------------------------------------------------
// Embedding regularity: angles, curvature, lengths, radii

struct EmbeddingBounds {
  double beta0 = 0.0;
  double kappa0 = 0.0;
  double ell0 = 0.0;
  double r_minus = 0.0;
  double r_plus = 0.0;
  double rdot0 = 0.0;
};

struct EmbeddingReport {
  double min_angle = std::numbers::pi;
  double max_curvature = 0.0;
  double min_length = kInfinity;
  double min_radius_near_vertex = kInfinity;
  double max_radius = 0.0;
  double max_radius_slope = 0.0;
  bool angle_ok = false;      // also needs tan(β₀/2) > r₊/ℓ₀
  bool curvature_ok = false;
  bool length_ok = false;     // length and radius near vertices
  bool radius_ok = false;     // radius slope and upper bound
  bool ok() const { return angle_ok && curvature_ok && length_ok && radius_ok; }
};

inline EmbeddingReport check_embedding(const EmbeddedGraph& eg, const EmbeddingBounds& b) {
  EmbeddingReport rep;
  const MetricGraph& g = eg.graph();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        const Point2 a = eg.outgoing_tangent(inc[i].edge, inc[i].side);
        const Point2 c = eg.outgoing_tangent(inc[j].edge, inc[j].side);
        rep.min_angle = std::min(rep.min_angle, std::acos(std::clamp(a.dot(c), -1.0, 1.0)));
      }
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const double l = g.edges()[e].length;
    const DensitySpec& r = eg.radius(e);
    rep.max_curvature = std::max(rep.max_curvature, eg.curve(e).max_abs_curvature());
    rep.min_length = std::min(rep.min_length, l);
    const double zone = std::min(1.0, l / 2.0);
    rep.min_radius_near_vertex =
        std::min({rep.min_radius_near_vertex, r.min_on(0.0, zone), r.min_on(l - zone, l)});
    rep.max_radius = std::max(rep.max_radius, r.max_on(0.0, l));
    for (std::size_t i = 1; i < r.xs().size(); ++i)
      rep.max_radius_slope = std::max(rep.max_radius_slope, std::abs(r.derivative(r.xs()[i - 1])));
  }
  rep.angle_ok = rep.min_angle >= b.beta0 && std::tan(b.beta0 / 2.0) > b.r_plus / b.ell0;
  rep.curvature_ok = rep.max_curvature <= b.kappa0;
  rep.length_ok = rep.min_length >= b.ell0 && rep.min_radius_near_vertex >= b.r_minus;
  rep.radius_ok = rep.max_radius_slope <= b.rdot0 && rep.max_radius <= b.r_plus;
  return rep;
}

// ---------------------------------------------------------------------------
// Metric of U_{ε,e} in the coordinates (x, y) ∈ (0, ℓ_e) × [-1/2, 1/2]

/// Local data of one edge: ψ_e is only seen through its signed curvature.
struct EdgeProfile {
  double length = 1.0;
  std::function<double(double)> curvature = [](double) { return 0.0; };
  DensitySpec radius = DensitySpec::constant(1.0);
};

struct MetricPoint {
  double x = 0.0;
  double y = 0.0;
  Eigen::Matrix2d G;
  double sqrt_det = 0.0;
  double g_xx_inv = 0.0;  // (G⁻¹)_xx
};

struct MetricSample {
  std::vector<MetricPoint> points;
  double o1 = 0.0;  // max |det G^{1/2}/(ε r) - 1|
  double o2 = 0.0;  // max |g^{xx} - 1|
  double O3 = 0.0;  // max G_xx
  double o4 = 0.0;  // max G_yy
};

struct SampleGrid {
  int nx = 21;
  int ny = 11;
};

/// Samples the tube metric. The edge coordinate x ∈ [0, ℓ] is stretched onto the shortened
/// edge, s = εℓ₀/2 + (1 - εℓ₀/ℓ) x, which produces the factor c = 1 - εℓ₀/ℓ.
inline MetricSample metric_sample(const EdgeProfile& edge, double ell0, double eps, SampleGrid grid = {}) {
  if (!(eps > 0.0)) throw GraphError("metric_sample: eps must be positive");
  if (grid.nx < 1 || grid.ny < 1) throw GraphError("metric_sample: empty sample grid");
  const double l = edge.length;
  const double c = 1.0 - eps * ell0 / l;
  if (!(c > 0.0)) throw GraphError("metric_sample: eps*ell0 exceeds the edge length");
  MetricSample out;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.nx == 1 ? 0.5 * l : l * i / (grid.nx - 1);
    const double s = eps * ell0 / 2.0 + c * x;
    const double r = edge.radius(s);
    const double rd = edge.radius.derivative(s);
    const double kappa = edge.curvature(s);
    for (int j = 0; j < grid.ny; ++j) {
      const double y = grid.ny == 1 ? 0.0 : -0.5 + static_cast<double>(j) / (grid.ny - 1);
      const double bend = 1.0 + eps * kappa * r * y;
      if (!(bend > 0.0))
        throw GraphError("metric_sample: metric degenerates (1 + eps*kappa*r*y <= 0); eps too large for the curvature");
      MetricPoint p;
      p.x = x;
      p.y = y;
      const double off = eps * eps * r * rd * y * c;
      p.G << (bend * bend + eps * eps * y * y * rd * rd) * c * c, off, off, eps * eps * r * r;
      p.sqrt_det = eps * r * c * bend;
      p.g_xx_inv = 1.0 / (c * c * bend * bend);
      out.o1 = std::max(out.o1, std::abs(p.sqrt_det / (eps * r) - 1.0));
      out.o2 = std::max(out.o2, std::abs(p.g_xx_inv - 1.0));
      out.O3 = std::max(out.O3, p.G(0, 0));
      out.o4 = std::max(out.o4, p.G(1, 1));
      out.points.push_back(p);
    }
  }
  return out;
}

inline MetricSample metric_sample(const EmbeddedGraph& eg, std::size_t e, double eps, SampleGrid grid = {}) {
  EdgeProfile prof;
  prof.length = eg.graph().edges().at(e).length;
  const Polyline& curve = eg.curve(e);
  prof.curvature = [&curve](double s) { return curve.curvature(s); };
  prof.radius = eg.radius(e);
  return metric_sample(prof, eg.ell0(), eps, grid);
}

}  // namespace graphlike
