#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "graphlike/graph_io.hpp"
#include "graphlike/hausdorff.hpp"
#include "graphlike/random_pairs.hpp"
#include "graphlike/sweep.hpp"

using namespace graphlike;

namespace {

constexpr double kPi = std::numbers::pi;

Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

IdentificationSet identity_maps(Eigen::Index n) {
  IdentificationSet ids;
  ids.J = ids.J1 = ids.Jp = ids.J1p = Mat::Identity(n, n);
  return ids;
}

EmbeddedGraph star() { return *load_graph_file(std::string(GRAPHLIKE_DATA_DIR) + "/star3.json").embedding; }

struct StarPair {
  ThinMesh mesh;
  FemSystem graph, manifold;
  IdentificationSet ids;
};

StarPair star_pair(double eps, int h_rel) {
  const EmbeddedGraph eg = star();
  ThinMesh mesh = build_thin_mesh(eg, eps, h_rel);
  FemSystem manifold = assemble_neumann(mesh);
  FemSystem graph = build_pair_graph_system(eg, mesh);
  IdentificationSet ids = build_identification(graph, mesh, manifold, eps);
  return {std::move(mesh), std::move(graph), std::move(manifold), std::move(ids)};
}

}  // namespace

TEST(ScaledNorms, DiagonalExamples) {
  const ScaledSpace S(diag({0.0, 3.0}), Mat::Identity(2, 2));
  const Mat I = Mat::Identity(2, 2);
  EXPECT_NEAR(op_norm(I, S, S, 1, 0), 1.0, 1e-14);
  EXPECT_NEAR(op_norm(I, S, S, 0, 0), 1.0, 1e-14);
  EXPECT_NEAR(op_norm(I, S, S, 0, 1), 2.0, 1e-14);
  EXPECT_NEAR(op_norm(I, S, S, 2, 0), 1.0, 1e-14);
  // e₂ has ‖·‖₁ = 2
  EXPECT_NEAR(S.norm(Vec::Unit(2, 1), 1), 2.0, 1e-14);
  EXPECT_NEAR(S.norm(Vec::Unit(2, 1), -2), 0.25, 1e-14);
  EXPECT_THROW(op_norm(Mat::Identity(3, 2), S, S, 0, 0), std::invalid_argument);
}

TEST(ScaledNorms, MassMatters) {
  // M = 4 I doubles every norm; op norm of I is unchanged
  const ScaledSpace S(diag({0.0, 3.0}), 4.0 * Mat::Identity(2, 2));
  EXPECT_NEAR(S.norm(Vec::Unit(2, 0)), 2.0, 1e-14);
  EXPECT_NEAR(op_norm(Mat::Identity(2, 2), S, S, 0, 0), 1.0, 1e-14);
  const Mat A = adjoint(Mat::Identity(2, 2), S, S);
  EXPECT_NEAR((A - Mat::Identity(2, 2)).norm(), 0.0, 1e-14);
}

TEST(Closeness, IdenticalPairIsZeroClose) {
  const ScaledSpace H(diag({0.0, 1.0, 5.0}), Mat::Identity(3, 3));
  const DeltaReport r = measure_closeness(H, H, identity_maps(3));
  EXPECT_DOUBLE_EQ(r.delta, 0.0);
  EXPECT_NEAR(r.norm_J, 1.0, 1e-14);
  EXPECT_TRUE(r.bounded());
  for (const CheckResult& c : verify_resolvent(H, H, identity_maps(3), 0.0)) EXPECT_TRUE(c.pass());
}

TEST(Closeness, PerturbationShowsUpInCommutator) {
  const Mat K = diag({0.0, 1.0, 5.0});
  const Mat E = 0.01 * Mat::Ones(3, 3);
  const ScaledSpace H(K, Mat::Identity(3, 3)), Ht(K + E, Mat::Identity(3, 3));
  const DeltaReport r = measure_closeness(H, Ht, identity_maps(3));
  EXPECT_DOUBLE_EQ(r.scale, 0.0);
  EXPECT_NEAR(r.adj, 0.0, 1e-14);
  EXPECT_NEAR(r.inv, 0.0, 1e-14);
  EXPECT_GT(r.comm, 0.0);
  EXPECT_DOUBLE_EQ(r.delta, r.comm);
  EXPECT_NEAR(r.comm, form_norm(E, H, Ht, 1, 1), 1e-14);
  for (const CheckResult& c : verify_resolvent(H, Ht, identity_maps(3), r.delta)) EXPECT_TRUE(c.pass());
}

TEST(Closeness, ShapeMismatchRejected) {
  const ScaledSpace H(diag({0.0, 1.0}), Mat::Identity(2, 2));
  EXPECT_THROW(measure_closeness(H, H, identity_maps(3)), std::invalid_argument);
}

TEST(Bounds, MinmaxExample) {
  EXPECT_NEAR(minmax_bound(0.0, 0.01), 0.042070186400083295, 1e-15);
  EXPECT_THROW(minmax_bound(1.0, 0.5), GraphError);
  EXPECT_THROW(minmax_bound(0.0, 0.45), GraphError);  // first denominator 0.55 > 0, second < 0
  // first order: (λ+2)² δ
  EXPECT_NEAR(minmax_bound(1.0, 1e-9) / 1e-9, 9.0, 1e-6);
}

TEST(Bounds, HausdorffDistances) {
  EXPECT_DOUBLE_EQ(hausdorff({0.0, 1.0}, {0.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff({0.0, 1.0}, {0.0}), 1.0);
  EXPECT_DOUBLE_EQ(hausdorff({0.0, 3.0}, {1.0, 2.5}), 1.0);
  EXPECT_NEAR(hausdorff_resolvent({kPi * kPi / 4}, {kPi * kPi / 4 + 0.1}), 0.008084328928417539, 1e-15);
  EXPECT_THROW(hausdorff({}, {1.0}), std::invalid_argument);
  EXPECT_THROW(hausdorff_resolvent({-1.0}, {0.0}), std::invalid_argument);
}

TEST(Bounds, FunctionalCalculusBound) {
  std::mt19937 rng(7);
  const RandomPair p = make_random_pair(rng, 6);
  const double d = measure_closeness(p.H, p.Ht, p.ids).delta;
  const CheckResult c = functional_calculus_gap(p.H, p.Ht, p.ids, {0.0, 1.0, 1.0}, d);
  EXPECT_NEAR(c.bound, 12.0 * d, 1e-14);
  EXPECT_TRUE(c.pass());
  // the j = 0 coefficient carries no weight in the bound
  EXPECT_NEAR(functional_calculus_gap(p.H, p.Ht, p.ids, {1.0}, d).bound, 0.0, 1e-15);
}

TEST(Bounds, IsometryDeltaPrime) {
  const ScaledSpace H(diag({0.0, 1.0}), Mat::Identity(2, 2));
  const IsometryCheck c = quasi_isometry_gap(H, H, identity_maps(2), 0.03);
  EXPECT_NEAR(c.delta_prime, 0.3, 1e-15);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.samples, 52);
}

TEST(Bounds, ProjectionAndEigenvectorOnIdenticalPair) {
  const ScaledSpace H(diag({0.0, 1.0, 1.0, 5.0}), Mat::Identity(4, 4));
  const IdentificationSet ids = identity_maps(4);
  const ProjectionCheck p = projection_check(H, H, ids, 0.5, 2.0, 1e-9);
  EXPECT_EQ(p.dim, 2);
  EXPECT_TRUE(p.pass());
  EXPECT_NEAR(p.min_ratio, 1.0, 1e-14);
  EXPECT_NEAR(p.eta, 0.0, 1e-14);
  EXPECT_THROW(projection_check(H, H, ids, 1.0, 2.0, 1e-6), GraphError);
  const EigenvectorCheck e = eigenvector_closeness(H, H, ids, 3, 2.0, 6.0, 0.0, 1e-9);
  EXPECT_TRUE(e.valid());
  EXPECT_NEAR(e.overlap, 1.0, 1e-14);
  EXPECT_NEAR(e.distance, 0.0, 1e-14);
  EXPECT_NEAR(e.distance_back, 0.0, 1e-14);
  EXPECT_TRUE(e.pass());
  EXPECT_THROW(eigenvector_closeness(H, H, ids, 1, 0.5, 2.0, 0.0, 1e-9), GraphError);
}

TEST(Bounds, OtherEstimatesOnRandomPairs) {
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    const RandomPair p = make_random_pair(rng, 3 + t % 5);
    const double d = measure_closeness(p.H, p.Ht, p.ids).delta;
    const OtherEstimates o = other_estimates_resolvent(p.H, p.Ht, p.ids, d);
    EXPECT_TRUE(o.pass()) << t;
    EXPECT_LE(o.eta, 4.0 * d + kBoundSlack);
  }
}

TEST(Bounds, SimplerHypothesesGiveBetterResolventEstimate) {
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    const RandomPair p = make_random_pair(rng, 4 + t % 4);
    const FormHypotheses h = form_hypotheses(p.H, p.Ht, p.ids);
    EXPECT_GE(h.delta(), 0.0);
    const double d = std::max(h.delta(), measure_closeness(p.H, p.Ht, p.ids).delta);
    EXPECT_TRUE(resolvent_better(p.H, p.Ht, p.ids, d).pass()) << t;
  }
  // identical pair: all hypotheses hold with δ = 0
  const ScaledSpace H(diag({0.0, 2.0}), Mat::Identity(2, 2));
  EXPECT_NEAR(form_hypotheses(H, H, identity_maps(2)).delta(), 0.0, 1e-14);
  EXPECT_NEAR(resolvent_better(H, H, identity_maps(2), 0.0).measured, 0.0, 1e-14);
}

TEST(PropertySuite, SeededRunHasNoViolations) {
  const PropertySuiteReport a = run_property_suite(30, 2024);
  EXPECT_EQ(a.violations.total(), 0);
  EXPECT_EQ(a.text, run_property_suite(30, 2024).text);
  EXPECT_NE(a.text, run_property_suite(30, 2025).text);
}

TEST(Identification, ConstantFunctions) {
  const double eps = 0.15;
  const StarPair P = star_pair(eps, 4);
  const Vec one = Vec::Ones(P.graph.dim()), one_t = Vec::Ones(P.manifold.dim());
  EXPECT_LT((P.ids.J1 * one - one_t / std::sqrt(eps)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((P.ids.J1p * one_t - one * std::sqrt(eps)).cwiseAbs().maxCoeff(), 1e-12);
  double edge_area = 0.0;
  for (int e = 0; e < 3; ++e) edge_area += P.mesh.region_area(RegionKind::Edge, e);
  EXPECT_NEAR(one_t.dot(P.manifold.M() * (P.ids.J * one)), edge_area / std::sqrt(eps), 1e-11);
  const Mat left = P.ids.Jp * P.ids.extension;
  EXPECT_LT((left - Mat::Identity(left.rows(), left.cols())).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Identification, RejectsMismatch) {
  const StarPair P = star_pair(0.15, 4);
  EXPECT_THROW(build_identification(P.graph, P.mesh, P.manifold, 0.1), GraphError);
  const FemSystem coarse = assemble_kirchhoff(star().weighted_graph(), 0.1);
  EXPECT_THROW(build_identification(coarse, P.mesh, P.manifold, 0.15), GraphError);
}

TEST(StarPair, DeltaDecreasesWithEps) {
  const EmbeddedGraph eg = star();
  const std::vector<double> ref = to_std(lowest_eigenvalues(assemble_kirchhoff(eg.weighted_graph(), 1e-3), 4));
  const SweepPoint a = run_sweep_point(eg, 0.3, 6, ref, 30.0);
  const SweepPoint b = run_sweep_point(eg, 0.15, 6, ref, 30.0);
  EXPECT_GT(a.delta.delta, b.delta.delta);
  EXPECT_GT(b.delta.delta, 0.0);
  // regression baselines from the reference sweep
  EXPECT_NEAR(a.delta.delta, 0.5511, 2e-3);
  EXPECT_NEAR(b.delta.delta, 0.3792, 2e-3);
  for (const SweepPoint* s : {&a, &b}) {
    EXPECT_TRUE(s->delta.bounded());
    for (const CheckResult& c : s->resolvent) EXPECT_TRUE(c.pass());
    ASSERT_TRUE(s->eigvec.has_value());
    EXPECT_TRUE(s->eigvec->pass());
  }
  EXPECT_GT(a.errors[3], b.errors[3]);
}

TEST(StarPair, ProjectionDimensions) {
  const StarPair P = star_pair(0.15, 6);
  const ScaledSpace H(P.graph), Ht(P.manifold);
  const ProjectionCheck c = projection_check(H, Ht, P.ids, 1.0, 5.0, 1e-9);
  EXPECT_EQ(c.dim, 2);
  EXPECT_EQ(c.dim_tilde, 2);
  EXPECT_GT(c.min_ratio, 0.0);
}
