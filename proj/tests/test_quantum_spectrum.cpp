#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphlike/correspondence.hpp"
#include "graphlike/generators.hpp"
#include "graphlike/kirchhoff.hpp"

using namespace graphlike;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> fem(const MetricGraph& g, double h, Eigen::Index n) { return to_std(lowest_eigenvalues(assemble_kirchhoff(g, h), n)); }

}  // namespace

TEST(Kirchhoff, StarSpectrum) {
  const std::vector<double> want = {0.0, 2.4674011002723395, 2.4674011002723395, 9.869604401089358,
                                    22.206609902451056, 22.206609902451056, 39.47841760435743, 61.68502750680849};
  const auto got = fem(generate_graph(kind::Star{3, 1.0}), 1e-3, 8);
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-5 * std::max(1.0, want[i])) << i;
  const auto mult = cluster_multiplicities(got, 1e-6);
  EXPECT_EQ(mult[1], 2);
  EXPECT_EQ(mult[4], 2);
  EXPECT_LT(std::abs(got[1] - got[2]) / got[1], 1e-6);
}

TEST(Kirchhoff, IntervalAndCycle) {
  const auto iv = fem(generate_graph(kind::Interval{1.0}), 1e-3, 4);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(iv[k], k * k * kPi * kPi, 1e-5 * std::max(1.0, iv[k]));
  // cycle of circumference 1: 0, (2πk)² doubled
  const auto cy = fem(generate_graph(kind::Cycle{1.0}), 1e-3, 5);
  EXPECT_NEAR(cy[0], 0.0, 1e-9);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(cy[i], std::pow(2 * kPi * ((i + 1) / 2), 2), 1e-4 * cy[i]);
}

TEST(Kirchhoff, HalvingMeshReducesError) {
  const MetricGraph g = generate_graph(kind::Star{3, 1.0});
  const double e1 = std::abs(fem(g, 0.02, 4)[3] - kPi * kPi);
  const double e2 = std::abs(fem(g, 0.01, 4)[3] - kPi * kPi);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(Kirchhoff, ResidualAndVertexContinuity) {
  const MetricGraph g = generate_graph(kind::Star{3, 1.0});
  const FemSystem sys = assemble_kirchhoff(g, 1e-3);
  const auto pairs = eigenpairs(sys, 4);
  for (const auto& p : pairs) {
    const Vec u = p.coeffs / std::sqrt(p.coeffs.dot(sys.M() * p.coeffs));
    const auto res = kirchhoff_residuals(g, sys, u);
    // normalized eigenfunction, first-cell derivative error is O(λ h)
    for (double r : res) EXPECT_LT(r, 1e-2 * std::max(1.0, p.lambda));
    for (std::size_t e = 0; e < 3; ++e) EXPECT_DOUBLE_EQ(p.eval(e, 0.0), u(0) * p.coeffs.norm() / u.norm());
  }
}

TEST(Kirchhoff, ConstantDensityKeepsSpectrum) {
  EdgeRecord r;
  r.id = 0;
  r.tail = 0;
  r.head = 1;
  r.length = 1.0;
  r.density = DensitySpec::constant(4.0);
  // constant weight p on an interval: K scales by p, M by p, so the spectrum is unchanged
  const auto a = fem(MetricGraph({0, 1}, {r}), 1e-3, 3);
  EXPECT_NEAR(a[1], kPi * kPi, 1e-4);
}

TEST(Correspondence, DirichletAndG) {
  const auto d = dirichlet_spectrum(1.0, 100.0);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[0], kPi * kPi, 1e-12);
  EXPECT_NEAR(g_map(kPi * kPi / 4.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(g_map(kPi * kPi, 1.0), 2.0, 1e-15);
  EXPECT_THROW(g_map(-1.0, 1.0), GraphError);
}

TEST(Correspondence, MuPreimages) {
  const auto p = mu_preimages(4.0 / 3.0, 1.0, 20.0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0], 3.650519363459398, 1e-12);
  EXPECT_NEAR(p[1], 19.119211612999198, 1e-12);
  const auto q = mu_preimages(1.0, 2.0, 16.0);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_NEAR(q[0], 0.6168502750680849, 1e-13);
  EXPECT_NEAR(q[1], 5.551652475612764, 1e-13);
  EXPECT_NEAR(q[2], 15.421256876702122, 1e-12);
  for (double l : p) EXPECT_NEAR(g_map(l, 1.0), 4.0 / 3.0, 1e-12);
  EXPECT_THROW(mu_preimages(0.0, 1.0, 10.0), GraphError);
  EXPECT_THROW(mu_preimages(2.0, 1.0, 10.0), GraphError);
}

TEST(Correspondence, K4MatchesFem) {
  const MetricGraph k4 = generate_graph(kind::CompleteK4{1.0});
  const auto corr = metric_spectrum_via_correspondence(to_discrete(k4), 1.0, 30.0);
  ASSERT_FALSE(corr.empty());
  EXPECT_NEAR(corr[0].lambda, 3.650519363459398, 1e-12);
  EXPECT_EQ(corr[0].multiplicity, 3);
  const auto f = fem(k4, 1e-3, 4);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(f[i], corr[0].lambda, 1e-5);
}

TEST(Correspondence, CycleViaG) {
  const auto corr = metric_spectrum_via_correspondence(to_discrete(generate_graph(kind::Cycle{3.0})), 1.0, 10.0);
  ASSERT_FALSE(corr.empty());
  EXPECT_NEAR(corr[0].lambda, 4.386490844928605, 1e-12);
  EXPECT_EQ(corr[0].multiplicity, 2);
  // circumference 3: (2π/3)²
  EXPECT_NEAR(corr[0].lambda, std::pow(2 * kPi / 3, 2), 1e-12);
}

TEST(Correspondence, RejectsNonEquilateral) {
  EdgeRecord a, b;
  a.id = 0, a.tail = 0, a.head = 1, a.length = 1.0;
  b.id = 1, b.tail = 1, b.head = 2, b.length = 2.0;
  const MetricGraph g({0, 1, 2}, {a, b});
  EXPECT_THROW(lift_eigenvector(g, Vec::Ones(3), 1.0), GraphError);
}

TEST(Correspondence, LiftIsIsometric) {
  const MetricGraph k4 = generate_graph(kind::CompleteK4{1.0});
  const DiscreteGraph d = to_discrete(k4);
  Vec a(4);
  a << 1.0, -1.0, 0.0, 0.0;
  const double lambda = std::pow(std::acos(-1.0 / 3.0), 2);
  EXPECT_NEAR(weighted_norm(d, a), std::sqrt(6.0), 1e-14);
  const FemSystem sys = assemble_kirchhoff(k4, 1e-3);
  const MetricEigenpair lift = lift_eigenvector(k4, a, lambda, &sys);
  EXPECT_NEAR(lift.coeffs.dot(sys.M() * lift.coeffs), 6.0, 1e-5);
  // lift is an eigenfunction: Rayleigh quotient
  EXPECT_NEAR(lift.coeffs.dot(sys.K() * lift.coeffs) / lift.coeffs.dot(sys.M() * lift.coeffs), lambda, 1e-4);
  // vertex values carry the factor √2/√ℓ
  EXPECT_NEAR(lift.eval(0, 0.0), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(lift.eval(0, 1.0), -std::sqrt(2.0), 1e-12);
  EXPECT_THROW(lift_eigenvector(k4, a, kPi * kPi), GraphError);
}

TEST(TreeGaps, Intervals) {
  const TreeGaps t = gap_intervals_tree(3, 13.0);
  EXPECT_NEAR(t.omega0, 0.33983690945412165, 1e-15);
  ASSERT_GE(t.intervals.size(), 3u);
  EXPECT_NEAR(t.intervals[0].hi, 0.11548912502732887, 1e-15);
  EXPECT_NEAR(t.intervals[1].lo, 7.849835249797229, 1e-13);
  EXPECT_NEAR(t.intervals[1].hi, kPi * kPi, 1e-13);
  EXPECT_NEAR(t.intervals[2].hi, 12.120351802436144, 1e-13);
  EXPECT_NEAR(gap_intervals_tree(4, 1.0).omega0, kPi / 6, 1e-15);
}

TEST(TreeGaps, MuSpectrumAvoidsGaps) {
  // g maps the gap I₀ below the band
  const double lo = tree_band(3).first;
  const TreeGaps t = gap_intervals_tree(3, 1.0);
  EXPECT_NEAR(g_map(t.intervals[0].hi, 1.0), lo, 1e-12);
  EXPECT_LT(g_map(0.5 * t.intervals[0].hi, 1.0), lo);
}

TEST(Decoupled, Spectrum) {
  const auto s = decoupled_spectrum({1.0, 2.0}, 40.0, 3);
  ASSERT_GE(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0].value, 0.0);
  EXPECT_EQ(s[0].multiplicity, 3);
  EXPECT_NEAR(s[1].value, kPi * kPi / 4, 1e-12);
  EXPECT_NEAR(s[2].value, kPi * kPi, 1e-12);
  EXPECT_EQ(s[2].multiplicity, 2);
  EXPECT_THROW(decoupled_spectrum({kInfinity}, 1.0, 1), GraphError);
}
