// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "graphlike/correspondence.hpp"
#include "graphlike/discrete.hpp"
#include "graphlike/generators.hpp"
#include "graphlike/graph_io.hpp"
#include "graphlike/hausdorff.hpp"
#include "graphlike/random_pairs.hpp"
#include "graphlike/sweep.hpp"

using namespace graphlike;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

Outcome ac1() {
  const std::vector<double> want = {0.0, kPi * kPi / 4, kPi * kPi / 4, kPi * kPi, 2.25 * kPi * kPi, 2.25 * kPi * kPi};
  const Vec got = lowest_eigenvalues(assemble_kirchhoff(generate_graph(kind::Star{3, 1.0}), 1e-3), 6);
  double worst = std::abs(got(0));
  for (int i = 1; i < 6; ++i) worst = std::max(worst, std::abs(got(i) - want[i]) / want[i]);
  std::ostringstream os;
  os << "max rel error " << worst << " (|lambda_0| counted absolutely)";
  return {worst < 1e-4, os.str()};
}

// ∫₀¹ f² by composite Simpson
double l2_squared_on_edge(const std::function<double(double)>& f, int n = 4000) {
  double s = f(0) * f(0) + f(1) * f(1);
  for (int i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) / n, v = f(x);
    s += (i % 2 ? 4.0 : 2.0) * v * v;
  }
  return s / (3.0 * n);
}

Outcome ac2() {
  const MetricGraph k4 = generate_graph(kind::CompleteK4{1.0});
  const DiscreteGraph d = to_discrete(k4);
  const auto corr = metric_spectrum_via_correspondence(d, 1.0, 9.0);
  std::vector<double> predicted;
  for (const auto& c : corr)
    for (int m = 0; m < c.multiplicity; ++m) predicted.push_back(c.lambda);
  const std::vector<double> dir = dirichlet_spectrum(1.0, 9.0);
  const Vec fem = lowest_eigenvalues(assemble_kirchhoff(k4, 1e-3), 10);
  std::vector<double> observed;
  for (Eigen::Index i = 0; i < fem.size(); ++i) {
    const double l = fem(i);
    if (l < 1e-8 || l >= 9.0) continue;
    bool near_dir = false;
    for (double x : dir) near_dir = near_dir || std::abs(l - x) < 1e-2;
    if (!near_dir) observed.push_back(l);
  }
  bool ok = observed.size() == predicted.size() && predicted.size() == 3;
  double worst = 0.0;
  for (std::size_t i = 0; ok && i < observed.size(); ++i) worst = std::max(worst, std::abs(observed[i] - predicted[i]));
  ok = ok && worst < 1e-3;

  // lift isometry for a basis of the 4/3-eigenspace
  const SymmetrizedLaplacian L = discrete_laplacian(d);
  const EigenDecomposition e = symmetric_eig(L.S);
  const double lambda = std::pow(std::acos(-1.0 / 3.0), 2);
  double iso = 0.0;
  for (Eigen::Index j = 1; j < 4; ++j) {
    const Vec a = L.degrees.cwiseSqrt().cwiseInverse().cwiseProduct(e.vectors.col(j));
    const MetricEigenpair u = lift_eigenvector(k4, a, lambda);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < k4.num_edges(); ++k) norm2 += l2_squared_on_edge([&](double x) { return u.eval(k, x); });
    const double w = weighted_norm(d, a);
    iso = std::max(iso, std::abs(norm2 - w * w) / (w * w));
  }
  ok = ok && iso < 1e-6;
  std::ostringstream os;
  os << "predicted {" << join(predicted) << "} observed {" << join(observed) << "} max diff " << worst
     << "; lift isometry rel error " << iso;
  return {ok, os.str()};
}

Outcome ac3() {
  const TreeGaps t = gap_intervals_tree(3, 1.0);
  const bool ok = std::abs(t.omega0 - 0.339837) < 1e-6 && t.intervals.size() >= 1 && t.intervals[0].lo == 0.0 &&
                  std::abs(t.intervals[0].hi - 0.115489) < 1e-6;
  std::ostringstream os;
  os << "omega0 " << t.omega0 << ", I0 = (" << t.intervals[0].lo << ", " << t.intervals[0].hi << ")";
  return {ok, os.str()};
}

struct SweepRun {
  std::vector<SweepPoint> points;
  std::string error;
};

const SweepRun& star_sweep() {
  static const SweepRun run = [] {
    SweepRun r;
    try {
      const EmbeddedGraph eg = *load_graph_file(std::string(GRAPHLIKE_DATA_DIR) + "/star3.json").embedding;
      const std::vector<double> ref = to_std(lowest_eigenvalues(assemble_kirchhoff(eg.weighted_graph(), 1e-3), 6));
      for (double eps : {0.3, 0.15, 0.075}) r.points.push_back(run_sweep_point(eg, eps, 6, ref, 30.0));
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  }();
  return run;
}

Outcome ac4() {
  const SweepRun& s = star_sweep();
  if (!s.error.empty()) return {false, s.error};
  std::vector<double> err;
  for (const SweepPoint& p : s.points) err.push_back(std::abs(p.manifold_eigs[1] - kPi * kPi / 4));
  double ratio = 0.0;
  for (std::size_t i = 1; i < err.size(); ++i) ratio = std::max(ratio, err[i] / err[i - 1]);
  std::ostringstream os;
  os << "|lambda_2 - pi^2/4| = {" << join(err) << "}, worst ratio " << ratio;
  return {strictly_decreasing(err) && ratio <= 0.8, os.str()};
}

Outcome ac5() {
  bool ok = true;
  double worst = 0.0;
  for (const SierpinskiValue& v : sierpinski_levels_tagged(4)) {
    if (v.level < 0) continue;
    double z = v.z;
    for (int j = 0; j < v.level; ++j) z = sierpinski_map(z);
    worst = std::max(worst, std::abs(z - 0.75));
  }
  ok = worst < 1e-10;
  const std::vector<double> g4 = to_std(discrete_eigenvalues(discrete_laplacian(to_discrete(generate_graph(kind::SierpinskiMetric{4, 1.0})))));
  const std::vector<double> d2 = sierpinski_levels(2);
  std::vector<double> common;
  for (double z : d2)
    for (double x : g4)
      if (std::abs(x - z) < 1e-9) {
        common.push_back(z);
        break;
      }
  // baseline observed once and frozen: every value of D_2 occurs in G_4
  const std::vector<double> baseline = {0.035891794864, 0.174306090567, 0.276142546816, 0.75,
                                        0.973857453184, 1.075693909433, 1.214108205136, 1.5};
  bool same = common.size() == baseline.size();
  for (std::size_t i = 0; same && i < common.size(); ++i) same = std::abs(common[i] - baseline[i]) < 1e-11;
  ok = ok && same;
  std::ostringstream os;
  os.precision(12);
  os << "max |p^j(z) - 3/4| = " << worst << "; |D_2| = " << d2.size() << ", G_4 ∩ D_2 = {" << join(common) << "}";
  return {ok, os.str()};
}

Outcome ac6() {
  const PropertySuiteReport r = run_property_suite(100, 2024);
  const PropertyViolations& v = r.violations;
  std::ostringstream os;
  os << r.trials << " trials, violations iso=" << v.iso << " resolvent=" << v.resolvent << " other_est=" << v.other
     << " duality=" << v.duality << " monotone=" << v.monotonicity;
  return {v.total() == 0, os.str()};
}

Outcome ac7() {
  const SweepRun& s = star_sweep();
  if (!s.error.empty()) return {false, s.error};
  std::vector<double> delta, dist;
  bool res_ok = true, mode_ok = true;
  std::ostringstream os;
  for (const SweepPoint& p : s.points) {
    delta.push_back(p.delta.delta);
    res_ok = res_ok && p.resolvent.at(0).pass();
    os << "eps " << p.eps << ": delta " << p.delta.delta << ", |RJ - JR| " << p.resolvent.at(0).measured << "; ";
    if (!p.eigvec || std::abs(p.eigvec->lambda - kPi * kPi) > 0.1) {
      mode_ok = false;
      continue;
    }
    dist.push_back(p.eigvec->distance);
  }
  os << "eigvec distance near pi^2 {" << join(dist) << "} (sweep shared with AC4)";
  const bool ok = strictly_decreasing(delta) && res_ok && mode_ok && dist.size() == s.points.size() && strictly_decreasing(dist);
  return {ok, os.str()};
}

Outcome ac8() {
  const double a = hausdorff({0.0, 1.0}, {1.0});
  const double b = hausdorff({0.0, 2.5, 7.0}, {0.0, 2.5, 7.0});
  const double c = hausdorff_resolvent({0.0}, {1.0});
  std::ostringstream os;
  os << "d({0,1},{1}) = " << a << ", d(A,A) = " << b << ", dbar({0},{1}) = " << c;
  return {a == 1.0 && b == 0.0 && c == 0.5, os.str()};
}

Outcome ac9() {
  const auto s = decoupled_spectrum({1.0, 2.0}, 10.0, 3);
  const bool ok = s.size() == 3 && s[0].value == 0.0 && s[0].multiplicity == 3 && s[1].value == kPi * kPi / 4 &&
                  s[1].multiplicity == 1 && std::abs(s[2].value - kPi * kPi) <= 4 * std::numeric_limits<double>::epsilon() * kPi * kPi &&
                  s[2].multiplicity == 2;
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i].value << " x" << s[i].multiplicity;
  os << "}";
  return {ok, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    Outcome (*run)();
  };
  const Criterion all[] = {{"AC1", 10, ac1},  {"AC2", 30, ac2},  {"AC3", 10, ac3},  {"AC4", 300, ac4}, {"AC5", 60, ac5},
                           {"AC6", 60, ac6},  {"AC7", 300, ac7}, {"AC8", 10, ac8},  {"AC9", 10, ac9}};
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %s (%.2f s%s) %s\n", c.name, pass ? "PASS" : "FAIL", secs, in_time ? "" : ", over time limit",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
