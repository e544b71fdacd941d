#pragma once

#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "graphlike/bounds.hpp"

namespace graphlike {

struct RandomPair {
  ScaledSpace H, Ht;
  IdentificationSet ids;
};

namespace detail {

inline Mat gaussian(std::mt19937& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> nd;
  Mat G(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) G(i, j) = nd(rng);
  return G;
}

inline Mat random_mass(std::mt19937& rng, Eigen::Index n) {
  const Mat G = gaussian(rng, n, n);
  return Mat::Identity(n, n) + 0.1 * G * G.transpose() / static_cast<double>(n);
}

/// K with K u = λ M u for the given λ and a random M-orthonormal basis.
inline Mat operator_with_spectrum(const Mat& M, const Mat& Q, const Vec& lambda) {
  const Eigen::LLT<Mat> llt(M);
  const Mat V = llt.matrixU().solve(Q);  // VᵀMV = QᵀQ = I
  return M * V * lambda.asDiagonal() * V.transpose() * M;
}

}  // namespace detail

/// H = QΛQᵀ with Λ ~ U[0,10] in a random mass inner product; H̃ a rotated and shifted copy;
/// J = I + γG, J′ = M⁻¹JᵀM̃ + γG′, J₁ = J, J₁′ = J′. Order k = 1.
inline RandomPair make_random_pair(std::mt19937& rng, Eigen::Index n, double gamma = 0.05) {
  std::uniform_real_distribution<double> ud(0.0, 10.0);
  Vec lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = ud(rng);
  Vec lambda_t = lambda + gamma * detail::gaussian(rng, n, 1).cwiseAbs();
  const Mat Q = Eigen::HouseholderQR<Mat>(detail::gaussian(rng, n, n)).householderQ();
  const Mat Qt = Eigen::HouseholderQR<Mat>(Q + gamma * detail::gaussian(rng, n, n)).householderQ();
  // HouseholderQR fixes signs only up to the diagonal of R; align columns with Q
  Mat Qa = Qt;
  for (Eigen::Index j = 0; j < n; ++j)
    if (Qa.col(j).dot(Q.col(j)) < 0) Qa.col(j) *= -1.0;
  const Mat M = detail::random_mass(rng, n), Mt = detail::random_mass(rng, n);
  Mat K = detail::operator_with_spectrum(M, Q, lambda);
  Mat Kt = detail::operator_with_spectrum(Mt, Qa, lambda_t);
  K = 0.5 * (K + K.transpose());
  Kt = 0.5 * (Kt + Kt.transpose());
  IdentificationSet ids;
  ids.J = Mat::Identity(n, n) + gamma * detail::gaussian(rng, n, n);
  ids.Jp = M.ldlt().solve(ids.J.transpose() * Mt) + gamma * detail::gaussian(rng, n, n);
  ids.J1 = ids.J;
  ids.J1p = ids.Jp;
  ids.k = 1;
  return {ScaledSpace(K, M), ScaledSpace(Kt, Mt), std::move(ids)};
}

struct PropertyViolations {
  int iso = 0, resolvent = 0, other = 0, duality = 0, monotonicity = 0;
  int total() const { return iso + resolvent + other + duality + monotonicity; }
};

struct PropertySuiteReport {
  int trials = 0;
  PropertyViolations violations;
  std::string text;  // one line per trial
};

/// Seeded property suite over random pairs with dimension 2..max_dim.
inline PropertySuiteReport run_property_suite(int trials, unsigned seed, int max_dim = 12) {
  PropertySuiteReport rep;
  rep.trials = trials;
  std::mt19937 rng(seed);
  std::ostringstream os;
  os << "trial,dim,delta,iso,res1,res2,res3,other_est,duality,monotone\n";
  for (int t = 0; t < trials; ++t) {
    const int n = std::uniform_int_distribution<int>(2, max_dim)(rng);
    RandomPair p = make_random_pair(rng, n);
    const DeltaReport d = measure_closeness(p.H, p.Ht, p.ids);
    const IsometryCheck iso = quasi_isometry_gap(p.H, p.Ht, p.ids, d.delta, 20, seed + static_cast<unsigned>(t));
    const std::vector<CheckResult> res = verify_resolvent(p.H, p.Ht, p.ids, d.delta);
    const OtherEstimates oe = other_estimates_resolvent(p.H, p.Ht, p.ids, d.delta);

    // duality: ‖A*‖_{k̃→-k} = ‖A‖_{k→-k̃}, for random A and a few index pairs
    const Mat A = detail::gaussian(rng, n, n);
    const Mat As = adjoint(A, p.H, p.Ht);
    bool dual_ok = true, mono_ok = true;
    for (double k : {0.0, 1.0, 2.0})
      for (double kt : {0.0, 0.5, 1.0}) {
        const double a = op_norm(A, p.H, p.Ht, k, -kt), b = op_norm(As, p.Ht, p.H, kt, -k);
        if (std::abs(a - b) > kBoundSlack * std::max(1.0, a)) dual_ok = false;
      }
    // monotonicity in both indices
    for (double m : {0.0, 0.5})
      for (double mt : {0.0, 0.5})
        for (double k : {m, m + 1.0})
          for (double kt : {mt, mt + 1.0})
            if (op_norm(A, p.H, p.Ht, k, -kt) > op_norm(A, p.H, p.Ht, m, -mt) + kBoundSlack) mono_ok = false;

    const bool res_ok = res[0].pass() && res[1].pass() && res[2].pass();
    if (!iso.pass()) ++rep.violations.iso;
    if (!res_ok) ++rep.violations.resolvent;
    if (!oe.pass()) ++rep.violations.other;
    if (!dual_ok) ++rep.violations.duality;
    if (!mono_ok) ++rep.violations.monotonicity;
    char line[256];
    std::snprintf(line, sizeof line, "%d,%d,%.12g,%d,%d,%d,%d,%d,%d,%d\n", t, n, d.delta, iso.pass(), res[0].pass(),
                  res[1].pass(), res[2].pass(), oe.pass(), dual_ok, mono_ok);
    os << line;
  }
  os << "violations,iso=" << rep.violations.iso << ",resolvent=" << rep.violations.resolvent
     << ",other_est=" << rep.violations.other << ",duality=" << rep.violations.duality
     << ",monotone=" << rep.violations.monotonicity << "\n";
  rep.text = os.str();
  return rep;
}

}  // namespace graphlike
