#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "graphlike/closeness.hpp"
#include "graphlike/hausdorff.hpp"

namespace graphlike {

inline constexpr double kBoundSlack = 1e-9;

struct CheckResult {
  double measured = 0.0;
  double bound = 0.0;
  bool pass() const { return measured <= bound + kBoundSlack; }
};

inline int m_order(int k) { return std::max(0, k - 2); }

/// Ĵ_ij (φ(λ̃_i) - φ(λ_j)), the matrix of φ(H̃)J - Jφ(H) in eigen coordinates.
inline Mat intertwining_defect(const Mat& Jhat, const ScaledSpace& H, const ScaledSpace& Ht,
                               const std::function<double(double)>& phi) {
  Mat D = Jhat;
  for (Eigen::Index j = 0; j < D.cols(); ++j)
    for (Eigen::Index i = 0; i < D.rows(); ++i) D(i, j) *= phi(Ht.values()(i)) - phi(H.values()(j));
  return D;
}

inline double resolvent_power(double lambda, int j) { return std::pow(1.0 + lambda, -j); }

/// ‖R̃ʲJ - JRʲ‖_{m→0} against 4jδ, j = 1..max_power.
inline std::vector<CheckResult> verify_resolvent(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids,
                                                 double delta, int max_power = 3) {
  const Mat Jhat = coefficient_matrix(ids.J, H, Ht);
  std::vector<CheckResult> out;
  for (int j = 1; j <= max_power; ++j) {
    const Mat D = intertwining_defect(Jhat, H, Ht, [j](double l) { return resolvent_power(l, j); });
    out.push_back({coefficient_norm(D, H, Ht, m_order(ids.k), 0), 4.0 * j * delta});
  }
  return out;
}

/// p(λ) = Σ a_j (λ+1)^{-j}; bound Σ |a_j| 4jδ.
inline CheckResult functional_calculus_gap(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids,
                                           const std::vector<double>& a, double delta) {
  auto p = [&a](double l) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * resolvent_power(l, static_cast<int>(j));
    return s;
  };
  double bound = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) bound += std::abs(a[j]) * 4.0 * static_cast<double>(j) * delta;
  const Mat D = intertwining_defect(coefficient_matrix(ids.J, H, Ht), H, Ht, p);
  return {coefficient_norm(D, H, Ht, m_order(ids.k), 0), bound};
}

struct IsometryCheck {
  double delta_prime = 0.0;
  double worst_excess = -std::numeric_limits<double>::infinity();  // max of |‖Jf‖ - ‖f‖| - δ′‖f‖₁
  int samples = 0;
  bool pass() const { return worst_excess <= kBoundSlack; }
};

/// ‖f‖ - δ′‖f‖₁ ≤ ‖Jf‖ ≤ ‖f‖ + δ′‖f‖₁ with δ′ = √(3δ), on all eigenvectors of H and `random` random vectors.
inline IsometryCheck quasi_isometry_gap(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids,
                                        double delta, int random = 50, unsigned seed = 1) {
  IsometryCheck out;
  out.delta_prime = std::sqrt(3.0 * delta);
  const Mat Jhat = coefficient_matrix(ids.J, H, Ht);
  const Vec w1 = H.weights(1);
  auto test = [&](const Vec& a) {
    const double excess = std::abs((Jhat * a).norm() - a.norm()) - out.delta_prime * w1.cwiseProduct(a).norm();
    out.worst_excess = std::max(out.worst_excess, excess);
    ++out.samples;
  };
  for (Eigen::Index i = 0; i < H.dim(); ++i) test(Vec::Unit(H.dim(), i));
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  for (int s = 0; s < random; ++s) {
    Vec a(H.dim());
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = nd(rng);
    test(a / w1.cwiseProduct(a).norm());
  }
  return out;
}

struct OtherEstimates {
  double eta = 0.0;  // measured ‖φ(H̃)J - Jφ(H)‖_{m→0}
  CheckResult dual, sandwich, sandwich_tilde;
  bool pass() const { return dual.pass() && sandwich.pass() && sandwich_tilde.pass(); }
};

/// The three consequences of an intertwining estimate. `sup` is ‖φ‖_∞; `C` bounds |φ|(λ+1)^{1/2} when m = 0.
inline OtherEstimates other_estimates(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids, double delta,
                                      const std::function<double(double)>& phi, double sup, double C) {
  const int m = m_order(ids.k);
  const Mat Jhat = coefficient_matrix(ids.J, H, Ht);
  const Mat Jphat = coefficient_matrix(ids.Jp, Ht, H);
  Vec ph(H.dim()), pht(Ht.dim());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = phi(H.values()(i));
  for (Eigen::Index i = 0; i < pht.size(); ++i) pht(i) = phi(Ht.values()(i));
  OtherEstimates out;
  out.eta = coefficient_norm(intertwining_defect(Jhat, H, Ht, phi), H, Ht, m, 0);
  const Mat dual = ph.asDiagonal() * Jphat - Jphat * pht.asDiagonal();
  out.dual = {coefficient_norm(dual, Ht, H, 0, -m), 2.0 * sup * delta + out.eta};
  const double c = m >= 1 ? sup : C;
  const Mat sw = Mat(ph.asDiagonal()) - Jphat * pht.asDiagonal() * Jhat;
  out.sandwich = {coefficient_norm(sw, H, H, m, 0), c * delta + 2.0 * out.eta};
  if (m == 0) {
    const Mat swt = Mat(pht.asDiagonal()) - Jhat * ph.asDiagonal() * Jphat;
    out.sandwich_tilde = {coefficient_norm(swt, Ht, Ht, 0, 0), 5.0 * c * delta + 2.0 * out.eta};
  }
  return out;
}

inline OtherEstimates other_estimates_resolvent(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids,
                                                double delta) {
  return other_estimates(H, Ht, ids, delta, [](double l) { return 1.0 / (1.0 + l); }, 1.0, 1.0);
}

inline int count_in(const Vec& values, double lo, double hi, double margin) {
  int n = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values(i);
    if (std::abs(v - lo) < margin || std::abs(v - hi) < margin)
      throw GraphError("interval endpoint within margin " + std::to_string(margin) + " of eigenvalue " + std::to_string(v));
    if (v > lo && v < hi) ++n;
  }
  return n;
}

inline std::function<double(double)> indicator(double lo, double hi) {
  return [lo, hi](double l) { return l > lo && l < hi ? 1.0 : 0.0; };
}

struct ProjectionCheck {
  int dim = 0, dim_tilde = 0;
  double min_ratio = 0.0;  // min over unit f ∈ ran P of ‖P̃Jf‖; ≥ 1/2 is expected only for small δ
  double eta = 0.0;        // ‖𝟙_I(H̃)J - J𝟙_I(H)‖_{m→0}
  bool pass() const { return dim == dim_tilde; }
};

inline ProjectionCheck projection_check(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids, double lo,
                                        double hi, double margin) {
  ProjectionCheck out;
  out.dim = count_in(H.values(), lo, hi, margin);
  out.dim_tilde = count_in(Ht.values(), lo, hi, margin);
  const Mat Jhat = coefficient_matrix(ids.J, H, Ht);
  out.eta = coefficient_norm(intertwining_defect(Jhat, H, Ht, indicator(lo, hi)), H, Ht, m_order(ids.k), 0);
  std::vector<Eigen::Index> rows, cols;
  for (Eigen::Index i = 0; i < Ht.dim(); ++i)
    if (Ht.values()(i) > lo && Ht.values()(i) < hi) rows.push_back(i);
  for (Eigen::Index j = 0; j < H.dim(); ++j)
    if (H.values()(j) > lo && H.values()(j) < hi) cols.push_back(j);
  if (cols.empty()) {
    out.min_ratio = 1.0;
  } else if (rows.empty()) {
    out.min_ratio = 0.0;
  } else {
    const Mat sub = Jhat(rows, cols);
    const Vec s = Eigen::JacobiSVD<Mat>(sub).singularValues();
    out.min_ratio = rows.size() < cols.size() ? 0.0 : s(s.size() - 1);
  }
  return out;
}

struct EigenvectorCheck {
  double lambda = 0.0;
  double overlap = 0.0;  // ⟨P̃Jφ, Jφ⟩
  double distance = 0.0, eta_indicator = 0.0, eta1 = 0.0;
  double distance_back = 0.0, eta2 = 0.0;
  bool valid() const { return overlap >= 0.25; }
  bool pass() const { return !valid() || (distance <= eta1 + kBoundSlack && distance_back <= eta2 + kBoundSlack); }
};

/// φ the eigenvector of H with index `index`; I = (lo, hi) must contain it and no other eigenvalue of H.
inline EigenvectorCheck eigenvector_closeness(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids,
                                              Eigen::Index index, double lo, double hi, double delta, double margin) {
  if (count_in(H.values(), lo, hi, margin) != 1) throw GraphError("eigenvector_closeness: eigenvalue is not simple in the interval");
  EigenvectorCheck out;
  out.lambda = H.values()(index);
  if (!(out.lambda > lo && out.lambda < hi)) throw GraphError("eigenvector_closeness: eigenvalue outside the interval");
  count_in(Ht.values(), lo, hi, margin);
  const Mat Jhat = coefficient_matrix(ids.J, H, Ht);
  const Mat Jphat = coefficient_matrix(ids.Jp, Ht, H);
  const Vec b = Jhat.col(index);
  Vec pb = Vec::Zero(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (Ht.values()(i) > lo && Ht.values()(i) < hi) pb(i) = b(i);
  out.overlap = pb.squaredNorm();
  out.eta_indicator = coefficient_norm(intertwining_defect(Jhat, H, Ht, indicator(lo, hi)), H, Ht, m_order(ids.k), 0);
  out.eta1 = 17.0 * out.eta_indicator + 3.0 * delta;
  out.eta2 = 2.0 * out.eta1 + delta * (1.0 + out.lambda);
  if (out.overlap <= 0.0) {
    out.distance = out.distance_back = std::numeric_limits<double>::infinity();
    return out;
  }
  const Vec phit = pb / out.overlap;
  out.distance = (b - phit).norm();
  out.distance_back = (Jphat * phit - Vec::Unit(H.dim(), index)).norm();
  return out;
}

/// Explicit min-max bound on |λ_k - λ̃_k|.
inline double minmax_bound(double lambda, double delta) {
  const double b = 1.0 - delta * (lambda + 1.0);
  if (b <= 0.0) throw GraphError("minmax_bound: 1 - delta(lambda+1) <= 0, the bound is vacuous");
  const double a = lambda + 2.0;
  const double t = a * a * delta / b;
  const double d = 1.0 - delta * (lambda + 1.0 + t);
  if (d <= 0.0) throw GraphError("minmax_bound: denominator <= 0, the bound is vacuous");
  return (a + t) * (a + t) / d * delta;
}

/// Smallest δ ≥ 0 with each quadratic-form hypothesis of the min-max estimate, read as PSD conditions.
struct FormHypotheses {
  double quad = 0.0, quad_prime = 0.0, norm = 0.0, norm_prime = 0.0;
  double delta() const { return std::max({quad, quad_prime, norm, norm_prime}); }
};

inline double minimal_shift(const Mat& A, const Mat& B) {
  const Vec mu = generalized_eig(0.5 * (A + A.transpose()), 0.5 * (B + B.transpose()), false).values;
  return std::max(0.0, -mu(0));
}

inline FormHypotheses form_hypotheses(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids) {
  check_shapes(H, Ht, ids);
  const Mat B = H.K() + H.M(), Bt = Ht.K() + Ht.M();
  FormHypotheses r;
  r.quad = minimal_shift(H.K() - ids.J1.transpose() * Ht.K() * ids.J1, B);
  r.quad_prime = minimal_shift(Ht.K() - ids.J1p.transpose() * H.K() * ids.J1p, Bt);
  r.norm = minimal_shift(ids.J1.transpose() * Ht.M() * ids.J1 - H.M(), B);
  r.norm_prime = minimal_shift(ids.J1p.transpose() * H.M() * ids.J1p - Ht.M(), Bt);
  return r;
}

/// ‖R̃J₁′* - J₁R‖_{-1→1} against 4δ, with J₁′* the adjoint of J₁′.
inline CheckResult resolvent_better(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids, double delta) {
  const Mat J1hat = coefficient_matrix(ids.J1, H, Ht);
  const Mat J1pstar = coefficient_matrix(ids.J1p, Ht, H).transpose();
  const Vec r = (1.0 + H.values().array().max(0.0)).inverse().matrix();
  const Vec rt = (1.0 + Ht.values().array().max(0.0)).inverse().matrix();
  const Mat D = rt.asDiagonal() * J1pstar - J1hat * r.asDiagonal();
  return {coefficient_norm(D, H, Ht, -1, 1), 4.0 * delta};
}

/// d̄ between the eigenvalues ≤ λmax of both operators.
inline double spectral_distance(const ScaledSpace& H, const ScaledSpace& Ht, double lambda_max) {
  auto below = [lambda_max](const Vec& v) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) <= lambda_max) out.push_back(std::max(0.0, v(i)));
    return out;
  };
  return hausdorff_resolvent(below(H.values()), below(Ht.values()));
}

}  // namespace graphlike
