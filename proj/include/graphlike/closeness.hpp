#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "graphlike/fem_system.hpp"
#include "graphlike/identification.hpp"

namespace graphlike {

/// The scale ‖u‖_k = ‖(H+1)^{k/2}u‖ of a non-negative operator given by (K, M), computed spectrally.
class ScaledSpace {
 public:
  ScaledSpace(Mat K, Mat M) : K_(std::move(K)), M_(std::move(M)) {
    EigenDecomposition d = generalized_eig(K_, M_);
    values_ = std::move(d.values);
    vectors_ = std::move(d.vectors);
  }
  explicit ScaledSpace(const FemSystem& sys)
      : K_(Mat(sys.K())), M_(Mat(sys.M())), values_(sys.spectrum().values), vectors_(sys.spectrum().vectors) {}

  const Mat& K() const { return K_; }
  const Mat& M() const { return M_; }
  const Vec& values() const { return values_; }
  const Mat& vectors() const { return vectors_; }
  Eigen::Index dim() const { return M_.rows(); }

  /// (1+λ_i)^{k/2}; tiny negative round-off in λ is clipped.
  Vec weights(double k) const {
    return (1.0 + values_.array().max(0.0)).pow(k / 2.0).matrix();
  }
  Vec coefficients(const Vec& u) const { return vectors_.transpose() * (M_ * u); }
  double norm(const Vec& u, double k = 0.0) const { return weights(k).cwiseProduct(coefficients(u)).norm(); }

 private:
  Mat K_, M_;
  Vec values_;
  Mat vectors_;
};

/// Ṽᵀ M̃ A V: the matrix of A : source → target in the two eigenbases.
inline Mat coefficient_matrix(const Mat& A, const ScaledSpace& source, const ScaledSpace& target) {
  if (A.rows() != target.dim() || A.cols() != source.dim())
    throw std::invalid_argument("op_norm: operator is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                                ", spaces are " + std::to_string(target.dim()) + " and " + std::to_string(source.dim()));
  return target.vectors().transpose() * (target.M() * (A * source.vectors()));
}

/// ‖Â‖_{k_s→k_t} for an operator already in eigen coordinates.
inline double coefficient_norm(const Mat& Ahat, const ScaledSpace& source, const ScaledSpace& target, double k_source,
                               double k_target) {
  return spectral_norm(target.weights(k_target).asDiagonal() * Ahat * source.weights(-k_source).asDiagonal());
}

/// sup ‖Au‖_{k_target} / ‖u‖_{k_source}.
inline double op_norm(const Mat& A, const ScaledSpace& source, const ScaledSpace& target, double k_source,
                      double k_target) {
  return coefficient_norm(coefficient_matrix(A, source, target), source, target, k_source, k_target);
}

/// sup |fᵀ D u| / (‖f‖_{k_left} ‖u‖_{k_right}) for a bilinear form with f in `left` and u in `right`.
inline double form_norm(const Mat& D, const ScaledSpace& left, const ScaledSpace& right, double k_left, double k_right) {
  if (D.rows() != left.dim() || D.cols() != right.dim()) throw std::invalid_argument("form_norm: dimension mismatch");
  const Mat X = left.vectors().transpose() * (D * right.vectors());
  return spectral_norm(left.weights(-k_left).asDiagonal() * X * right.weights(-k_right).asDiagonal());
}

/// M-adjoint of A : source → target.
inline Mat adjoint(const Mat& A, const ScaledSpace& source, const ScaledSpace& target) {
  return source.M().ldlt().solve(A.transpose() * target.M());
}

struct DeltaReport {
  double scale = 0.0, scale_prime = 0.0;
  double adj = 0.0;
  double comm = 0.0;
  double inv = 0.0, inv_prime = 0.0;
  double norm_J = 0.0, norm_Jp = 0.0;
  double delta = 0.0;
  bool bounded() const { return norm_J <= 2.0 && norm_Jp <= 2.0; }
};

inline void check_shapes(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids) {
  const Eigen::Index n = H.dim(), nt = Ht.dim();
  auto same = [](const Mat& A, Eigen::Index r, Eigen::Index c) { return A.rows() == r && A.cols() == c; };
  if (!same(ids.J, nt, n) || !same(ids.J1, nt, n) || !same(ids.Jp, n, nt) || !same(ids.J1p, n, nt))
    throw std::invalid_argument("measure_closeness: identification maps do not fit the spaces");
}

/// The six defects of δ-closeness of order ids.k, each as an exact weighted norm.
inline DeltaReport measure_closeness(const ScaledSpace& H, const ScaledSpace& Ht, const IdentificationSet& ids) {
  check_shapes(H, Ht, ids);
  const double k = ids.k;
  const Mat I = Mat::Identity(H.dim(), H.dim()), It = Mat::Identity(Ht.dim(), Ht.dim());
  DeltaReport r;
  r.scale = op_norm(ids.J - ids.J1, H, Ht, 1, 0);
  r.scale_prime = op_norm(ids.Jp - ids.J1p, Ht, H, 1, 0);
  r.adj = form_norm(ids.J.transpose() * Ht.M() - H.M() * ids.Jp, H, Ht, 0, 0);
  r.comm = form_norm(ids.J1.transpose() * Ht.K() - H.K() * ids.J1p, H, Ht, k, 1);
  r.inv = op_norm(I - ids.Jp * ids.J, H, H, 1, 0);
  r.inv_prime = op_norm(It - ids.J * ids.Jp, Ht, Ht, 1, 0);
  r.norm_J = op_norm(ids.J, H, Ht, 0, 0);
  r.norm_Jp = op_norm(ids.Jp, Ht, H, 0, 0);
  r.delta = std::max({r.scale, r.scale_prime, r.adj, r.comm, r.inv, r.inv_prime});
  return r;
}

}  // namespace graphlike
