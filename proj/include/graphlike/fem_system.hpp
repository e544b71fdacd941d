#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <vector>

#include "graphlike/linalg.hpp"

namespace graphlike {

/// Where a 1D DOF sits: a vertex (vertex >= 0) or an interior node of an edge.
struct DofLocation {
  int edge = -1;
  double x = 0.0;
  int vertex = -1;
};

/// A non-negative operator given by its form (stiffness K) in the inner product of M.
/// The spectral decomposition is computed at most once and shared between copies.
class FemSystem {
 public:
  FemSystem() = default;
  FemSystem(SpMat K, SpMat M, double h) : K_(std::move(K)), M_(std::move(M)), h_(h) {
    if (K_.rows() != K_.cols() || M_.rows() != M_.cols() || K_.rows() != M_.rows())
      throw std::invalid_argument("FemSystem: K and M must be square of equal size");
    K_.makeCompressed();
    M_.makeCompressed();
  }

  const SpMat& K() const { return K_; }
  const SpMat& M() const { return M_; }
  double h() const { return h_; }
  Eigen::Index dim() const { return K_.rows(); }

  /// 1D systems only: location of each DOF and, per edge, its nodes from tail to head.
  std::vector<DofLocation> dofs;
  std::vector<std::vector<Eigen::Index>> edge_nodes;
  std::vector<std::vector<double>> edge_coords;

  /// Full decomposition, M-orthonormal, ascending.
  const EigenDecomposition& spectrum() const {
    std::call_once(cache_->once, [this] {
      cache_->full = generalized_eig(Mat(K_), Mat(M_));
      // K is PSD: negative values are round-off
      cache_->full.values = cache_->full.values.cwiseMax(0.0);
      cache_->ready.store(true, std::memory_order_release);
    });
    return cache_->full;
  }

  bool spectrum_ready() const { return cache_->ready.load(std::memory_order_acquire); }

 private:
  struct Cache {
    std::once_flag once;
    EigenDecomposition full;
    std::atomic<bool> ready{false};
  };
  SpMat K_, M_;
  double h_ = 0.0;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Partial requests on large systems go through the sparse iteration; everything else is dense.
inline constexpr Eigen::Index kIterativeThreshold = 800;

inline EigenDecomposition lowest(const FemSystem& sys, Eigen::Index n) {
  if (n > sys.dim()) throw std::invalid_argument("eigenpairs: requested more eigenpairs than DOFs");
  if (sys.spectrum_ready() || sys.dim() <= kIterativeThreshold || 4 * n > sys.dim()) {
    const EigenDecomposition& f = sys.spectrum();
    return {f.values.head(n), f.vectors.leftCols(n)};
  }
  EigenDecomposition d = lowest_eigenpairs(sys.K(), sys.M(), n);
  d.values = d.values.cwiseMax(0.0);
  return d;
}

inline Vec lowest_eigenvalues(const FemSystem& sys, Eigen::Index n) { return lowest(sys, n).values; }

}  // namespace graphlike
