#pragma once

#include <lapacke.h>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphlike {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr Eigen::Index kDenseLimit = 4000;

/// Ascending eigenvalues; columns of `vectors` orthonormal in the relevant inner product.
struct EigenDecomposition {
  Vec values;
  Mat vectors;
};

inline void require_dense_size(Eigen::Index n, Eigen::Index limit = kDenseLimit) {
  if (n > limit)
    throw SolverError("dense eigensolve: dimension " + std::to_string(n) + " exceeds the dense limit " +
                      std::to_string(limit));
}

inline EigenDecomposition symmetric_eig(const Mat& A, bool want_vectors = true) {
  require_dense_size(A.rows());
  EigenDecomposition out;
  const lapack_int n = static_cast<lapack_int>(A.rows());
  out.vectors = A;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U', n, out.vectors.data(), n,
                                         out.values.data());
  if (info != 0) throw SolverError("dsyevd failed, info = " + std::to_string(info));
  if (!want_vectors) out.vectors.resize(0, 0);
  return out;
}

/// K u = λ M u with M SPD; eigenvectors satisfy VᵀMV = I.
inline EigenDecomposition generalized_eig(const Mat& K, const Mat& M, bool want_vectors = true) {
  require_dense_size(K.rows());
  if (K.rows() != M.rows() || K.cols() != M.cols() || K.rows() != K.cols())
    throw std::invalid_argument("generalized_eig: shape mismatch");
  EigenDecomposition out;
  const lapack_int n = static_cast<lapack_int>(K.rows());
  out.vectors = K;
  Mat B = M;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, want_vectors ? 'V' : 'N', 'U', n, out.vectors.data(),
                                         n, B.data(), n, out.values.data());
  if (info != 0)
    throw SolverError(info > n ? "dsygvd: mass matrix is not positive definite"
                               : "dsygvd failed, info = " + std::to_string(info));
  if (!want_vectors) out.vectors.resize(0, 0);
  return out;
}

/// Lowest n eigenpairs of K u = λ M u by block inverse iteration on (K+M)⁻¹M with Rayleigh-Ritz.
/// K must be PSD and M SPD so that K+M is SPD. Degenerate clusters are resolved by the block.
inline EigenDecomposition lowest_eigenpairs(const SpMat& K, const SpMat& M, Eigen::Index n, double tol = 1e-13,
                                            int max_iter = 1000) {
  const Eigen::Index dim = K.rows();
  if (n < 0 || n > dim) throw std::invalid_argument("lowest_eigenpairs: requested count exceeds dimension");
  const Eigen::Index block = std::min(dim, std::max<Eigen::Index>(2 * n, n + 8));
  if (block == dim) {
    EigenDecomposition full = generalized_eig(Mat(K), Mat(M));
    return {full.values.head(n), full.vectors.leftCols(n)};
  }
  const SpMat A = K + M;
  Eigen::SimplicialLDLT<SpMat> chol(A);
  if (chol.info() != Eigen::Success) throw SolverError("lowest_eigenpairs: K+M factorization failed");

  // Deterministic start: smooth plus a fixed pseudo-random part.
  Mat X(dim, block);
  unsigned state = 12345u;
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      state = state * 1664525u + 1013904223u;
      X(i, j) = static_cast<double>(state >> 8) / static_cast<double>(1u << 24) - 0.5;
    }

  // normwise backward error of each Ritz pair
  auto op_norm1 = [](const SpMat& A) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < A.outerSize(); ++j) {
      double c = 0.0;
      for (SpMat::InnerIterator it(A, j); it; ++it) c += std::abs(it.value());
      m = std::max(m, c);
    }
    return m;
  };
  const double nK = op_norm1(K), nM = op_norm1(M);
  Vec theta, previous;
  int stagnant = 0;
  for (int it = 0; it < max_iter; ++it) {
    Mat Y = chol.solve(M * X);
    Eigen::HouseholderQR<Mat> qr(Y);
    Y = qr.householderQ() * Mat::Identity(dim, block);
    const Mat Kr = Y.transpose() * (K * Y);
    const Mat Mr = Y.transpose() * (M * Y);
    const EigenDecomposition ritz = generalized_eig(0.5 * (Kr + Kr.transpose()), 0.5 * (Mr + Mr.transpose()));
    X = Y * ritz.vectors;
    theta = ritz.values;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vec x = X.col(j);
      const double res = (K * x - theta(j) * (M * x)).norm() / ((nK + std::abs(theta(j)) * nM) * x.norm());
      worst = std::max(worst, res);
    }
    if (previous.size() == theta.size() &&
        ((theta.head(n) - previous.head(n)).array().abs() <= 1e-15 * (1.0 + theta.head(n).array().abs())).all())
      ++stagnant;
    else
      stagnant = 0;
    previous = theta;
    if (worst < tol || (stagnant >= 3 && worst < 1e3 * tol)) return {theta.head(n), X.leftCols(n)};
  }
  throw SolverError("lowest_eigenpairs: subspace iteration did not converge");
}

/// Estimated multiplicity per entry of an ascending list: clusters with relative gap < rel_gap.
inline std::vector<int> cluster_multiplicities(const std::vector<double>& sorted, double rel_gap = 1e-6) {
  std::vector<int> mult(sorted.size(), 1);
  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    const bool split = i == sorted.size() ||
                       std::abs(sorted[i] - sorted[i - 1]) >=
                           rel_gap * std::max({1.0, std::abs(sorted[i]), std::abs(sorted[i - 1])});
    if (!split) continue;
    for (std::size_t j = start; j < i; ++j) mult[j] = static_cast<int>(i - start);
    start = i;
  }
  return mult;
}

inline std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

/// Largest singular value.
inline double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  if (A.rows() == 1 || A.cols() == 1) return A.norm();
  const Mat G = A.rows() <= A.cols() ? Mat(A * A.transpose()) : Mat(A.transpose() * A);
  const EigenDecomposition e = symmetric_eig(0.5 * (G + G.transpose()), false);
  return std::sqrt(std::max(0.0, e.values(e.values.size() - 1)));
}

/// Smallest eigenvalue of a symmetric matrix.
inline double min_eigenvalue(const Mat& A) {
  if (A.size() == 0) return 0.0;
  return symmetric_eig(0.5 * (A + A.transpose()), false).values(0);
}

}  // namespace graphlike
