#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <vector>

namespace graphlike {

inline double hausdorff(const std::vector<double>& A, const std::vector<double>& B) {
  if (A.empty() || B.empty()) throw std::invalid_argument("hausdorff: sets must be nonempty");
  auto one_side = [](const std::vector<double>& X, std::vector<double> Y) {
    std::sort(Y.begin(), Y.end());
    double worst = 0.0;
    for (double x : X) {
      auto it = std::lower_bound(Y.begin(), Y.end(), x);
      double d = std::numeric_limits<double>::infinity();
      if (it != Y.end()) d = *it - x;
      if (it != Y.begin()) d = std::min(d, x - *std::prev(it));
      worst = std::max(worst, d);
    }
    return worst;
  };
  return std::max(one_side(A, B), one_side(B, A));
}

/// d((A+1)⁻¹, (B+1)⁻¹) for subsets of [0, ∞).
inline double hausdorff_resolvent(const std::vector<double>& A, const std::vector<double>& B) {
  auto inv = [](const std::vector<double>& X) {
    std::vector<double> out;
    for (double x : X) {
      if (x <= -1.0) throw std::invalid_argument("hausdorff_resolvent: values must exceed -1");
      out.push_back(1.0 / (x + 1.0));
    }
    return out;
  };
  return hausdorff(inv(A), inv(B));
}

}  // namespace graphlike
