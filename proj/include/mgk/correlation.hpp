#pragma once

#include <Eigen/Core>

#include <vector>

namespace mgk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Symmetric, unit-diagonal matrix with entries in [-1, 1]. Construction
// validates the invariants exactly (no tolerance), so producers must write
// both triangles from the same value and set the diagonal to 1.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  explicit CorrelationMatrix(Matrix values);

  static CorrelationMatrix identity(int dim);

  int dim() const { return static_cast<int>(values_.rows()); }
  const Matrix& values() const { return values_; }
  double operator()(int j, int k) const { return values_(j, k); }

 private:
  Matrix values_;
};

/// Copies the upper triangle into the lower, clamps to [-1,1] and sets a unit
/// diagonal. Use on numerically computed correlation estimates.
CorrelationMatrix make_correlation(Matrix values);

struct KendallTauMatrix {
  Matrix taus;
  int dim() const { return static_cast<int>(taus.rows()); }
};

// CLIME output. `raw` holds the unsymmetrized column solutions (column j is
// the solution for e_j); `values` is the symmetrized estimate.
struct ConcentrationEstimate {
  Matrix values;
  Matrix raw;
  double lambda = 0.0;
  /// l1 norm of each raw column solution (the LP optimum values).
  std::vector<double> column_l1;

  int dim() const { return static_cast<int>(values.rows()); }
};

}  // namespace mgk
