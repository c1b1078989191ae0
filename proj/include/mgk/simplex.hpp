#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace mgk {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar objective = 0;
  std::int64_t pivots = 0;
};

template <typename Scalar>
struct SimplexOptions {
  /// Phase-one objective above this means the constraints are infeasible.
  Scalar feasibility_tol = Scalar(1e-8);
  /// Entries with magnitude at or below this are treated as zero when pricing
  /// and in the ratio test.
  Scalar pivot_tol = Scalar(1e-11);
  std::int64_t max_pivots = 200000;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule;
  /// negative means Bland from the start.
  int degenerate_limit = 50;
};

// Dense two-phase tableau simplex for
//
//   minimize c'x  subject to  A x <= b,  x >= 0,
//
// with b of any sign. Every choice breaks ties by lowest index, so the pivot
// sequence is deterministic, and the Bland fallback rules out cycling on the
// heavily degenerate problems CLIME produces at lambda = 0.
// After the optimal basis is found the basic values are recomputed from the
// original data with an LU solve, so the returned point carries the accuracy
// of one factorization rather than of the accumulated pivots.
template <typename Scalar>
class DenseSimplex {
 public:
  using MatrixS = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorS = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  DenseSimplex(const MatrixS& a, const VectorS& b, const VectorS& c,
               SimplexOptions<Scalar> options = {})
      : a_(a), b_(b), c_(c), opt_(options) {}

  LpResult<Scalar> solve() {
    const int m = static_cast<int>(a_.rows());
    const int n = static_cast<int>(a_.cols());
    LpResult<Scalar> result;

    // Columns: structural [0, n), slack [n, n+m), artificial [n+m, n+m+na),
    // right-hand side last.
    std::vector<int> art_row;
    for (int i = 0; i < m; ++i)
      if (b_(i) < 0) art_row.push_back(i);
    const int na = static_cast<int>(art_row.size());
    total_ = n + m + na;
    rhs_ = total_;
    tab_ = RowMatrix::Zero(m, total_ + 1);
    basis_.assign(m, -1);

    for (int i = 0; i < m; ++i) {
      const Scalar sign = b_(i) < 0 ? Scalar(-1) : Scalar(1);
      tab_.row(i).head(n) = sign * a_.row(i);
      tab_(i, n + i) = sign;
      tab_(i, rhs_) = sign * b_(i);
      basis_[i] = n + i;
    }
    for (int a = 0; a < na; ++a) {
      tab_(art_row[a], n + m + a) = 1;
      basis_[art_row[a]] = n + m + a;
    }

    // Phase one: minimize the sum of artificials.
    if (na > 0) {
      VectorS cost = VectorS::Zero(total_);
      cost.tail(na).setOnes();
      set_objective(cost);
      const LpStatus s = iterate(total_, result.pivots);
      if (s != LpStatus::Optimal) {
        result.status = s == LpStatus::Unbounded ? LpStatus::Infeasible : s;
        return result;
      }
      if (-obj_(rhs_) > opt_.feasibility_tol) {
        result.status = LpStatus::Infeasible;
        return result;
      }
      drive_out_artificials(n + m, result.pivots);
    }

    // Phase two on the structural and slack columns only.
    VectorS cost = VectorS::Zero(total_);
    cost.head(n) = c_;
    set_objective(cost);
    const LpStatus s = iterate(n + m, result.pivots);
    if (s != LpStatus::Optimal) {
      result.status = s;
      return result;
    }

    result.x = VectorS::Zero(n);
    for (int i = 0; i < m; ++i)
      if (basis_[i] < n) result.x(basis_[i]) = tab_(i, rhs_);
    polish(result.x);
    result.objective = c_.dot(result.x);
    result.status = LpStatus::Optimal;
    return result;
  }

 private:
  using RowMatrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using RowVectorS = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

  void set_objective(const VectorS& cost) {
    obj_ = RowVectorS::Zero(total_ + 1);
    obj_.head(total_) = cost.transpose();
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      const Scalar cb = cost(basis_[i]);
      if (cb != 0) obj_ -= cb * tab_.row(i);
    }
  }

  void pivot(int row, int col) {
    tab_.row(row) /= tab_(row, col);
    tab_(row, col) = 1;
    for (int i = 0; i < tab_.rows(); ++i) {
      if (i == row) continue;
      const Scalar f = tab_(i, col);
      if (f != 0) {
        tab_.row(i) -= f * tab_.row(row);
        tab_(i, col) = 0;
      }
    }
    const Scalar f = obj_(col);
    if (f != 0) {
      obj_ -= f * tab_.row(row);
      obj_(col) = 0;
    }
    basis_[row] = col;
  }

  // Columns [0, allowed) may enter. Pricing picks the most negative reduced
  // cost (lowest index on ties); after a run of degenerate pivots it switches
  // to Bland's rule for the rest of the phase so cycling cannot occur.
  LpStatus iterate(int allowed, std::int64_t& pivots) {
    const int m = static_cast<int>(tab_.rows());
    bool bland = opt_.degenerate_limit < 0;
    int degenerate_run = 0;
    while (true) {
      int enter = -1;
      Scalar most = -opt_.pivot_tol;
      for (int j = 0; j < allowed; ++j) {
        if (obj_(j) < most) {
          enter = j;
          if (bland) break;
          most = obj_(j);
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (int i = 0; i < m; ++i) {
        const Scalar coef = tab_(i, enter);
        if (coef <= opt_.pivot_tol) continue;
        const Scalar ratio = tab_(i, rhs_) / coef;
        if (ratio < best ||
            (ratio == best && leave >= 0 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      if (++pivots > opt_.max_pivots) return LpStatus::IterationLimit;
      degenerate_run = best <= 0 ? degenerate_run + 1 : 0;
      if (degenerate_run > opt_.degenerate_limit) bland = true;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials(int first_artificial, std::int64_t& pivots) {
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      if (basis_[i] < first_artificial) continue;
      int col = -1;
      Scalar best = opt_.pivot_tol;
      for (int j = 0; j < first_artificial; ++j) {
        if (std::abs(tab_(i, j)) > best) {
          best = std::abs(tab_(i, j));
          col = j;
        }
      }
      // [A I] has full row rank, so a nonzero entry always exists.
      if (col >= 0) {
        pivot(i, col);
        ++pivots;
      }
    }
  }

  // Re-solve B x_B = b on the original [A I] columns of the final basis.
  void polish(VectorS& x) const {
    const int m = static_cast<int>(a_.rows());
    const int n = static_cast<int>(a_.cols());
    MatrixS basis_matrix = MatrixS::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int col = basis_[i];
      if (col < n) {
        basis_matrix.col(i) = a_.col(col);
      } else if (col < n + m) {
        basis_matrix(col - n, i) = 1;
      } else {
        return;  // an artificial survived; keep the tableau values
      }
    }
    Eigen::PartialPivLU<MatrixS> lu(basis_matrix);
    const VectorS xb = lu.solve(b_);
    if (!xb.allFinite()) return;
    VectorS polished = VectorS::Zero(n);
    for (int i = 0; i < m; ++i) {
      if (xb(i) < -std::sqrt(opt_.feasibility_tol)) return;
      if (basis_[i] < n) polished(basis_[i]) = std::max(xb(i), Scalar(0));
    }
    x = polished;
  }

  MatrixS a_;
  VectorS b_;
  VectorS c_;
  SimplexOptions<Scalar> opt_;

  RowMatrix tab_;
  RowVectorS obj_;
  std::vector<int> basis_;
  int total_ = 0;
  int rhs_ = 0;
};

}  // namespace mgk
