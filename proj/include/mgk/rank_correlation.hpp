#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>

#include "mgk/correlation.hpp"

namespace mgk {

// Pair counts behind Kendall's tau. Pairs tied in either coordinate count in
// neither field (sign(0) = 0).
struct KendallCounts {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;

  friend bool operator==(const KendallCounts&, const KendallCounts&) = default;
};

// O(n log n) counts: sort by (x, y), count y-inversions with a merge sort,
// and recover concordant pairs from the tie counts (Knight's method).
KendallCounts kendall_counts(std::span<const double> x,
                             std::span<const double> y);

/// Tau-a: (C - D) / (n(n-1)/2). Throws InsufficientData for n < 2 and
/// DimensionMismatch for unequal lengths.
double kendall_tau_pair(std::span<const double> x, std::span<const double> y);

/// Pairwise tau over the columns of an n x d observation matrix.
KendallTauMatrix kendall_tau_matrix(const Matrix& data);

/// Entrywise sin(pi/2 * tau) with an exact unit diagonal.
CorrelationMatrix sine_transform(const KendallTauMatrix& tau);

/// Sample correlation of the columns. Throws DegenerateColumnError naming the
/// first zero-variance column.
CorrelationMatrix pearson_matrix(const Matrix& data);

template <typename Derived>
KendallTauMatrix kendall_tau_matrix(const Eigen::MatrixBase<Derived>& data) {
  return kendall_tau_matrix(Matrix(data.template cast<double>()));
}

template <typename Derived>
CorrelationMatrix pearson_matrix(const Eigen::MatrixBase<Derived>& data) {
  return pearson_matrix(Matrix(data.template cast<double>()));
}

}  // namespace mgk
