#pragma once

#include <cstdint>
#include <vector>

#include "mgk/correlation.hpp"

namespace mgk {

enum class CorrelationKind { Kendall, Pearson };

/// Sine-transformed Kendall matrix or Pearson correlation of the columns.
CorrelationMatrix estimate_correlation(const Matrix& data, CorrelationKind kind);

/// `count` log-spaced values from hi down to lo.
std::vector<double> log_lambda_grid(double lo, double hi, int count);

struct StarsConfig {
  int subsamples = 20;
  /// 0 selects floor(10 sqrt(n)), capped at n - 1.
  int subsample_size = 0;
  double beta = 0.05;
  /// Strictly descending; empty selects 30 log-spaced points over [0.01, 1].
  std::vector<double> lambda_grid;
  std::uint64_t seed = 1;
  /// Folded into the subsample stream key so datasets draw independently.
  std::uint64_t stream = 0;

  int resolved_subsample_size(int n) const;
  std::vector<double> resolved_grid() const;
  void validate(int n) const;
};

struct StarsResult {
  double lambda = 0.0;
  /// No grid point met the threshold; lambda is the smallest grid value.
  bool no_stable_lambda = false;
  /// Grid points evaluated, largest first, with raw and monotonized
  /// instability. The sweep stops at the first point whose monotonized
  /// instability exceeds beta.
  std::vector<double> grid;
  std::vector<double> instability;
  std::vector<double> monotone_instability;
};

/// 2 theta (1 - theta).
inline double edge_instability(double theta) { return 2.0 * theta * (1.0 - theta); }

// Stability selection over the CLIME regularization path: the smallest
// lambda whose monotonized instability stays at or below beta.
StarsResult stars_select(const Matrix& data, CorrelationKind kind,
                         const StarsConfig& cfg);

}  // namespace mgk
