#pragma once

#include "mgk/correlation.hpp"
#include "mgk/graph.hpp"

namespace mgk {

struct ClimeConfig {
  double lambda = 0.0;
  /// Second-step truncation level; 0 keeps every numerically nonzero entry.
  double gamma = 0.0;
  double feasibility_tol = 1e-8;
  /// Entries with magnitude at or below this are structural zeros.
  double zero_tol = 1e-8;

  void validate() const;
};

// Solves  min ||beta||_1  s.t.  ||R beta - e_j||_inf <= lambda  as a linear
// program over beta = u - v, u, v >= 0. `j` is 0-based. Throws
// InfeasibleError when no beta satisfies the constraint.
Vector clime_column(const CorrelationMatrix& r, int j, double lambda,
                    double feasibility_tol = 1e-8);

// All d column solves, then symmetrization: for each pair the raw entry of
// smaller magnitude wins, ties going to the (j,k) entry with j < k.
ConcentrationEstimate clime_estimate(const CorrelationMatrix& r,
                                     const ClimeConfig& cfg);

/// Edge (j,k) iff |omega_jk| > max(gamma, zero_tol).
BinaryGraph graph_from_estimate(const ConcentrationEstimate& omega,
                                double gamma, double zero_tol = 1e-8);
BinaryGraph graph_from_estimate(const Matrix& omega, double gamma,
                                double zero_tol = 1e-8);

}  // namespace mgk
