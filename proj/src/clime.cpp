#include "mgk/clime.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgk/error.hpp"
#include "mgk/parallel.hpp"
#include "mgk/simplex.hpp"

namespace mgk {

void ClimeConfig::validate() const {
  if (!(lambda >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "lambda must be nonnegative");
  }
  if (!(gamma >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "gamma must be nonnegative");
  }
  if (!(feasibility_tol > 0.0) || !(zero_tol > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "tolerances must be positive");
  }
}

Vector clime_column(const CorrelationMatrix& r, int j, double lambda,
                    double feasibility_tol) {
  const int d = r.dim();
  if (j < 0 || j >= d) {
    throw Error(ErrorKind::DimensionMismatch,
                "column index " + std::to_string(j + 1) + " outside 1.." +
                    std::to_string(d));
  }
  if (!(lambda >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "lambda must be nonnegative");
  }
  const Matrix& rv = r.values();

  //  R u - R v <= lambda + e_j
  // -R u + R v <= lambda - e_j
  Matrix a(2 * d, 2 * d);
  a << rv, -rv, -rv, rv;
  Vector b = Vector::Constant(2 * d, lambda);
  b(j) += 1.0;
  b(d + j) -= 1.0;
  const Vector c = Vector::Ones(2 * d);

  SimplexOptions<double> options;
  options.feasibility_tol = feasibility_tol;
  const LpResult<double> lp = DenseSimplex<double>(a, b, c, options).solve();

  switch (lp.status) {
    case LpStatus::Optimal:
      break;
    case LpStatus::Infeasible:
      throw InfeasibleError(j + 1, "CLIME column " + std::to_string(j + 1) +
                                       " is infeasible at lambda=" +
                                       std::to_string(lambda));
    case LpStatus::Unbounded:
      throw Error(ErrorKind::InternalError,
                  "CLIME column LP reported unbounded");
    case LpStatus::IterationLimit:
      throw Error(ErrorKind::InternalError,
                  "CLIME column LP hit the pivot limit");
  }
  return lp.x.head(d) - lp.x.tail(d);
}

ConcentrationEstimate clime_estimate(const CorrelationMatrix& r,
                                     const ClimeConfig& cfg) {
  cfg.validate();
  const int d = r.dim();
  ConcentrationEstimate est;
  est.lambda = cfg.lambda;
  est.raw = Matrix::Zero(d, d);
  est.column_l1.assign(d, 0.0);

  parallel_for(static_cast<std::size_t>(d), [&](std::size_t col) {
    const int j = static_cast<int>(col);
    const Vector beta = clime_column(r, j, cfg.lambda, cfg.feasibility_tol);
    est.raw.col(j) = beta;
    est.column_l1[col] = beta.lpNorm<1>();
  });

  est.values = est.raw;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const double upper = est.raw(j, k);
      const double lower = est.raw(k, j);
      const double v = std::abs(upper) <= std::abs(lower) ? upper : lower;
      est.values(j, k) = v;
      est.values(k, j) = v;
    }
  }
  return est;
}

BinaryGraph graph_from_estimate(const Matrix& omega, double gamma,
                                double zero_tol) {
  const int d = static_cast<int>(omega.rows());
  const double cut = std::max(gamma, zero_tol);
  std::vector<Edge> edges;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k)
      if (std::abs(omega(j, k)) > cut) edges.push_back({j, k});
  return BinaryGraph(d, std::move(edges));
}

BinaryGraph graph_from_estimate(const ConcentrationEstimate& omega,
                                double gamma, double zero_tol) {
  return graph_from_estimate(omega.values, gamma, zero_tol);
}

}  // namespace mgk
