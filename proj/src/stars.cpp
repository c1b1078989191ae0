#include "mgk/stars.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mgk/clime.hpp"
#include "mgk/error.hpp"
#include "mgk/parallel.hpp"
#include "mgk/rank_correlation.hpp"
#include "mgk/rng.hpp"

namespace mgk {

CorrelationMatrix estimate_correlation(const Matrix& data, CorrelationKind kind) {
  switch (kind) {
    case CorrelationKind::Kendall:
      return sine_transform(kendall_tau_matrix(data));
    case CorrelationKind::Pearson:
      return pearson_matrix(data);
  }
  throw Error(ErrorKind::InternalError, "unknown correlation kind");
}

std::vector<double> log_lambda_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 1) {
    throw Error(ErrorKind::InvalidConfig,
                "lambda grid needs 0 < min < max and count >= 1");
  }
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = hi;
    return grid;
  }
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = std::exp(std::log(hi) - i * step);
  grid.front() = hi;
  grid.back() = lo;
  return grid;
}

int StarsConfig::resolved_subsample_size(int n) const {
  if (subsample_size > 0) return subsample_size;
  const int b = static_cast<int>(std::floor(10.0 * std::sqrt(static_cast<double>(n))));
  return std::max(2, std::min(b, n - 1));
}

std::vector<double> StarsConfig::resolved_grid() const {
  return lambda_grid.empty() ? log_lambda_grid(0.01, 1.0, 30) : lambda_grid;
}

void StarsConfig::validate(int n) const {
  if (subsamples < 2) {
    throw Error(ErrorKind::InvalidConfig, "StARS needs at least 2 subsamples");
  }
  const int b = resolved_subsample_size(n);
  if (b < 2 || b >= n) {
    throw Error(ErrorKind::InvalidConfig,
                "StARS subsample size must satisfy 2 <= b < n (b=" +
                    std::to_string(b) + ", n=" + std::to_string(n) + ")");
  }
  if (!(beta > 0.0 && beta < 0.5)) {
    throw Error(ErrorKind::InvalidConfig, "StARS beta must lie in (0, 0.5)");
  }
  const auto grid = resolved_grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] < grid[i - 1]))) {
      throw Error(ErrorKind::InvalidConfig,
                  "lambda grid must be positive and strictly descending");
    }
  }
}

StarsResult stars_select(const Matrix& data, CorrelationKind kind,
                         const StarsConfig& cfg) {
  const int n = static_cast<int>(data.rows());
  const int d = static_cast<int>(data.cols());
  cfg.validate(n);
  const int b = cfg.resolved_subsample_size(n);
  const auto grid = cfg.resolved_grid();
  const auto N = static_cast<std::size_t>(cfg.subsamples);

  // Subsample index sets are drawn up front, in order, from one substream.
  Rng rng = Rng::substream(cfg.seed, {kStarsStream, cfg.stream});
  std::vector<std::vector<int>> rows(N);
  {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (auto& subset : rows) {
      for (int i = 0; i < b; ++i) {
        const int pick = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(all[i], all[pick]);
      }
      subset.assign(all.begin(), all.begin() + b);
      std::sort(subset.begin(), subset.end());
    }
  }

  std::vector<CorrelationMatrix> corr(N);
  parallel_for(N, [&](std::size_t s) {
    corr[s] = estimate_correlation(data(rows[s], Eigen::all), kind);
  });

  StarsResult result;
  const std::int64_t pairs = pair_count(d);
  double running_max = 0.0;
  std::vector<BinaryGraph> graphs(N);
  std::vector<char> infeasible(N);

  for (double lambda : grid) {
    std::fill(infeasible.begin(), infeasible.end(), 0);
    parallel_for(N, [&](std::size_t s) {
      ClimeConfig cc;
      cc.lambda = lambda;
      try {
        graphs[s] = graph_from_estimate(clime_estimate(corr[s], cc), cc.gamma,
                                        cc.zero_tol);
      } catch (const InfeasibleError&) {
        infeasible[s] = 1;
      }
    });

    double instability = 0.5;
    if (std::none_of(infeasible.begin(), infeasible.end(),
                     [](char c) { return c != 0; })) {
      std::vector<int> freq(static_cast<std::size_t>(pairs), 0);
      for (const auto& g : graphs)
        for (const auto& e : g.edges()) ++freq[pair_index(e.j, e.k, d)];
      double total = 0.0;
      for (int f : freq) total += edge_instability(static_cast<double>(f) / N);
      instability = pairs > 0 ? total / static_cast<double>(pairs) : 0.0;
    }
    running_max = std::max(running_max, instability);
    result.grid.push_back(lambda);
    result.instability.push_back(instability);
    result.monotone_instability.push_back(running_max);
    if (running_max > cfg.beta) break;
  }

  // The monotone curve is nondecreasing along the descending grid, so the
  // admissible points form a prefix.
  std::size_t admissible = 0;
  while (admissible < result.monotone_instability.size() &&
         result.monotone_instability[admissible] <= cfg.beta)
    ++admissible;
  if (admissible == 0) {
    result.lambda = grid.back();
    result.no_stable_lambda = true;
  } else {
    result.lambda = result.grid[admissible - 1];
  }
  return result;
}

}  // namespace mgk
