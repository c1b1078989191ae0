#include "mgk/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "mgk/clime.hpp"
#include "mgk/error.hpp"
#include "mgk/evaluation.hpp"
#include "mgk/parallel.hpp"

namespace mgk {

void DatasetCollection::validate() const {
  if (datasets.empty()) {
    throw Error(ErrorKind::EmptyInput, "no datasets given");
  }
  const auto d = datasets.front().cols();
  for (std::size_t t = 0; t < datasets.size(); ++t) {
    if (datasets[t].cols() != d) {
      throw Error(ErrorKind::DimensionMismatch,
                  "dataset " + std::to_string(t + 1) + " has " +
                      std::to_string(datasets[t].cols()) + " variables, expected " +
                      std::to_string(d));
    }
    if (datasets[t].rows() < 2) {
      throw Error(ErrorKind::InsufficientData,
                  "dataset " + std::to_string(t + 1) +
                      " needs at least two observations");
    }
  }
  if (d < 2) {
    throw Error(ErrorKind::DimensionMismatch, "datasets need at least 2 variables");
  }
}

PipelineKind parse_pipeline_kind(const std::string& name) {
  if (name == "np" || name == "NP") return PipelineKind::NP;
  if (name == "pearson" || name == "Pearson") return PipelineKind::Pearson;
  if (name == "kendall" || name == "Kendall") return PipelineKind::Kendall;
  throw Error(ErrorKind::InvalidConfig, "unknown pipeline '" + name + "'");
}

std::string to_string(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::NP: return "np";
    case PipelineKind::Pearson: return "pearson";
    case PipelineKind::Kendall: return "kendall";
  }
  return "unknown";
}

TieMode parse_tie_mode(const std::string& name) {
  if (name == "error") return TieMode::Error;
  if (name == "lexicographic") return TieMode::Lexicographic;
  if (name == "score") return TieMode::Score;
  throw Error(ErrorKind::InvalidConfig, "unknown tie policy '" + name + "'");
}

namespace {

[[noreturn]] void rethrow_with_context(const Error& e, const std::string& where) {
  const std::string msg = where + ": " + e.what();
  if (const auto* inf = dynamic_cast<const InfeasibleError*>(&e))
    throw InfeasibleError(inf->column(), msg);
  if (const auto* deg = dynamic_cast<const DegenerateColumnError*>(&e))
    throw DegenerateColumnError(deg->column(), msg);
  throw Error(e.kind(), msg);
}

struct DatasetEstimate {
  Matrix omega;
  BinaryGraph graph;
  double lambda = 0.0;
  bool no_stable = false;
};

DatasetEstimate estimate_one(const Matrix& data, CorrelationKind kind,
                             const PipelineOptions& options, std::size_t t) {
  DatasetEstimate out;
  const auto& fixed = options.tuning.fixed_lambdas;
  if (!fixed.empty()) {
    out.lambda = fixed.size() == 1 ? fixed.front() : fixed.at(t);
  } else {
    StarsConfig cfg = options.tuning.stars;
    cfg.stream = t;
    const StarsResult sel = stars_select(data, kind, cfg);
    out.lambda = sel.lambda;
    out.no_stable = sel.no_stable_lambda;
  }
  ClimeConfig cc;
  cc.lambda = out.lambda;
  cc.gamma = options.gamma;
  const ConcentrationEstimate est =
      clime_estimate(estimate_correlation(data, kind), cc);
  out.graph = graph_from_estimate(est, cc.gamma, cc.zero_tol);
  out.omega = est.values;
  return out;
}

std::vector<double> abs_upper(const Matrix& omega) {
  const int d = static_cast<int>(omega.rows());
  std::vector<double> scores(static_cast<std::size_t>(pair_count(d)));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k)
      scores[pair_index(j, k, d)] = std::abs(omega(j, k));
  return scores;
}

PipelineResult run_pooled(const DatasetCollection& inputs,
                          const PipelineOptions& options) {
  const int d = inputs.dim();
  Eigen::Index rows = 0;
  for (const auto& m : inputs.datasets) rows += m.rows();
  Matrix pooled(rows, d);
  Eigen::Index at = 0;
  for (const auto& m : inputs.datasets) {
    pooled.middleRows(at, m.rows()) = m;
    at += m.rows();
  }

  DatasetEstimate est;
  try {
    est = estimate_one(pooled, CorrelationKind::Pearson, options, 0);
  } catch (const Error& e) {
    rethrow_with_context(e, "pooled data");
  }

  PipelineResult result;
  result.kind = PipelineKind::NP;
  result.scores = abs_upper(est.omega);
  result.ranking = rank_pairs(d, result.scores);
  result.lambdas = {est.lambda};
  result.no_stable_lambda = {est.no_stable};
  result.dataset_graphs = {est.graph};

  const std::int64_t pairs = pair_count(d);
  std::int64_t s = options.s;
  if (options.s_from_counts) {
    s = est.graph.edge_count();
  } else if (s < 0 || s > pairs) {
    throw Error(ErrorKind::InvalidSparsity,
                "s=" + std::to_string(s) + " outside [0, " + std::to_string(pairs) + "]");
  }
  std::vector<Edge> edges;
  for (std::int64_t r = 0; r < s; ++r) edges.push_back(pair_at(result.ranking[r], d));

  MedianResult& m = result.median;
  m.graph = BinaryGraph(d, std::move(edges));
  m.s = s;
  m.counts = edge_counts(result.dataset_graphs);
  if (s > 0 && s < pairs) {
    const double boundary = result.scores[result.ranking[s - 1]];
    if (boundary == result.scores[result.ranking[s]]) {
      for (std::int64_t p = 0; p < pairs; ++p)
        if (result.scores[p] == boundary) m.tie_report.push_back(pair_at(p, d));
    }
  }
  m.per_dataset_distances = {hamming_distance(m.graph, est.graph)};
  return result;
}

}  // namespace

PipelineResult run_pipeline(const DatasetCollection& inputs,
                            const PipelineOptions& options) {
  inputs.validate();
  const auto& fixed = options.tuning.fixed_lambdas;
  if (fixed.size() > 1 && static_cast<int>(fixed.size()) != inputs.size()) {
    throw Error(ErrorKind::InvalidConfig,
                "got " + std::to_string(fixed.size()) + " lambdas for " +
                    std::to_string(inputs.size()) + " datasets");
  }
  if (options.kind == PipelineKind::NP) return run_pooled(inputs, options);

  const CorrelationKind kind = options.kind == PipelineKind::Kendall
                                   ? CorrelationKind::Kendall
                                   : CorrelationKind::Pearson;
  const auto T = static_cast<std::size_t>(inputs.size());
  const int d = inputs.dim();
  std::vector<DatasetEstimate> estimates(T);
  parallel_for(T, [&](std::size_t t) {
    try {
      estimates[t] = estimate_one(inputs.datasets[t], kind, options, t);
    } catch (const Error& e) {
      const std::string label = t < inputs.labels.size() && !inputs.labels[t].empty()
                                    ? inputs.labels[t]
                                    : std::to_string(t + 1);
      rethrow_with_context(e, "dataset " + label);
    }
  });

  PipelineResult result;
  result.kind = options.kind;
  result.scores.assign(static_cast<std::size_t>(pair_count(d)), 0.0);
  for (const auto& est : estimates) {
    result.dataset_graphs.push_back(est.graph);
    result.lambdas.push_back(est.lambda);
    result.no_stable_lambda.push_back(est.no_stable);
    const auto abs_scores = abs_upper(est.omega);
    for (std::size_t p = 0; p < abs_scores.size(); ++p)
      result.scores[p] += abs_scores[p];
  }
  for (auto& v : result.scores) v /= static_cast<double>(T);

  if (options.s_from_counts) {
    result.median = median_from_count_threshold(result.dataset_graphs,
                                                *options.s_from_counts);
  } else {
    switch (options.ties) {
      case TieMode::Error:
        result.median = sparse_median(result.dataset_graphs, options.s,
                                      TiePolicy::Error);
        break;
      case TieMode::Lexicographic:
        result.median = sparse_median(result.dataset_graphs, options.s,
                                      TiePolicy::Lexicographic);
        break;
      case TieMode::Score:
        result.median = sparse_median(result.dataset_graphs, options.s,
                                      TiePolicy::Lexicographic, result.scores);
        break;
    }
  }
  result.ranking = rank_pairs(result.median.counts, result.scores);
  return result;
}

}  // namespace mgk
