#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgk/dataset.hpp"
#include "mgk/graph.hpp"
#include "mgk/median.hpp"
#include "mgk/stars.hpp"

namespace mgk {

// NP pools every observation into one matrix and estimates a single graph;
// Pearson and Kendall estimate one graph per dataset and aggregate them with
// the sparse median.
enum class PipelineKind { NP, Pearson, Kendall };

PipelineKind parse_pipeline_kind(const std::string& name);
std::string to_string(PipelineKind kind);

// How boundary ties in the top-s selection are handled. Score breaks count
// ties by the mean |Omega_jk| across datasets, then lexicographically, and
// never fails.
enum class TieMode { Error, Lexicographic, Score };

TieMode parse_tie_mode(const std::string& name);

struct Tuning {
  // Fixed lambda per dataset; a single value is applied to every dataset.
  // Empty means StARS selects each lambda.
  std::vector<double> fixed_lambdas;
  StarsConfig stars;
};

struct PipelineOptions {
  PipelineKind kind = PipelineKind::Kendall;
  std::int64_t s = 0;
  TieMode ties = TieMode::Error;
  Tuning tuning;
  double gamma = 0.0;
  // Extension: keep pairs with count >= this instead of fixing s.
  std::optional<int> s_from_counts;
};

struct PipelineResult {
  PipelineKind kind = PipelineKind::Kendall;
  MedianResult median;
  /// One per dataset (a single pooled graph for NP).
  std::vector<BinaryGraph> dataset_graphs;
  std::vector<double> lambdas;
  std::vector<bool> no_stable_lambda;
  /// Mean |Omega_jk| over datasets, indexed by pair_index.
  std::vector<double> scores;
  /// All pairs, most confident first; the ROC sweep walks this order.
  std::vector<std::int64_t> ranking;
};

PipelineResult run_pipeline(const DatasetCollection& inputs,
                            const PipelineOptions& options);

}  // namespace mgk
