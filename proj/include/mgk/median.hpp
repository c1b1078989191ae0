#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgk/graph.hpp"

namespace mgk {

// Per-pair occurrence counts across T graphs, stored densely in pair_index
// order.
class EdgeCountTable {
 public:
  EdgeCountTable() = default;
  EdgeCountTable(int dim, int graphs);

  int dim() const { return dim_; }
  int graphs() const { return graphs_; }
  int count(int j, int k) const;
  int count_at(std::int64_t pair) const { return counts_[pair]; }
  void increment(std::int64_t pair) { ++counts_[pair]; }
  std::span<const int> counts() const { return counts_; }

 private:
  int dim_ = 0;
  int graphs_ = 0;
  std::vector<int> counts_;
};

enum class TiePolicy { Error, Lexicographic };

struct MedianResult {
  BinaryGraph graph;
  std::int64_t s = 0;
  EdgeCountTable counts;
  // Pairs whose count equals the count at the rank-s boundary when ranks s
  // and s+1 tie; empty iff the top-s set is unique.
  std::vector<Edge> tie_report;
  std::vector<std::int64_t> per_dataset_distances;
};

EdgeCountTable edge_counts(std::span<const BinaryGraph> graphs);

// The s pairs of highest count. Ranking is by count (descending), then by
// `tie_scores` (descending, indexed by pair_index) when given, then by (j,k).
// Under TiePolicy::Error a boundary tie that the scores do not resolve throws
// TieAtRankSError.
MedianResult sparse_median(std::span<const BinaryGraph> graphs, std::int64_t s,
                           TiePolicy policy = TiePolicy::Error,
                           std::span<const double> tie_scores = {});

// Extension, not the fixed-sparsity estimator: keep every pair with count at
// least `min_count`.
MedianResult median_from_count_threshold(std::span<const BinaryGraph> graphs,
                                         int min_count);

/// Sum of Hamming distances from g to each graph.
std::int64_t median_objective(std::span<const BinaryGraph> graphs,
                              const BinaryGraph& g);

// Exhaustive check that `candidate` minimizes the summed Hamming distance over
// every graph with exactly s edges. Limited to d(d-1)/2 <= 15 pairs; larger
// instances throw TooLarge.
bool verify_median_oracle(std::span<const BinaryGraph> graphs, std::int64_t s,
                          const BinaryGraph& candidate);

}  // namespace mgk
