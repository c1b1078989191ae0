#include "mgk/median.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "mgk/error.hpp"

namespace mgk {

EdgeCountTable::EdgeCountTable(int dim, int graphs)
    : dim_(dim), graphs_(graphs),
      counts_(static_cast<std::size_t>(pair_count(dim)), 0) {}

int EdgeCountTable::count(int j, int k) const {
  if (j > k) std::swap(j, k);
  return counts_[pair_index(j, k, dim_)];
}

namespace {

void require_common_dim(std::span<const BinaryGraph> graphs) {
  if (graphs.empty()) {
    throw Error(ErrorKind::EmptyInput, "no graphs to aggregate");
  }
  for (const auto& g : graphs) {
    if (g.dim() != graphs.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "graphs to aggregate have different dimensions");
    }
  }
}

std::string format_pairs(const std::vector<Edge>& pairs) {
  std::string out;
  for (const auto& e : pairs) {
    if (!out.empty()) out += ", ";
    out += "(" + std::to_string(e.j + 1) + "," + std::to_string(e.k + 1) + ")";
  }
  return out;
}

MedianResult finish(std::span<const BinaryGraph> graphs, BinaryGraph g,
                    EdgeCountTable counts, std::vector<Edge> ties) {
  MedianResult result;
  result.s = g.edge_count();
  result.per_dataset_distances.reserve(graphs.size());
  for (const auto& gt : graphs)
    result.per_dataset_distances.push_back(hamming_distance(g, gt));
  result.graph = std::move(g);
  result.counts = std::move(counts);
  result.tie_report = std::move(ties);
  return result;
}

}  // namespace

EdgeCountTable edge_counts(std::span<const BinaryGraph> graphs) {
  require_common_dim(graphs);
  const int d = graphs.front().dim();
  EdgeCountTable table(d, static_cast<int>(graphs.size()));
  for (const auto& g : graphs)
    for (const auto& e : g.edges()) table.increment(pair_index(e.j, e.k, d));
  return table;
}

MedianResult sparse_median(std::span<const BinaryGraph> graphs, std::int64_t s,
                           TiePolicy policy,
                           std::span<const double> tie_scores) {
  require_common_dim(graphs);
  const int d = graphs.front().dim();
  const std::int64_t pairs = pair_count(d);
  if (s < 0 || s > pairs) {
    throw Error(ErrorKind::InvalidSparsity,
                "s=" + std::to_string(s) + " outside [0, " +
                    std::to_string(pairs) + "]");
  }
  if (!tie_scores.empty() && static_cast<std::int64_t>(tie_scores.size()) != pairs) {
    throw Error(ErrorKind::DimensionMismatch,
                "tie scores must have one entry per node pair");
  }

  EdgeCountTable counts = edge_counts(graphs);
  const auto zeta = counts.counts();
  const bool scored = !tie_scores.empty();

  std::vector<std::int64_t> order(static_cast<std::size_t>(pairs));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  // pair_index order is lexicographic, so the final key is the index itself.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     if (zeta[a] != zeta[b]) return zeta[a] > zeta[b];
                     if (scored && tie_scores[a] != tie_scores[b])
                       return tie_scores[a] > tie_scores[b];
                     return a < b;
                   });

  std::vector<Edge> ties;
  if (s > 0 && s < pairs) {
    const std::int64_t last_in = order[s - 1];
    const std::int64_t first_out = order[s];
    if (zeta[last_in] == zeta[first_out]) {
      const int boundary = zeta[last_in];
      for (std::int64_t p = 0; p < pairs; ++p)
        if (zeta[p] == boundary) ties.push_back(pair_at(p, d));

      const bool resolved =
          scored && tie_scores[last_in] != tie_scores[first_out];
      if (policy == TiePolicy::Error && !resolved) {
        std::vector<Edge> unresolved;
        for (std::int64_t p = 0; p < pairs; ++p) {
          if (zeta[p] == boundary &&
              (!scored || tie_scores[p] == tie_scores[last_in]))
            unresolved.push_back(pair_at(p, d));
        }
        std::vector<std::pair<int, int>> external;
        for (const auto& e : unresolved) external.emplace_back(e.j + 1, e.k + 1);
        throw TieAtRankSError(std::move(external),
                              "edge counts tie at rank s=" + std::to_string(s) +
                                  ": " + format_pairs(unresolved));
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(s));
  for (std::int64_t r = 0; r < s; ++r) edges.push_back(pair_at(order[r], d));
  return finish(graphs, BinaryGraph(d, std::move(edges)), std::move(counts),
                std::move(ties));
}

MedianResult median_from_count_threshold(std::span<const BinaryGraph> graphs,
                                         int min_count) {
  require_common_dim(graphs);
  const int d = graphs.front().dim();
  EdgeCountTable counts = edge_counts(graphs);
  std::vector<Edge> edges;
  for (std::int64_t p = 0; p < pair_count(d); ++p)
    if (counts.count_at(p) >= min_count) edges.push_back(pair_at(p, d));
  return finish(graphs, BinaryGraph(d, std::move(edges)), std::move(counts),
                {});
}

std::int64_t median_objective(std::span<const BinaryGraph> graphs,
                              const BinaryGraph& g) {
  std::int64_t total = 0;
  for (const auto& gt : graphs) total += hamming_distance(g, gt);
  return total;
}

bool verify_median_oracle(std::span<const BinaryGraph> graphs, std::int64_t s,
                          const BinaryGraph& candidate) {
  require_common_dim(graphs);
  const int d = graphs.front().dim();
  const std::int64_t pairs = pair_count(d);
  if (pairs > 15) {
    throw Error(ErrorKind::TooLarge,
                "exhaustive median check limited to 15 node pairs, got " +
                    std::to_string(pairs));
  }
  if (candidate.dim() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "candidate dimension differs from the input graphs");
  }
  if (candidate.edge_count() != s) return false;

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::uint32_t limit = 1u << pairs;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) != s) continue;
    std::vector<Edge> edges;
    for (std::int64_t p = 0; p < pairs; ++p)
      if (mask & (1u << p)) edges.push_back(pair_at(p, d));
    best = std::min(best, median_objective(graphs, BinaryGraph(d, edges)));
  }
  return median_objective(graphs, candidate) == best;
}

}  // namespace mgk
