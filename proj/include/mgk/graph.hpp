#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mgk {

// Unordered node pair, 0-based internally with j < k. External formats
// (edge lists, JSON, CSV) shift to 1-based.
struct Edge {
  int j = 0;
  int k = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Number of unordered pairs on `dim` nodes.
inline std::int64_t pair_count(int dim) {
  return static_cast<std::int64_t>(dim) * (dim - 1) / 2;
}

/// Position of pair (j,k), j<k, in lexicographic upper-triangle order.
inline std::int64_t pair_index(int j, int k, int dim) {
  return static_cast<std::int64_t>(j) * (2 * dim - j - 1) / 2 + (k - j - 1);
}

/// Inverse of pair_index.
Edge pair_at(std::int64_t index, int dim);

// Undirected simple graph on a fixed node set, stored as a sorted edge set.
class BinaryGraph {
 public:
  BinaryGraph() = default;
  explicit BinaryGraph(int dim);
  // Edges may come in either orientation and with duplicates; they are
  // canonicalized. Self-loops or out-of-range nodes throw.
  BinaryGraph(int dim, std::vector<Edge> edges);

  static BinaryGraph complete(int dim);
  // Nonzero off-diagonal upper-triangle entries become edges.
  static BinaryGraph from_adjacency(const Eigen::MatrixXi& adjacency);

  int dim() const { return dim_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges_.size());
  }
  bool contains(int j, int k) const;

  Eigen::MatrixXi adjacency() const;

  // Relabel node i as perm[i].
  BinaryGraph permuted(std::span<const int> perm) const;

  friend bool operator==(const BinaryGraph&, const BinaryGraph&) = default;

 private:
  int dim_ = 0;
  std::vector<Edge> edges_;
};

std::int64_t edge_count(const BinaryGraph& g);

/// Cardinality of the symmetric difference of the edge sets.
std::int64_t hamming_distance(const BinaryGraph& a, const BinaryGraph& b);

/// Graph whose edges are the pairs where a and b disagree.
BinaryGraph symmetric_difference(const BinaryGraph& a, const BinaryGraph& b);

// Edge-list text format: "# d=<dim> s=<count>" then one "j k" line per edge,
// 1-based, j < k, lexicographically sorted.
void write_edge_list(std::ostream& out, const BinaryGraph& g);
std::string to_edge_list(const BinaryGraph& g);
BinaryGraph read_edge_list(std::istream& in);

}  // namespace mgk
