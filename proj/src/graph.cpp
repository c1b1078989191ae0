#include "mgk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "mgk/error.hpp"

namespace mgk {

Edge pair_at(std::int64_t index, int dim) {
  int j = 0;
  std::int64_t row = dim - 1;
  while (index >= row) {
    index -= row;
    ++j;
    --row;
  }
  return {j, j + 1 + static_cast<int>(index)};
}

BinaryGraph::BinaryGraph(int dim) : dim_(dim) {
  if (dim < 1) {
    throw Error(ErrorKind::InvalidConfig, "graph dimension must be positive");
  }
}

BinaryGraph::BinaryGraph(int dim, std::vector<Edge> edges)
    : BinaryGraph(dim) {
  for (auto& e : edges) {
    if (e.j == e.k) {
      throw Error(ErrorKind::DataFormat,
                  "self-loop on node " + std::to_string(e.j + 1));
    }
    if (e.j > e.k) std::swap(e.j, e.k);
    if (e.j < 0 || e.k >= dim) {
      throw Error(ErrorKind::DataFormat,
                  "edge (" + std::to_string(e.j + 1) + "," +
                      std::to_string(e.k + 1) + ") outside dimension " +
                      std::to_string(dim));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

BinaryGraph BinaryGraph::complete(int dim) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(pair_count(dim)));
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) edges.push_back({j, k});
  return BinaryGraph(dim, std::move(edges));
}

BinaryGraph BinaryGraph::from_adjacency(const Eigen::MatrixXi& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "adjacency must be square");
  }
  const int d = static_cast<int>(adjacency.rows());
  std::vector<Edge> edges;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k)
      if (adjacency(j, k) != 0) edges.push_back({j, k});
  return BinaryGraph(d, std::move(edges));
}

bool BinaryGraph::contains(int j, int k) const {
  if (j > k) std::swap(j, k);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{j, k});
}

Eigen::MatrixXi BinaryGraph::adjacency() const {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(dim_, dim_);
  for (const auto& e : edges_) {
    a(e.j, e.k) = 1;
    a(e.k, e.j) = 1;
  }
  return a;
}

BinaryGraph BinaryGraph::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "permutation length does not match graph dimension");
  }
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_) edges.push_back({perm[e.j], perm[e.k]});
  return BinaryGraph(dim_, std::move(edges));
}

std::int64_t edge_count(const BinaryGraph& g) { return g.edge_count(); }

namespace {

void require_same_dim(const BinaryGraph& a, const BinaryGraph& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "graph dimensions differ: " + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

BinaryGraph symmetric_difference(const BinaryGraph& a, const BinaryGraph& b) {
  require_same_dim(a, b);
  std::vector<Edge> out;
  std::set_symmetric_difference(a.edges().begin(), a.edges().end(),
                                b.edges().begin(), b.edges().end(),
                                std::back_inserter(out));
  return BinaryGraph(a.dim(), std::move(out));
}

std::int64_t hamming_distance(const BinaryGraph& a, const BinaryGraph& b) {
  require_same_dim(a, b);
  // |A Δ B| = |A| + |B| - 2|A ∩ B|, intersection by a linear merge.
  std::int64_t common = 0;
  auto ia = a.edges().begin();
  auto ib = b.edges().begin();
  while (ia != a.edges().end() && ib != b.edges().end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return a.edge_count() + b.edge_count() - 2 * common;
}

void write_edge_list(std::ostream& out, const BinaryGraph& g) {
  out << "# d=" << g.dim() << " s=" << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.j + 1 << ' ' << e.k + 1 << '\n';
}

std::string to_edge_list(const BinaryGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

BinaryGraph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::DataFormat, "edge list is empty");
  }
  int dim = 0;
  long long declared = -1;
  if (std::sscanf(line.c_str(), "# d=%d s=%lld", &dim, &declared) != 2) {
    throw Error(ErrorKind::DataFormat, "malformed edge list header: " + line);
  }
  std::vector<Edge> edges;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int j = 0, k = 0;
    if (!(ls >> j >> k)) {
      throw Error(ErrorKind::DataFormat,
                  "malformed edge on line " + std::to_string(lineno));
    }
    edges.push_back({j - 1, k - 1});
  }
  BinaryGraph g(dim, std::move(edges));
  if (g.edge_count() != declared) {
    throw Error(ErrorKind::DataFormat,
                "edge list header declares s=" + std::to_string(declared) +
                    " but contains " + std::to_string(g.edge_count()) +
                    " distinct edges");
  }
  return g;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DegenerateColumn: return "DegenerateColumn";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::TieAtRankS: return "TieAtRankS";
    case ErrorKind::InvalidSparsity: return "InvalidSparsity";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidPattern: return "InvalidPattern";
    case ErrorKind::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::DataFormat: return "DataFormat";
  }
  return "Unknown";
}

}  // namespace mgk
