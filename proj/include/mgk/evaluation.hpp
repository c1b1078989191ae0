#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mgk/graph.hpp"
#include "mgk/median.hpp"

namespace mgk {

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  double tpr() const;
  double fpr() const;
  double precision() const;
  double f1() const;
};

/// Counts over the d(d-1)/2 upper-triangle pairs.
Confusion confusion(const BinaryGraph& estimate, const BinaryGraph& truth);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  std::int64_t s = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // ordered by s
  double auc = 0.0;
};

// Pair order for the sweep, most confident first. With counts: by count, then
// by score, then lexicographically. Scores alone: by score, then
// lexicographically. Scores are indexed by pair_index.
std::vector<std::int64_t> rank_pairs(const EdgeCountTable& counts,
                                     std::span<const double> scores = {});
std::vector<std::int64_t> rank_pairs(int dim, std::span<const double> scores);

/// Every s in 0..d(d-1)/2.
std::vector<std::int64_t> full_sweep(int dim);

// Top-s graph of the ranking for each s, scored against truth. The AUC is the
// trapezoidal area under the points sorted by (fpr, tpr) with (0,0) and (1,1)
// appended.
RocCurve roc_sweep(std::span<const std::int64_t> ranking,
                   const BinaryGraph& truth,
                   std::span<const std::int64_t> s_values);

double trapezoid_auc(std::vector<RocPoint> points);

void write_roc_csv(std::ostream& out, const RocCurve& curve);

struct DiffSummary {
  std::string label1;
  std::string label2;
  std::int64_t edges_l1 = 0;
  std::int64_t edges_l2 = 0;
  std::int64_t only_in_l1 = 0;
  std::int64_t only_in_l2 = 0;
};

DiffSummary diff_summary(const BinaryGraph& g1, const std::string& label1,
                         const BinaryGraph& g2, const std::string& label2);

struct DiffRow {
  std::string name;
  DiffSummary summary;
};

// Aligned plain-text table with columns data | L1 | L2 | L1 > L2 | L1 < L2. A
// header line is emitted whenever the label pair changes.
void write_diff_table(std::ostream& out, std::span<const DiffRow> rows);

}  // namespace mgk
