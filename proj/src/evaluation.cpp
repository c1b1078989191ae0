#include "mgk/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "mgk/error.hpp"
#include "mgk/io.hpp"

namespace mgk {

double Confusion::tpr() const {
  const auto pos = tp + fn;
  return pos > 0 ? static_cast<double>(tp) / pos : 0.0;
}

double Confusion::fpr() const {
  const auto neg = fp + tn;
  return neg > 0 ? static_cast<double>(fp) / neg : 0.0;
}

double Confusion::precision() const {
  const auto called = tp + fp;
  return called > 0 ? static_cast<double>(tp) / called : 0.0;
}

double Confusion::f1() const {
  const auto denom = 2 * tp + fp + fn;
  return denom > 0 ? 2.0 * tp / denom : 1.0;
}

Confusion confusion(const BinaryGraph& estimate, const BinaryGraph& truth) {
  if (estimate.dim() != truth.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "estimate and truth dimensions differ");
  }
  const std::int64_t wrong = hamming_distance(estimate, truth);
  Confusion c;
  c.tp = (estimate.edge_count() + truth.edge_count() - wrong) / 2;
  c.fp = estimate.edge_count() - c.tp;
  c.fn = truth.edge_count() - c.tp;
  c.tn = pair_count(truth.dim()) - c.tp - c.fp - c.fn;
  return c;
}

std::vector<std::int64_t> rank_pairs(const EdgeCountTable& counts,
                                     std::span<const double> scores) {
  const std::int64_t pairs = pair_count(counts.dim());
  if (!scores.empty() && static_cast<std::int64_t>(scores.size()) != pairs) {
    throw Error(ErrorKind::DimensionMismatch, "one score per pair required");
  }
  const auto zeta = counts.counts();
  std::vector<std::int64_t> order(static_cast<std::size_t>(pairs));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     if (zeta[a] != zeta[b]) return zeta[a] > zeta[b];
                     if (!scores.empty() && scores[a] != scores[b])
                       return scores[a] > scores[b];
                     return a < b;
                   });
  return order;
}

std::vector<std::int64_t> rank_pairs(int dim, std::span<const double> scores) {
  const std::int64_t pairs = pair_count(dim);
  if (static_cast<std::int64_t>(scores.size()) != pairs) {
    throw Error(ErrorKind::DimensionMismatch, "one score per pair required");
  }
  std::vector<std::int64_t> order(static_cast<std::size_t>(pairs));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return scores[a] > scores[b];
                   });
  return order;
}

std::vector<std::int64_t> full_sweep(int dim) {
  std::vector<std::int64_t> s(static_cast<std::size_t>(pair_count(dim) + 1));
  std::iota(s.begin(), s.end(), std::int64_t{0});
  return s;
}

double trapezoid_auc(std::vector<RocPoint> points) {
  points.push_back({0.0, 0.0, 0});
  points.push_back({1.0, 1.0, 0});
  std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.fpr < b.fpr || (a.fpr == b.fpr && a.tpr < b.tpr);
  });
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) *
            (points[i].tpr + points[i - 1].tpr) / 2.0;
  }
  return area;
}

RocCurve roc_sweep(std::span<const std::int64_t> ranking,
                   const BinaryGraph& truth,
                   std::span<const std::int64_t> s_values) {
  const int d = truth.dim();
  const std::int64_t pairs = pair_count(d);
  if (static_cast<std::int64_t>(ranking.size()) != pairs) {
    throw Error(ErrorKind::DimensionMismatch,
                "ranking must list every node pair once");
  }
  std::vector<std::int64_t> sorted_s(s_values.begin(), s_values.end());
  std::sort(sorted_s.begin(), sorted_s.end());
  for (auto s : sorted_s) {
    if (s < 0 || s > pairs) {
      throw Error(ErrorKind::InvalidSparsity,
                  "sweep sparsity " + std::to_string(s) + " out of range");
    }
  }

  // Cumulative true positives along the ranking.
  std::vector<std::int64_t> cum_tp(static_cast<std::size_t>(pairs) + 1, 0);
  for (std::int64_t r = 0; r < pairs; ++r) {
    const Edge e = pair_at(ranking[r], d);
    cum_tp[r + 1] = cum_tp[r] + (truth.contains(e.j, e.k) ? 1 : 0);
  }
  const std::int64_t positives = truth.edge_count();
  const std::int64_t negatives = pairs - positives;

  RocCurve curve;
  for (auto s : sorted_s) {
    const std::int64_t tp = cum_tp[s];
    const std::int64_t fp = s - tp;
    RocPoint p;
    p.s = s;
    p.tpr = positives > 0 ? static_cast<double>(tp) / positives : 0.0;
    p.fpr = negatives > 0 ? static_cast<double>(fp) / negatives : 0.0;
    curve.points.push_back(p);
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "s,fpr,tpr\n";
  for (const auto& p : curve.points)
    out << p.s << ',' << format_double(p.fpr) << ',' << format_double(p.tpr)
        << '\n';
  out << "# auc=" << format_double(curve.auc) << '\n';
}

DiffSummary diff_summary(const BinaryGraph& g1, const std::string& label1,
                         const BinaryGraph& g2, const std::string& label2) {
  if (g1.dim() != g2.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "compared graphs differ in dimension");
  }
  const std::int64_t common =
      (g1.edge_count() + g2.edge_count() - hamming_distance(g1, g2)) / 2;
  return {label1, label2, g1.edge_count(), g2.edge_count(),
          g1.edge_count() - common, g2.edge_count() - common};
}

void write_diff_table(std::ostream& out, std::span<const DiffRow> rows) {
  std::vector<std::vector<std::string>> cells;
  std::string l1, l2;
  for (const auto& row : rows) {
    const auto& s = row.summary;
    if (cells.empty() || s.label1 != l1 || s.label2 != l2) {
      l1 = s.label1;
      l2 = s.label2;
      cells.push_back({"data", l1, l2, l1 + " > " + l2, l1 + " < " + l2});
    }
    cells.push_back({row.name, std::to_string(s.edges_l1),
                     std::to_string(s.edges_l2), std::to_string(s.only_in_l1),
                     std::to_string(s.only_in_l2)});
  }
  std::vector<std::size_t> width(5, 0);
  for (const auto& r : cells)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  for (const auto& r : cells) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c == 0) {
        out << r[c] << std::string(width[c] - r[c].size(), ' ');
      } else {
        out << "  " << std::string(width[c] - r[c].size(), ' ') << r[c];
      }
    }
    out << '\n';
  }
}

}  // namespace mgk
