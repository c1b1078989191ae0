#include "mgk/rank_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "mgk/error.hpp"
#include "mgk/parallel.hpp"

namespace mgk {

namespace {

std::int64_t tied_pairs_in_runs(std::span<const double> sorted) {
  std::int64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      ties += static_cast<std::int64_t>(run) * (run - 1) / 2;
      run = 1;
    }
  }
  return ties;
}

// Sorts `ys` ascending and returns the number of strict inversions.
std::int64_t merge_count(std::vector<double>& ys, std::vector<double>& buf) {
  const std::size_t n = ys.size();
  buf.resize(n);
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (ys[b] < ys[a]) {
          swaps += static_cast<std::int64_t>(mid - a);
          buf[out++] = ys[b++];
        } else {
          buf[out++] = ys[a++];
        }
      }
      while (a < mid) buf[out++] = ys[a++];
      while (b < hi) buf[out++] = ys[b++];
    }
    ys.swap(buf);
  }
  return swaps;
}

// xs ascending; ys aligned with xs and ascending within each run of equal xs.
// ys is consumed (left sorted).
KendallCounts counts_presorted(std::span<const double> xs,
                               std::vector<double>& ys,
                               std::vector<double>& buf) {
  const auto n = static_cast<std::int64_t>(xs.size());
  const std::int64_t total = n * (n - 1) / 2;
  const std::int64_t x_ties = tied_pairs_in_runs(xs);

  std::int64_t joint_ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= xs.size(); ++i) {
    if (i < xs.size() && xs[i] == xs[i - 1] && ys[i] == ys[i - 1]) {
      ++run;
    } else {
      joint_ties += static_cast<std::int64_t>(run) * (run - 1) / 2;
      run = 1;
    }
  }

  const std::int64_t discordant = merge_count(ys, buf);
  const std::int64_t y_ties = tied_pairs_in_runs(ys);
  return {total - x_ties - y_ties + joint_ties - discordant, discordant};
}

void check_finite(std::span<const double> v) {
  for (double value : v) {
    if (std::isnan(value)) {
      throw Error(ErrorKind::DataFormat, "NaN in data passed to Kendall's tau");
    }
  }
}

}  // namespace

KendallCounts kendall_counts(std::span<const double> x,
                             std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "Kendall's tau needs equal-length vectors, got " +
                    std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  check_finite(x);
  check_finite(y);
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  std::vector<double> xs(x.size()), ys(y.size()), buf;
  for (std::size_t i = 0; i < order.size(); ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  return counts_presorted(xs, ys, buf);
}

double kendall_tau_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "Kendall's tau needs equal-length vectors");
  }
  if (x.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "Kendall's tau needs at least two observations");
  }
  const KendallCounts c = kendall_counts(x, y);
  const double n = static_cast<double>(x.size());
  return static_cast<double>(c.concordant - c.discordant) /
         (n * (n - 1.0) / 2.0);
}

KendallTauMatrix kendall_tau_matrix(const Matrix& data) {
  const auto n = static_cast<std::size_t>(data.rows());
  const int d = static_cast<int>(data.cols());
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData,
                "Kendall's tau needs at least two observations, got " +
                    std::to_string(n));
  }
  check_finite({data.data(), static_cast<std::size_t>(data.size())});

  Matrix taus = Matrix::Identity(d, d);
  const double pairs = static_cast<double>(n) * (n - 1.0) / 2.0;

  parallel_for(static_cast<std::size_t>(d), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return data(a, j) < data(b, j);
                     });
    std::vector<double> xs(n), ys(n), buf;
    for (std::size_t i = 0; i < n; ++i) xs[i] = data(order[i], j);

    for (int k = j + 1; k < d; ++k) {
      for (std::size_t i = 0; i < n; ++i) ys[i] = data(order[i], k);
      // Within runs of tied x, order by y.
      for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && xs[hi] == xs[lo]) ++hi;
        if (hi - lo > 1) std::sort(ys.begin() + lo, ys.begin() + hi);
        lo = hi;
      }
      const KendallCounts c = counts_presorted(xs, ys, buf);
      // Only the (j, k) and (k, j) slots of row j are written here.
      taus(j, k) = static_cast<double>(c.concordant - c.discordant) / pairs;
    }
  });

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) taus(k, j) = taus(j, k);
  return {std::move(taus)};
}

CorrelationMatrix sine_transform(const KendallTauMatrix& tau) {
  const int d = tau.dim();
  Matrix r = Matrix::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const double v = std::sin(std::numbers::pi / 2.0 * tau.taus(j, k));
      r(j, k) = v;
      r(k, j) = v;
    }
  }
  return make_correlation(std::move(r));
}

CorrelationMatrix pearson_matrix(const Matrix& data) {
  const auto n = data.rows();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData,
                "Pearson correlation needs at least two observations");
  }
  const Matrix centered = data.rowwise() - data.colwise().mean();
  Vector scale = centered.colwise().norm();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (!(scale(j) > 0.0)) {
      throw DegenerateColumnError(
          static_cast<int>(j) + 1,
          "column " + std::to_string(j + 1) + " has zero sample variance");
    }
  }
  const Matrix normalized = centered * scale.cwiseInverse().asDiagonal();
  return make_correlation(normalized.transpose() * normalized);
}

CorrelationMatrix::CorrelationMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "correlation matrix must be square");
  }
  const auto d = values_.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (values_(j, j) != 1.0) {
      throw Error(ErrorKind::DataFormat,
                  "correlation matrix diagonal entry " + std::to_string(j + 1) +
                      " is not 1");
    }
    for (Eigen::Index k = j + 1; k < d; ++k) {
      const double v = values_(j, k);
      if (v != values_(k, j) || !(v >= -1.0 && v <= 1.0)) {
        throw Error(ErrorKind::DataFormat,
                    "correlation matrix entry (" + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) +
                        ") is asymmetric or outside [-1, 1]");
      }
    }
  }
}

CorrelationMatrix CorrelationMatrix::identity(int dim) {
  return CorrelationMatrix(Matrix::Identity(dim, dim));
}

CorrelationMatrix make_correlation(Matrix values) {
  const auto d = values.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    values(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < d; ++k) {
      const double v = std::clamp(values(j, k), -1.0, 1.0);
      values(j, k) = v;
      values(k, j) = v;
    }
  }
  return CorrelationMatrix(std::move(values));
}

}  // namespace mgk
