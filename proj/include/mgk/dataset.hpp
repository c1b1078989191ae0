#pragma once

#include <string>
#include <vector>

#include "mgk/correlation.hpp"

namespace mgk {

// T observation matrices over a shared set of d variables; dataset t is
// n_t x d and the n_t may differ.
struct DatasetCollection {
  std::vector<Matrix> datasets;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(datasets.size()); }
  int dim() const {
    return datasets.empty() ? 0 : static_cast<int>(datasets.front().cols());
  }
  /// Throws EmptyInput, DimensionMismatch or InsufficientData.
  void validate() const;
};

}  // namespace mgk
