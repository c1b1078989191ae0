#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mgk/correlation.hpp"
#include "mgk/graph.hpp"
#include "mgk/rng.hpp"

namespace mgk {

struct GraphPattern {
  enum class Kind { Banded, Clustered, Hub, Random, ScaleFree };

  Kind kind = Kind::Banded;
  int bandwidth = 1;
  int groups = 5;
  double within_prob = 0.3;
  /// 0 means ceil(d / 20).
  int hub_count = 0;
  /// 0 means 3 / d.
  double edge_prob = 0.0;

  static GraphPattern banded(int bandwidth = 1);
  static GraphPattern clustered(int groups = 5, double within_prob = 0.3);
  static GraphPattern hub(int hub_count = 0);
  static GraphPattern random(double edge_prob = 0.0);
  static GraphPattern scale_free();

  /// "banded", "clustered", "hub", "random" or "scale-free".
  static GraphPattern parse(const std::string& name);
  std::string name() const;
};

BinaryGraph generate_pattern(const GraphPattern& pattern, int d, Rng& rng);

// Precision v*A(g) + delta*I with delta = |lambda_min(v*A(g))| + 0.1,
// inverted and rescaled to unit diagonal.
CorrelationMatrix covariance_from_graph(const BinaryGraph& g,
                                        double off_value = 0.3);

struct PerturbedModel {
  BinaryGraph graph;
  CorrelationMatrix sigma;
  /// Largest amount an eigenvalue was raised by the repair (0 if none).
  double eigen_adjustment = 0.0;
};

// Adds k uniformly chosen non-edges, overwrites those covariance entries with
// sigma_fill, then clips eigenvalues at 1e-3 and rescales to unit diagonal if
// the overwrite left the matrix without that margin.
PerturbedModel perturb_dataset_model(const BinaryGraph& base_graph,
                                     const CorrelationMatrix& base_sigma,
                                     int k, double sigma_fill, Rng& rng);

/// Marginal transform constants, closed forms of the Gaussian integrals.
struct TransformConstants {
  static double c2();   // sqrt(E|Z|)
  static double c3();   // sd of Phi(Z)
  static double c4();   // sqrt(E Z^6)
  static double c5a();  // E exp(Z)
  static double c5b();  // sd of exp(Z)
};

// Inverse marginal transform h_k^{-1}, k in 1..5. Each maps a standard normal
// to a centered, unit-variance variable and is strictly increasing.
double npn_transform_inverse(int k, double x);

struct ConstantCheck {
  std::string name;
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// Evaluates every defining integral numerically.
std::vector<ConstantCheck> transform_constant_checks();

/// Throws InternalError if any constant disagrees with quadrature by more
/// than tol. Runs the check at most once per process when tol is default.
void verify_transform_constants(double tol = 1e-8);

enum class MarginalKind { Nonparanormal, Gaussian };

struct SampledDataset {
  Matrix observed;
  Matrix latent;
};

// Draws Z ~ N(0, sigma) by Cholesky and applies h^{-1} cyclically over the
// columns (column j uses transform (j mod 5) + 1), or the identity for
// MarginalKind::Gaussian.
SampledDataset sample_dataset(const CorrelationMatrix& sigma, int n, Rng& rng,
                              MarginalKind marginals = MarginalKind::Nonparanormal);

struct SyntheticScenario {
  int d = 40;
  int datasets = 10;
  int n = 100;
  GraphPattern pattern;
  int perturb_edges = 10;
  double off_value = 0.3;
  double sigma_fill = 0.1;
  std::uint64_t seed = 1;
  MarginalKind marginals = MarginalKind::Nonparanormal;

  void validate() const;
};

struct ScenarioData {
  BinaryGraph median_graph;
  CorrelationMatrix base_sigma;
  std::vector<BinaryGraph> dataset_graphs;
  std::vector<CorrelationMatrix> sigmas;
  std::vector<Matrix> datasets;
  std::vector<Matrix> latent;
  std::vector<double> eigen_adjustments;
};

// Every random draw comes from a substream keyed by (seed, purpose, t).
ScenarioData generate_scenario(const SyntheticScenario& scenario);

}  // namespace mgk
