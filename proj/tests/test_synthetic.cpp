#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "mgk/error.hpp"
#include "mgk/rank_correlation.hpp"
#include "mgk/synthetic.hpp"

using namespace mgk;

namespace {

double min_eigenvalue(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

// Composite Simpson rule of f(t) * phi(t) over [-12, 12].
template <typename F>
double gaussian_simpson(F f) {
  const int m = 200000;
  const double a = -12.0, b = 12.0, h = (b - a) / m;
  double total = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = a + i * h;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    total += w * f(t) * std::exp(-0.5 * t * t);
  }
  return total * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("pattern examples") {
  Rng rng(1);
  CHECK(generate_pattern(GraphPattern::banded(1), 5, rng) ==
        BinaryGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  CHECK(generate_pattern(GraphPattern::hub(1), 4, rng) ==
        BinaryGraph(4, {{0, 1}, {0, 2}, {0, 3}}));
  CHECK_THROWS_AS(generate_pattern(GraphPattern::clustered(7), 5, rng), Error);
  CHECK_THROWS_AS(GraphPattern::parse("lattice"), Error);
  for (const char* name : {"banded", "clustered", "hub", "random", "scale-free"})
    CHECK(GraphPattern::parse(name).name() == name);
}

TEST_CASE("random pattern edge count is binomial") {
  const double p = 0.1;
  const double mean = p * 435;
  const double sd = std::sqrt(435 * p * (1 - p));
  double total = 0.0;
  for (int seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto g = generate_pattern(GraphPattern::random(p), 30, rng);
    CHECK(std::abs(g.edge_count() - mean) <= 4 * sd);
    total += static_cast<double>(g.edge_count());
  }
  CHECK(std::abs(total / 200 - mean) <= 3 * sd / std::sqrt(200.0));
}

TEST_CASE("scale-free pattern is a tree") {
  Rng rng(3);
  const auto g = generate_pattern(GraphPattern::scale_free(), 40, rng);
  CHECK(g.edge_count() == 39);
}

TEST_CASE("covariance from graph") {
  const auto empty = covariance_from_graph(BinaryGraph(4));
  CHECK((empty.values() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);

  // Omega = [[0.4, 0.3], [0.3, 0.4]]; its inverse rescaled has off-diagonal -0.3/0.4.
  const auto pair = covariance_from_graph(BinaryGraph(2, {{0, 1}}), 0.3);
  CHECK(pair(0, 1) == doctest::Approx(-0.75).epsilon(1e-12));

  std::vector<Edge> band;
  for (int j = 0; j + 1 < 8; ++j) band.push_back({j, j + 1});
  const auto sigma = covariance_from_graph(BinaryGraph(8, band));
  CHECK(min_eigenvalue(sigma.values()) > 0);
  const Matrix omega = sigma.values().inverse();
  for (int j = 0; j < 8; ++j)
    for (int k = j + 2; k < 8; ++k) CHECK(std::abs(omega(j, k)) < 1e-10);
}

TEST_CASE("perturbation") {
  Rng rng(5);
  const auto base = CorrelationMatrix::identity(3);
  const auto same = perturb_dataset_model(BinaryGraph(3), base, 0, 0.1, rng);
  CHECK(same.graph == BinaryGraph(3));
  CHECK(same.sigma.values() == base.values());

  const auto one = perturb_dataset_model(BinaryGraph(3), base, 1, 0.1, rng);
  REQUIRE(one.graph.edge_count() == 1);
  CHECK(one.eigen_adjustment == 0.0);
  int filled = 0;
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) filled += one.sigma(j, k) == 0.1;
  CHECK(filled == 1);
  CHECK(min_eigenvalue(one.sigma.values()) > 0);

  Rng pattern_rng(6);
  const auto g = generate_pattern(GraphPattern::banded(1), 100, pattern_rng);
  const auto big = perturb_dataset_model(g, covariance_from_graph(g), 10, 0.1, rng);
  CHECK(big.graph.edge_count() == g.edge_count() + 10);
  CHECK(min_eigenvalue(big.sigma.values()) > 0);

  CHECK_THROWS_AS(perturb_dataset_model(BinaryGraph::complete(3), base, 1, 0.1, rng),
                  Error);
}

TEST_CASE("transform constants and centering") {
  CHECK(npn_transform_inverse(1, 1.7) == 1.7);
  for (int k = 2; k <= 4; ++k) CHECK(npn_transform_inverse(k, 0.0) == 0.0);
  CHECK(npn_transform_inverse(5, 0.5) == doctest::Approx(0.0));

  CHECK(TransformConstants::c4() == doctest::Approx(3.8730).epsilon(1e-4));
  const double c2 = std::sqrt(gaussian_simpson([](double t) { return std::abs(t); }));
  const double c4 = std::sqrt(gaussian_simpson([](double t) { return std::pow(t, 6); }));
  const double c5a = gaussian_simpson([](double t) { return std::exp(t); });
  CHECK(std::abs(c2 * c2 - std::pow(TransformConstants::c2(), 2)) < 1e-8);
  CHECK(std::abs(c4 - TransformConstants::c4()) < 1e-8);
  CHECK(std::abs(c5a - TransformConstants::c5a()) < 1e-8);

  for (const auto& check : transform_constant_checks())
    CHECK_MESSAGE(std::abs(check.closed_form - check.quadrature) < 1e-8, check.name);
  CHECK_NOTHROW(verify_transform_constants());
}

TEST_CASE("identity covariance sampling moments") {
  Rng rng(17);
  const auto data = sample_dataset(CorrelationMatrix::identity(5), 100000, rng);
  for (int j = 0; j < 5; ++j) {
    const double mean = data.observed.col(j).mean();
    const double var = (data.observed.col(j).array() - mean).square().mean();
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.05);
  }
  CHECK(data.observed.col(0) == data.latent.col(0));
}

TEST_CASE("sampled data keep the latent rank structure") {
  SyntheticScenario sc;
  sc.d = 12;
  sc.datasets = 2;
  sc.n = 60;
  sc.seed = 44;
  const auto data = generate_scenario(sc);
  for (int t = 0; t < 2; ++t) {
    CHECK(kendall_tau_matrix(data.datasets[t]).taus ==
          kendall_tau_matrix(data.latent[t]).taus);
    CHECK(data.dataset_graphs[t].edge_count() == data.median_graph.edge_count() + 10);
  }
}

TEST_CASE("scenario generation is deterministic") {
  SyntheticScenario sc;
  sc.d = 10;
  sc.datasets = 3;
  sc.n = 30;
  sc.pattern = GraphPattern::hub();
  const auto a = generate_scenario(sc);
  const auto b = generate_scenario(sc);
  for (int t = 0; t < 3; ++t) CHECK(a.datasets[t] == b.datasets[t]);
  sc.seed = 2;
  CHECK(generate_scenario(sc).datasets[0] != a.datasets[0]);
}
