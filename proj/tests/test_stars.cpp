#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mgk/clime.hpp"
#include "mgk/error.hpp"
#include "mgk/evaluation.hpp"
#include "mgk/rng.hpp"
#include "mgk/stars.hpp"
#include "mgk/synthetic.hpp"

using namespace mgk;

TEST_CASE("instability formula") {
  CHECK(edge_instability(0.0) == 0.0);
  CHECK(edge_instability(1.0) == 0.0);
  CHECK(edge_instability(0.5) == 0.5);
  for (int i = 0; i <= 20; ++i) {
    const double xi = edge_instability(i / 20.0);
    CHECK(xi >= 0.0);
    CHECK(xi <= 0.5);
  }
}

TEST_CASE("lambda grid") {
  const auto grid = log_lambda_grid(0.01, 1.0, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == 0.01);
  CHECK(grid[2] == doctest::Approx(0.1));
  CHECK(std::is_sorted(grid.rbegin(), grid.rend()));
  CHECK_THROWS_AS(log_lambda_grid(0.5, 0.1, 3), Error);
}

TEST_CASE("config validation") {
  StarsConfig cfg;
  CHECK(cfg.resolved_subsample_size(100) == 99);
  CHECK(cfg.resolved_subsample_size(400) == 200);
  CHECK_NOTHROW(cfg.validate(100));
  cfg.beta = 0.5;
  CHECK_THROWS_AS(cfg.validate(100), Error);
  cfg = {};
  cfg.subsamples = 1;
  CHECK_THROWS_AS(cfg.validate(100), Error);
  cfg = {};
  cfg.subsample_size = 100;
  CHECK_THROWS_AS(cfg.validate(100), Error);
  cfg = {};
  cfg.lambda_grid = {0.1, 0.2};
  CHECK_THROWS_AS(cfg.validate(100), Error);
}

TEST_CASE("identical subsamples give zero instability") {
  // Large lambdas empty every subsample graph.
  Rng rng(2);
  Matrix data(30, 4);
  for (Eigen::Index i = 0; i < data.size(); ++i) data(i) = rng.normal();
  StarsConfig cfg;
  cfg.lambda_grid = {0.99, 0.97, 0.95};
  cfg.subsample_size = 10;
  const auto r = stars_select(data, CorrelationKind::Kendall, cfg);
  for (double v : r.instability) CHECK(v == 0.0);
  CHECK(r.lambda == 0.95);
  CHECK_FALSE(r.no_stable_lambda);
}

TEST_CASE("monotone instability and determinism") {
  SyntheticScenario sc;
  sc.d = 10;
  sc.datasets = 1;
  sc.n = 80;
  sc.seed = 3;
  const auto data = generate_scenario(sc);
  StarsConfig cfg;
  cfg.subsamples = 8;
  cfg.lambda_grid = log_lambda_grid(0.02, 0.8, 12);
  cfg.seed = 5;
  const auto a = stars_select(data.datasets[0], CorrelationKind::Kendall, cfg);
  const auto b = stars_select(data.datasets[0], CorrelationKind::Kendall, cfg);
  CHECK(a.lambda == b.lambda);
  CHECK(a.instability == b.instability);
  CHECK(std::is_sorted(a.monotone_instability.begin(), a.monotone_instability.end()));
  for (std::size_t i = 0; i < a.instability.size(); ++i) {
    CHECK(a.monotone_instability[i] >= a.instability[i]);
    CHECK(a.instability[i] <= 0.5);
  }
  if (!a.no_stable_lambda) {
    const auto pos = std::find(a.grid.begin(), a.grid.end(), a.lambda) - a.grid.begin();
    CHECK(a.monotone_instability[pos] <= cfg.beta);
    if (pos + 1 < static_cast<long>(a.grid.size()))
      CHECK(a.monotone_instability[pos + 1] > cfg.beta);
  }
}

TEST_CASE("no stable lambda falls back to the smallest grid point") {
  SyntheticScenario sc;
  sc.d = 8;
  sc.datasets = 1;
  sc.n = 40;
  const auto data = generate_scenario(sc);
  StarsConfig cfg;
  cfg.subsamples = 6;
  cfg.beta = 1e-6;
  cfg.lambda_grid = {0.2, 0.1, 0.05};
  const auto r = stars_select(data.datasets[0], CorrelationKind::Pearson, cfg);
  CHECK(r.no_stable_lambda);
  CHECK(r.lambda == 0.05);
}

TEST_CASE("selected lambda recovers a gaussian banded graph") {
  std::vector<double> f1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SyntheticScenario sc;
    sc.d = 20;
    sc.datasets = 1;
    sc.n = 200;
    sc.perturb_edges = 0;
    sc.marginals = MarginalKind::Gaussian;
    sc.seed = seed;
    const auto data = generate_scenario(sc);
    StarsConfig cfg;
    cfg.seed = seed;
    const auto sel = stars_select(data.datasets[0], CorrelationKind::Kendall, cfg);
    ClimeConfig cc;
    cc.lambda = sel.lambda;
    const auto r = estimate_correlation(data.datasets[0], CorrelationKind::Kendall);
    const auto g = graph_from_estimate(clime_estimate(r, cc), 0.0);
    f1.push_back(confusion(g, data.median_graph).f1());
  }
  std::nth_element(f1.begin(), f1.begin() + 5, f1.end());
  MESSAGE("median F1 " << f1[5]);
  CHECK(f1[5] >= 0.7);
  CHECK(std::abs(f1[5] - 0.9268) <= 0.1);
}
