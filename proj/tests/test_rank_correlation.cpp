#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "mgk/error.hpp"
#include "mgk/rank_correlation.hpp"
#include "mgk/rng.hpp"

using namespace mgk;

namespace {

int sgn(double v) { return (v > 0) - (v < 0); }

// Quadratic pair enumeration.
KendallCounts slow_counts(const std::vector<double>& x,
                          const std::vector<double>& y) {
  KendallCounts c;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      const int s = sgn(x[a] - x[b]) * sgn(y[a] - y[b]);
      if (s > 0) ++c.concordant;
      if (s < 0) ++c.discordant;
    }
  }
  return c;
}

double slow_tau(const std::vector<double>& x, const std::vector<double>& y) {
  const auto c = slow_counts(x, y);
  const double n = static_cast<double>(x.size());
  return 2.0 * static_cast<double>(c.concordant - c.discordant) / (n * (n - 1));
}

std::vector<double> random_vector(int n, bool ties, std::mt19937_64& gen) {
  std::vector<double> v(n);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> small(0, 5);
  for (auto& x : v) x = ties ? small(gen) : normal(gen);
  return v;
}

}  // namespace

TEST_CASE("kendall tau small examples") {
  std::vector<double> x{1, 2, 3};
  std::vector<double> up{1, 2, 3};
  std::vector<double> down{3, 2, 1};
  CHECK(kendall_tau_pair(x, up) == 1.0);
  CHECK(kendall_tau_pair(x, down) == -1.0);

  std::vector<double> x4{1, 2, 3, 4};
  std::vector<double> y4{1, 3, 2, 4};
  CHECK(kendall_counts(x4, y4) == KendallCounts{5, 1});
  CHECK(kendall_tau_pair(x4, y4) == doctest::Approx(2.0 / 3.0));

  std::vector<double> one{1};
  CHECK_THROWS_AS(kendall_tau_pair(one, one), Error);
  CHECK_THROWS_AS(kendall_tau_pair(x, x4), Error);
}

TEST_CASE("fast counts match pair enumeration") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> size(2, 120);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = size(gen);
    const bool ties = trial % 2 == 1;
    auto x = random_vector(n, ties, gen);
    auto y = random_vector(n, ties && trial % 4 == 1, gen);
    CHECK(kendall_counts(x, y) == slow_counts(x, y));
    CHECK(kendall_tau_pair(x, y) == slow_tau(x, y));
  }
}

TEST_CASE("tau matrix on a hand-checked fixture") {
  Matrix data(4, 3);
  data << 1, 4, 2,
          2, 3, 2,
          3, 2, 1,
          4, 1, 3;
  const auto tau = kendall_tau_matrix(data).taus;
  CHECK(tau(0, 0) == 1.0);
  CHECK(tau(0, 1) == -1.0);
  // (1,3): pairs 12:0, 13:-, 14:+, 23:-, 24:+, 34:+ -> (3-2)/6
  CHECK(tau(0, 2) == doctest::Approx(1.0 / 6.0));
  CHECK(tau(2, 0) == tau(0, 2));
  CHECK(tau(1, 2) == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("duplicated column has tau one") {
  std::mt19937_64 gen(9);
  auto v = random_vector(50, false, gen);
  Matrix data(50, 2);
  for (int i = 0; i < 50; ++i) data(i, 0) = data(i, 1) = v[i];
  CHECK(kendall_tau_matrix(data).taus(0, 1) == 1.0);
}

TEST_CASE("independent columns have tau near zero") {
  Rng rng(77);
  Matrix data(5000, 2);
  for (Eigen::Index i = 0; i < data.size(); ++i) data(i) = rng.normal();
  CHECK(std::abs(kendall_tau_matrix(data).taus(0, 1)) < 0.05);
}

TEST_CASE("tau matrix invariant under monotone maps") {
  Rng rng(4);
  Matrix data(200, 4);
  for (Eigen::Index i = 0; i < data.size(); ++i) data(i) = rng.normal();
  Matrix mapped = data;
  mapped.col(0) = data.col(0).array().cube();
  mapped.col(1) = data.col(1).array().exp();
  mapped.col(2) = 3.0 * data.col(2).array() + 1.5;
  mapped.col(3) = data.col(3).array().atan();
  CHECK(kendall_tau_matrix(data).taus == kendall_tau_matrix(mapped).taus);
}

TEST_CASE("sine transform") {
  Matrix taus(3, 3);
  taus << 1, 0, 1.0 / 3.0,
          0, 1, -1,
          1.0 / 3.0, -1, 1;
  const auto r = sine_transform(KendallTauMatrix{taus});
  CHECK(r(0, 1) == 0.0);
  CHECK(r(0, 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r(1, 2) == -1.0);
  CHECK(r(2, 2) == 1.0);

  double prev = -2.0;
  for (int i = -100; i <= 100; ++i) {
    const double t = i / 100.0;
    Matrix m(2, 2);
    m << 1, t, t, 1;
    const double v = sine_transform(KendallTauMatrix{m})(0, 1);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("pearson correlation") {
  Matrix m(3, 2);
  m << 0, 0, 1, 1, 2, 4;
  CHECK(pearson_matrix(m)(0, 1) == doctest::Approx(0.9608).epsilon(1e-4));

  Matrix lin(3, 2);
  lin << 1, 1, 2, 2, 3, 3;
  CHECK(pearson_matrix(lin)(0, 1) == doctest::Approx(1.0));
  lin.col(1) = -2.0 * lin.col(0);
  CHECK(pearson_matrix(lin)(0, 1) == doctest::Approx(-1.0));

  Matrix flat(4, 3);
  flat << 1, 5, 2, 2, 5, 1, 3, 5, 0, 4, 5, 7;
  try {
    pearson_matrix(flat);
    FAIL("expected DegenerateColumnError");
  } catch (const DegenerateColumnError& e) {
    CHECK(e.column() == 2);
  }
}

TEST_CASE("sine-kendall error shrinks with n") {
  Matrix sigma(3, 3);
  sigma << 1, 0.6, 0.2, 0.6, 1, -0.3, 0.2, -0.3, 1;
  const Matrix chol = Eigen::LLT<Matrix>(sigma).matrixL();
  auto error_at = [&](int n) {
    double total = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      Rng rng(1000 + rep * 31 + n);
      Matrix z(n, 3);
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
      const Matrix x = z * chol.transpose();
      const auto r = sine_transform(kendall_tau_matrix(x));
      total += (r.values() - sigma).cwiseAbs().maxCoeff();
    }
    return total / 5.0;
  };
  const double e100 = error_at(100);
  const double e400 = error_at(400);
  const double e1600 = error_at(1600);
  CHECK(e400 < e100);
  CHECK(e1600 < e400);
}

TEST_CASE("correlation matrix validation") {
  Matrix bad(2, 2);
  bad << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(CorrelationMatrix{bad}, Error);
  bad << 1, 1.5, 1.5, 1;
  CHECK_THROWS_AS(CorrelationMatrix{bad}, Error);
  CHECK(CorrelationMatrix::identity(3).values() == Matrix::Identity(3, 3));
}
