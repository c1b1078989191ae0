#include "mgk/synthetic.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "mgk/error.hpp"
#include "mgk/parallel.hpp"

namespace mgk {

GraphPattern GraphPattern::banded(int bandwidth) {
  GraphPattern p;
  p.kind = Kind::Banded;
  p.bandwidth = bandwidth;
  return p;
}

GraphPattern GraphPattern::clustered(int groups, double within_prob) {
  GraphPattern p;
  p.kind = Kind::Clustered;
  p.groups = groups;
  p.within_prob = within_prob;
  return p;
}

GraphPattern GraphPattern::hub(int hub_count) {
  GraphPattern p;
  p.kind = Kind::Hub;
  p.hub_count = hub_count;
  return p;
}

GraphPattern GraphPattern::random(double edge_prob) {
  GraphPattern p;
  p.kind = Kind::Random;
  p.edge_prob = edge_prob;
  return p;
}

GraphPattern GraphPattern::scale_free() {
  GraphPattern p;
  p.kind = Kind::ScaleFree;
  return p;
}

GraphPattern GraphPattern::parse(const std::string& name) {
  if (name == "banded") return banded();
  if (name == "clustered" || name == "cluster") return clustered();
  if (name == "hub") return hub();
  if (name == "random") return random();
  if (name == "scale-free" || name == "scalefree" || name == "scale_free")
    return scale_free();
  throw Error(ErrorKind::InvalidPattern, "unknown graph pattern '" + name + "'");
}

std::string GraphPattern::name() const {
  switch (kind) {
    case Kind::Banded: return "banded";
    case Kind::Clustered: return "clustered";
    case Kind::Hub: return "hub";
    case Kind::Random: return "random";
    case Kind::ScaleFree: return "scale-free";
  }
  return "unknown";
}

namespace {

// Contiguous blocks of near-equal size; block b is [start(b), start(b+1)).
int block_start(int b, int blocks, int d) {
  return static_cast<int>(static_cast<std::int64_t>(b) * d / blocks);
}

}  // namespace

BinaryGraph generate_pattern(const GraphPattern& pattern, int d, Rng& rng) {
  if (d < 2) {
    throw Error(ErrorKind::InvalidPattern, "patterns need d >= 2");
  }
  std::vector<Edge> edges;
  switch (pattern.kind) {
    case GraphPattern::Kind::Banded: {
      if (pattern.bandwidth < 1) {
        throw Error(ErrorKind::InvalidPattern, "bandwidth must be >= 1");
      }
      for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d && k - j <= pattern.bandwidth; ++k)
          edges.push_back({j, k});
      break;
    }
    case GraphPattern::Kind::Clustered: {
      if (pattern.groups < 1 || pattern.groups > d) {
        throw Error(ErrorKind::InvalidPattern,
                    "clustered pattern needs 1 <= groups <= d");
      }
      if (!(pattern.within_prob > 0.0 && pattern.within_prob <= 1.0)) {
        throw Error(ErrorKind::InvalidPattern,
                    "within-group probability must lie in (0, 1]");
      }
      for (int b = 0; b < pattern.groups; ++b) {
        const int lo = block_start(b, pattern.groups, d);
        const int hi = block_start(b + 1, pattern.groups, d);
        for (int j = lo; j < hi; ++j)
          for (int k = j + 1; k < hi; ++k)
            if (rng.bernoulli(pattern.within_prob)) edges.push_back({j, k});
      }
      break;
    }
    case GraphPattern::Kind::Hub: {
      const int hubs = pattern.hub_count > 0 ? pattern.hub_count : (d + 19) / 20;
      if (hubs < 1 || hubs > d) {
        throw Error(ErrorKind::InvalidPattern, "hub pattern needs 1 <= hubs <= d");
      }
      for (int b = 0; b < hubs; ++b) {
        const int lo = block_start(b, hubs, d);
        const int hi = block_start(b + 1, hubs, d);
        for (int k = lo + 1; k < hi; ++k) edges.push_back({lo, k});
      }
      break;
    }
    case GraphPattern::Kind::Random: {
      const double p = pattern.edge_prob > 0.0 ? pattern.edge_prob : 3.0 / d;
      if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::InvalidPattern,
                    "edge probability must lie in (0, 1]");
      }
      for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k)
          if (rng.bernoulli(p)) edges.push_back({j, k});
      break;
    }
    case GraphPattern::Kind::ScaleFree: {
      // Preferential attachment: node i joins with one edge to an earlier
      // node chosen with probability proportional to its degree.
      std::vector<int> degree(d, 0);
      edges.push_back({0, 1});
      degree[0] = degree[1] = 1;
      for (int i = 2; i < d; ++i) {
        std::uint64_t target = rng.below(static_cast<std::uint64_t>(2 * (i - 1)));
        int node = 0;
        while (target >= static_cast<std::uint64_t>(degree[node])) {
          target -= degree[node];
          ++node;
        }
        edges.push_back({node, i});
        ++degree[node];
        ++degree[i];
      }
      break;
    }
  }
  return BinaryGraph(d, std::move(edges));
}

namespace {

CorrelationMatrix rescale_to_correlation(const Matrix& cov) {
  const Vector inv_sd = cov.diagonal().cwiseSqrt().cwiseInverse();
  return make_correlation(inv_sd.asDiagonal() * cov * inv_sd.asDiagonal());
}

}  // namespace

CorrelationMatrix covariance_from_graph(const BinaryGraph& g, double off_value) {
  const int d = g.dim();
  Matrix omega = off_value * g.adjacency().cast<double>();
  const double lambda_min =
      Eigen::SelfAdjointEigenSolver<Matrix>(omega, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  omega.diagonal().setConstant(std::abs(lambda_min) + 0.1);
  const Matrix sigma = omega.llt().solve(Matrix::Identity(d, d));
  return rescale_to_correlation(sigma);
}

PerturbedModel perturb_dataset_model(const BinaryGraph& base_graph,
                                     const CorrelationMatrix& base_sigma,
                                     int k, double sigma_fill, Rng& rng) {
  const int d = base_graph.dim();
  if (base_sigma.dim() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "base covariance and graph dimensions differ");
  }
  if (k < 0) {
    throw Error(ErrorKind::InvalidPerturbation, "perturbation size must be >= 0");
  }
  std::vector<Edge> candidates;
  for (int j = 0; j < d; ++j)
    for (int l = j + 1; l < d; ++l)
      if (!base_graph.contains(j, l)) candidates.push_back({j, l});
  if (static_cast<int>(candidates.size()) < k) {
    throw Error(ErrorKind::InvalidPerturbation,
                "only " + std::to_string(candidates.size()) +
                    " non-edges available, need " + std::to_string(k));
  }
  if (k == 0) return {base_graph, base_sigma, 0.0};

  // Partial Fisher-Yates: the first k slots become the added pairs.
  for (int i = 0; i < k; ++i) {
    const auto pick = i + static_cast<int>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[pick]);
  }
  std::vector<Edge> edges = base_graph.edges();
  Matrix sigma = base_sigma.values();
  for (int i = 0; i < k; ++i) {
    const Edge e = candidates[i];
    edges.push_back(e);
    sigma(e.j, e.k) = sigma_fill;
    sigma(e.k, e.j) = sigma_fill;
  }

  constexpr double kEigenFloor = 1e-3;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  const Vector values = eig.eigenvalues();
  double adjustment = 0.0;
  CorrelationMatrix repaired;
  if (values.minCoeff() < kEigenFloor) {
    adjustment = kEigenFloor - values.minCoeff();
    const Vector clipped = values.cwiseMax(kEigenFloor);
    const Matrix rebuilt = eig.eigenvectors() * clipped.asDiagonal() *
                           eig.eigenvectors().transpose();
    repaired = rescale_to_correlation(rebuilt);
  } else {
    repaired = CorrelationMatrix(std::move(sigma));
  }
  return {BinaryGraph(d, std::move(edges)), std::move(repaired), adjustment};
}

double TransformConstants::c2() { return std::pow(2.0 / std::numbers::pi, 0.25); }
double TransformConstants::c3() { return std::sqrt(1.0 / 12.0); }
double TransformConstants::c4() { return std::sqrt(15.0); }
double TransformConstants::c5a() { return std::exp(0.5); }
double TransformConstants::c5b() {
  return std::sqrt(std::exp(2.0) - std::exp(1.0));
}

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

double npn_transform_inverse(int k, double x) {
  switch (k) {
    case 1:
      return x;
    case 2:
      return std::copysign(std::sqrt(std::abs(x)), x) / TransformConstants::c2();
    case 3:
      return (std_normal_cdf(x) - 0.5) / TransformConstants::c3();
    case 4:
      return x * x * x / TransformConstants::c4();
    case 5:
      return (std::exp(x) - TransformConstants::c5a()) / TransformConstants::c5b();
    default:
      throw Error(ErrorKind::InvalidConfig,
                  "transform index must be in 1..5, got " + std::to_string(k));
  }
}

namespace {

// Integral of f(t) phi(t) over the real line, split at 0 so kinks at the
// origin do not slow the double-exponential rule.
template <typename F>
double gaussian_expectation(F f) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto weighted = [&](double t) {
    const double density = norm * std::exp(-0.5 * t * t);
    return density > 0.0 ? f(t) * density : 0.0;
  };
  boost::math::quadrature::exp_sinh<double> rule;
  const double right = rule.integrate(weighted, 0.0,
                                      std::numeric_limits<double>::infinity());
  const double left = rule.integrate(weighted,
                                     -std::numeric_limits<double>::infinity(), 0.0);
  return left + right;
}

}  // namespace

std::vector<ConstantCheck> transform_constant_checks() {
  std::vector<ConstantCheck> out;
  out.push_back({"c2", TransformConstants::c2(),
                 std::sqrt(gaussian_expectation([](double t) { return std::abs(t); }))});

  const double mean_cdf = gaussian_expectation(std_normal_cdf);
  out.push_back({"c3_center", 0.5, mean_cdf});
  out.push_back({"c3", TransformConstants::c3(),
                 std::sqrt(gaussian_expectation([&](double y) {
                   const double c = std_normal_cdf(y) - mean_cdf;
                   return c * c;
                 }))});

  out.push_back({"c4", TransformConstants::c4(),
                 std::sqrt(gaussian_expectation([](double t) {
                   const double t3 = t * t * t;
                   return t3 * t3;
                 }))});

  const double mean_exp =
      gaussian_expectation([](double t) { return std::exp(t); });
  out.push_back({"c5a", TransformConstants::c5a(), mean_exp});
  out.push_back({"c5b", TransformConstants::c5b(),
                 std::sqrt(gaussian_expectation([&](double y) {
                   const double c = std::exp(y) - mean_exp;
                   return c * c;
                 }))});
  return out;
}

void verify_transform_constants(double tol) {
  auto check = [tol] {
    for (const auto& c : transform_constant_checks()) {
      if (!(std::abs(c.closed_form - c.quadrature) <= tol)) {
        throw Error(ErrorKind::InternalError,
                    "transform constant " + c.name + " disagrees with quadrature");
      }
    }
  };
  if (tol != 1e-8) {
    check();
    return;
  }
  static std::once_flag once;
  std::call_once(once, check);
}

SampledDataset sample_dataset(const CorrelationMatrix& sigma, int n, Rng& rng,
                              MarginalKind marginals) {
  const int d = sigma.dim();
  if (n < 1) {
    throw Error(ErrorKind::InvalidConfig, "sample size must be positive");
  }
  Eigen::LLT<Matrix> llt(sigma.values());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "covariance is not positive definite");
  }
  Matrix white(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) white(i, j) = rng.normal();

  SampledDataset out;
  out.latent = white * llt.matrixU();
  out.observed = out.latent;
  if (marginals == MarginalKind::Nonparanormal) {
    for (int j = 0; j < d; ++j) {
      const int k = j % 5 + 1;
      for (int i = 0; i < n; ++i)
        out.observed(i, j) = npn_transform_inverse(k, out.latent(i, j));
    }
  }
  return out;
}

void SyntheticScenario::validate() const {
  if (d < 2) throw Error(ErrorKind::InvalidConfig, "scenario needs d >= 2");
  if (datasets < 1) throw Error(ErrorKind::InvalidConfig, "scenario needs T >= 1");
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "scenario needs n >= 2");
  if (perturb_edges < 0) {
    throw Error(ErrorKind::InvalidConfig, "perturb_edges must be >= 0");
  }
  if (!(sigma_fill > -1.0 && sigma_fill < 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "sigma_fill must lie in (-1, 1)");
  }
  if (off_value == 0.0) {
    throw Error(ErrorKind::InvalidConfig, "off_value must be nonzero");
  }
}

ScenarioData generate_scenario(const SyntheticScenario& sc) {
  sc.validate();
  if (sc.marginals == MarginalKind::Nonparanormal) verify_transform_constants();

  ScenarioData out;
  Rng pattern_rng = Rng::substream(sc.seed, {kPatternStream});
  out.median_graph = generate_pattern(sc.pattern, sc.d, pattern_rng);
  out.base_sigma = covariance_from_graph(out.median_graph, sc.off_value);

  const auto T = static_cast<std::size_t>(sc.datasets);
  out.dataset_graphs.resize(T);
  out.sigmas.resize(T);
  out.datasets.resize(T);
  out.latent.resize(T);
  out.eigen_adjustments.resize(T);

  parallel_for(T, [&](std::size_t t) {
    Rng perturb_rng = Rng::substream(sc.seed, {kPerturbStream, t});
    PerturbedModel model =
        perturb_dataset_model(out.median_graph, out.base_sigma,
                              sc.perturb_edges, sc.sigma_fill, perturb_rng);
    Rng sample_rng = Rng::substream(sc.seed, {kSampleStream, t});
    SampledDataset sample =
        sample_dataset(model.sigma, sc.n, sample_rng, sc.marginals);
    out.dataset_graphs[t] = std::move(model.graph);
    out.sigmas[t] = std::move(model.sigma);
    out.eigen_adjustments[t] = model.eigen_adjustment;
    out.datasets[t] = std::move(sample.observed);
    out.latent[t] = std::move(sample.latent);
  });
  return out;
}

}  // namespace mgk
