#include "mgk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "mgk/error.hpp"
#include "mgk/evaluation.hpp"
#include "mgk/io.hpp"
#include "mgk/pipeline.hpp"

namespace mgk {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidPattern:
    case ErrorKind::InvalidSparsity:
    case ErrorKind::InvalidPerturbation:
      return 1;
    case ErrorKind::DataFormat:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InsufficientData:
    case ErrorKind::DegenerateColumn:
    case ErrorKind::EmptyInput:
    case ErrorKind::TooLarge:
      return 2;
    case ErrorKind::Infeasible:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::InternalError:
      return 3;
    case ErrorKind::TieAtRankS:
      return 4;
  }
  return 3;
}

Json error_json(const Error& e, int code) {
  Json j;
  j["error"] = to_string(e.kind());
  j["message"] = e.what();
  j["exit_code"] = code;
  if (const auto* tie = dynamic_cast<const TieAtRankSError*>(&e)) {
    Json pairs = Json::array();
    for (const auto& [a, b] : tie->tied_pairs()) pairs.push_back({a, b});
    j["tied_pairs"] = std::move(pairs);
  }
  if (const auto* inf = dynamic_cast<const InfeasibleError*>(&e))
    j["column"] = inf->column();
  if (const auto* deg = dynamic_cast<const DegenerateColumnError*>(&e))
    j["column"] = deg->column();
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidConfig, "invalid number '" + s + "' for " + what);
  }
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::DataFormat, "invalid integer '" + s + "' in " + what);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Scenario flags

struct ScenarioFlags {
  std::string file;
  std::string name;
  std::string pattern = "banded";
  int d = 40;
  int t = 10;
  int n = 100;
  int perturb = 10;
  double off_value = 0.3;
  double sigma_fill = 0.1;
  std::uint64_t seed = 1;
  bool gaussian = false;
  int bandwidth = 1;
  int groups = 5;
  double within_prob = 0.3;
  int hubs = 0;
  double edge_prob = 0.0;

  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* app) {
    opts["scenario-file"] = app->add_option("--scenario-file", file,
                                            "Config file with [scenario.<name>] sections");
    opts["scenario"] = app->add_option("--scenario", name, "Scenario section name");
    opts["pattern"] = app->add_option(
        "--pattern", pattern, "banded | clustered | hub | random | scale-free");
    opts["d"] = app->add_option("--d", d, "Number of variables");
    opts["t"] = app->add_option("--t", t, "Number of datasets");
    opts["n"] = app->add_option("--n", n, "Samples per dataset");
    opts["perturb-edges"] =
        app->add_option("--perturb-edges", perturb, "Edges added per dataset");
    opts["off-value"] =
        app->add_option("--off-value", off_value, "Precision value on edges");
    opts["sigma-fill"] = app->add_option(
        "--sigma-fill", sigma_fill, "Covariance value written on added edges");
    opts["seed"] = app->add_option("--seed", seed, "Random seed");
    opts["gaussian"] =
        app->add_flag("--gaussian", gaussian, "Skip the marginal transforms");
    opts["bandwidth"] = app->add_option("--bandwidth", bandwidth, "Banded pattern width");
    opts["groups"] = app->add_option("--groups", groups, "Clustered pattern groups");
    opts["within-prob"] =
        app->add_option("--within-prob", within_prob, "Clustered edge probability");
    opts["hubs"] = app->add_option("--hubs", hubs, "Hub count (0: ceil(d/20))");
    opts["edge-prob"] =
        app->add_option("--edge-prob", edge_prob, "Random pattern probability (0: 3/d)");
  }

  bool set(const std::string& key) const { return opts.at(key)->count() > 0; }

  SyntheticScenario resolve() const {
    SyntheticScenario sc;
    if (!file.empty()) {
      if (name.empty()) {
        throw Error(ErrorKind::InvalidConfig, "--scenario-file needs --scenario");
      }
      sc = load_scenario(file, name);
    } else {
      sc.pattern = GraphPattern::banded();
    }
    const bool from_file = !file.empty();
    auto take = [&](const std::string& key) { return !from_file || set(key); };

    if (take("pattern")) {
      const int keep_bw = sc.pattern.bandwidth;
      sc.pattern = GraphPattern::parse(pattern);
      if (from_file && !set("bandwidth")) sc.pattern.bandwidth = keep_bw;
    }
    if (take("bandwidth")) sc.pattern.bandwidth = bandwidth;
    if (take("groups")) sc.pattern.groups = groups;
    if (take("within-prob")) sc.pattern.within_prob = within_prob;
    if (take("hubs")) sc.pattern.hub_count = hubs;
    if (take("edge-prob")) sc.pattern.edge_prob = edge_prob;
    if (take("d")) sc.d = d;
    if (take("t")) sc.datasets = t;
    if (take("n")) sc.n = n;
    if (take("perturb-edges")) sc.perturb_edges = perturb;
    if (take("off-value")) sc.off_value = off_value;
    if (take("sigma-fill")) sc.sigma_fill = sigma_fill;
    if (take("seed")) sc.seed = seed;
    if (take("gaussian"))
      sc.marginals = gaussian ? MarginalKind::Gaussian : MarginalKind::Nonparanormal;
    sc.validate();
    return sc;
  }
};

Json scenario_json(const SyntheticScenario& sc) {
  Json j;
  j["pattern"] = sc.pattern.name();
  switch (sc.pattern.kind) {
    case GraphPattern::Kind::Banded:
      j["bandwidth"] = sc.pattern.bandwidth;
      break;
    case GraphPattern::Kind::Clustered:
      j["groups"] = sc.pattern.groups;
      j["within_prob"] = sc.pattern.within_prob;
      break;
    case GraphPattern::Kind::Hub:
      j["hubs"] = sc.pattern.hub_count > 0 ? sc.pattern.hub_count : (sc.d + 19) / 20;
      break;
    case GraphPattern::Kind::Random:
      j["edge_prob"] = sc.pattern.edge_prob > 0.0 ? sc.pattern.edge_prob : 3.0 / sc.d;
      break;
    case GraphPattern::Kind::ScaleFree:
      break;
  }
  j["d"] = sc.d;
  j["T"] = sc.datasets;
  j["n"] = sc.n;
  j["perturb_edges"] = sc.perturb_edges;
  j["off_value"] = sc.off_value;
  j["sigma_fill"] = sc.sigma_fill;
  j["marginals"] = sc.marginals == MarginalKind::Gaussian ? "gaussian" : "nonparanormal";
  j["seed"] = sc.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Tuning flags

struct TuningFlags {
  std::optional<double> lambda;
  std::string lambdas;
  int stars_n = 20;
  int stars_b = 0;
  double stars_beta = 0.05;
  std::string grid;
  double gamma = 0.0;

  void add(CLI::App* app) {
    app->add_option("--lambda", lambda, "Fixed lambda for every dataset (skips StARS)");
    app->add_option("--lambdas", lambdas, "Comma-separated fixed lambda per dataset");
    app->add_option("--stars-n", stars_n, "StARS subsample count");
    app->add_option("--stars-b", stars_b, "StARS subsample size (0: 10 sqrt(n))");
    app->add_option("--stars-beta", stars_beta, "StARS instability threshold");
    app->add_option("--lambda-grid", grid, "StARS grid as min,max,count");
    app->add_option("--gamma", gamma, "Graph truncation level");
  }

  Tuning resolve(std::uint64_t seed) const {
    Tuning t;
    if (lambda && !lambdas.empty()) {
      throw Error(ErrorKind::InvalidConfig, "--lambda and --lambdas are exclusive");
    }
    if (lambda) t.fixed_lambdas = {*lambda};
    for (const auto& part : split(lambdas, ','))
      t.fixed_lambdas.push_back(parse_double(part, "--lambdas"));
    for (double v : t.fixed_lambdas) {
      if (!(v >= 0.0)) throw Error(ErrorKind::InvalidConfig, "lambda must be >= 0");
    }
    t.stars.subsamples = stars_n;
    t.stars.subsample_size = stars_b;
    t.stars.beta = stars_beta;
    t.stars.seed = seed;
    if (!grid.empty()) {
      const auto parts = split(grid, ',');
      if (parts.size() != 3) {
        throw Error(ErrorKind::InvalidConfig, "--lambda-grid expects min,max,count");
      }
      const double count = parse_double(parts[2], "--lambda-grid count");
      t.stars.lambda_grid =
          log_lambda_grid(parse_double(parts[0], "--lambda-grid min"),
                          parse_double(parts[1], "--lambda-grid max"),
                          static_cast<int>(count));
    }
    return t;
  }
};

Json tuning_json(const Tuning& t) {
  Json j;
  if (!t.fixed_lambdas.empty()) {
    j["mode"] = "fixed";
    j["lambdas"] = t.fixed_lambdas;
  } else {
    j["mode"] = "stars";
    j["subsamples"] = t.stars.subsamples;
    j["subsample_size"] = t.stars.subsample_size;
    j["beta"] = t.stars.beta;
    j["grid"] = t.stars.resolved_grid();
    j["seed"] = t.stars.seed;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Shared output helpers

std::string scores_csv(const PipelineResult& r) {
  std::ostringstream os;
  os << "j,k,zeta,score\n";
  const int d = r.median.graph.dim();
  for (std::int64_t p = 0; p < pair_count(d); ++p) {
    const Edge e = pair_at(p, d);
    os << e.j + 1 << ',' << e.k + 1 << ',' << r.median.counts.count_at(p) << ','
       << format_double(r.scores[p]) << '\n';
  }
  return os.str();
}

struct ScoreTable {
  int dim = 0;
  EdgeCountTable counts;
  std::vector<double> scores;
};

ScoreTable read_scores_csv(const fs::path& path, int dim) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::DataFormat, "cannot open " + path.string());
  ScoreTable table{dim, EdgeCountTable(dim, 0),
                   std::vector<double>(static_cast<std::size_t>(pair_count(dim)), 0.0)};
  std::string line;
  std::getline(in, line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 4) {
      throw Error(ErrorKind::DataFormat, path.string() + ": bad line " + std::to_string(lineno));
    }
    const std::string where = path.string() + " line " + std::to_string(lineno);
    const int j = parse_int(cells[0], where) - 1;
    const int k = parse_int(cells[1], where) - 1;
    if (j < 0 || k <= j || k >= dim) {
      throw Error(ErrorKind::DataFormat, path.string() + ": bad pair on line " +
                                             std::to_string(lineno));
    }
    const auto p = pair_index(j, k, dim);
    for (int c = parse_int(cells[2], where); c > 0; --c) table.counts.increment(p);
    try {
      table.scores[p] = parse_double(cells[3], "score");
    } catch (const Error& e) {
      throw Error(ErrorKind::DataFormat, where + ": " + e.what());
    }
  }
  return table;
}

BinaryGraph load_truth(const fs::path& path) {
  if (path.extension() == ".json") {
    const Json j = read_json_file(path);
    try {
      const Json& g = j.contains("median_graph") ? j.at("median_graph") : j;
      return edges_from_json(g.at("d").get<int>(), g.at("edges"));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::DataFormat,
                  path.string() + ": no truth graph: " + ex.what());
    }
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::DataFormat, "cannot open " + path.string());
  return read_edge_list(in);
}

DatasetCollection load_inputs(const std::vector<std::string>& files) {
  DatasetCollection c;
  for (const auto& f : files) {
    c.datasets.push_back(read_csv_matrix(fs::path(f)));
    c.labels.push_back(fs::path(f).filename().string());
  }
  return c;
}

DatasetCollection from_scenario(const ScenarioData& data) {
  DatasetCollection c;
  c.datasets = data.datasets;
  for (std::size_t t = 0; t < data.datasets.size(); ++t)
    c.labels.push_back("dataset_" + std::to_string(t + 1));
  return c;
}

std::string dataset_file_name(std::size_t t, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(total).size());
  std::string idx = std::to_string(t + 1);
  return "dataset_" + std::string(width - idx.size(), '0') + idx + ".csv";
}

fs::path with_suffix(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_extension();
  return fs::path(p.string() + suffix);
}

Json pipeline_run_json(const PipelineResult& r) {
  Json j;
  j["pipeline"] = to_string(r.kind);
  j["lambdas"] = r.lambdas;
  std::vector<bool> flags = r.no_stable_lambda;
  j["no_stable_lambda"] = flags;
  j["s"] = r.median.s;
  j["ties"] = r.median.tie_report.size();
  return j;
}

const std::vector<PipelineKind> kAllPipelines = {PipelineKind::NP, PipelineKind::Pearson,
                                                 PipelineKind::Kendall};

// ---------------------------------------------------------------------------
// Subcommands

struct Commands {
  explicit Commands(std::ostream& o) : out(o) {}

  std::ostream& out;

  // simulate
  ScenarioFlags sim;
  std::string sim_out;
  std::optional<std::int64_t> sim_s;

  // estimate
  std::string est_pipeline = "kendall";
  std::optional<std::int64_t> est_s;
  std::optional<int> est_s_from_counts;
  std::vector<std::string> est_inputs;
  std::string est_out = "result.json";
  std::string est_ties = "error";
  std::uint64_t est_seed = 1;
  TuningFlags est_tuning;

  // evaluate
  std::string ev_estimate;
  std::string ev_truth;
  std::string ev_scores;
  std::string ev_roc;
  std::string ev_diff;
  std::string ev_labels = "L1,L2";
  std::string ev_row = "data";
  std::string ev_out;

  // compare
  ScenarioFlags cmp;
  std::vector<std::string> cmp_inputs;
  std::string cmp_truth;
  std::string cmp_out;
  std::optional<std::int64_t> cmp_s;
  std::string cmp_ties = "score";
  TuningFlags cmp_tuning;

  // bench
  ScenarioFlags bench;
  int bench_seeds = 10;
  std::string bench_out;
  std::optional<std::int64_t> bench_s;
  TuningFlags bench_tuning;

  int run_simulate() {
    const SyntheticScenario sc = sim.resolve();
    const ScenarioData data = generate_scenario(sc);
    if (sim_s && *sim_s != data.median_graph.edge_count()) {
      throw Error(ErrorKind::InvalidConfig,
                  "--s " + std::to_string(*sim_s) + " does not match the generated " +
                      "median graph, which has " +
                      std::to_string(data.median_graph.edge_count()) + " edges");
    }
    const fs::path dir(sim_out);
    fs::create_directories(dir);

    Json files = Json::array();
    for (std::size_t t = 0; t < data.datasets.size(); ++t) {
      const std::string name = dataset_file_name(t, data.datasets.size());
      write_csv_matrix(dir / name, data.datasets[t]);
      files.push_back(name);
    }
    write_text_file(dir / "truth.edges", to_edge_list(data.median_graph));

    Json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = "simulate";
    manifest["seed"] = sc.seed;
    manifest["scenario"] = scenario_json(sc);
    manifest["s"] = data.median_graph.edge_count();
    manifest["files"] = std::move(files);
    manifest["median_graph"] = {{"d", sc.d}, {"edges", edges_to_json(data.median_graph)}};
    Json graphs = Json::array();
    for (const auto& g : data.dataset_graphs) graphs.push_back(edges_to_json(g));
    manifest["dataset_graphs"] = std::move(graphs);
    manifest["eigen_adjustments"] = data.eigen_adjustments;
    write_json_file(dir / "manifest.json", manifest);

    out << "wrote " << data.datasets.size() << " datasets to " << dir.string() << '\n';
    return 0;
  }

  int run_estimate() {
    PipelineOptions opt;
    opt.kind = parse_pipeline_kind(est_pipeline);
    opt.ties = parse_tie_mode(est_ties);
    opt.tuning = est_tuning.resolve(est_seed);
    opt.gamma = est_tuning.gamma;
    if (est_s_from_counts) {
      opt.s_from_counts = est_s_from_counts;
    } else if (est_s) {
      opt.s = *est_s;
    } else {
      throw Error(ErrorKind::InvalidConfig, "estimate needs --s or --s-from-counts");
    }
    const DatasetCollection inputs = load_inputs(est_inputs);
    const PipelineResult r = run_pipeline(inputs, opt);

    const fs::path result_path(est_out);
    if (result_path.has_parent_path()) fs::create_directories(result_path.parent_path());
    const fs::path edges_path = with_suffix(result_path, ".edges");
    const fs::path scores_path = with_suffix(result_path, ".scores.csv");
    const fs::path manifest_path = with_suffix(result_path, ".manifest.json");
    write_json_file(result_path, median_result_to_json(r.median));
    write_text_file(edges_path, to_edge_list(r.median.graph));
    write_text_file(scores_path, scores_csv(r));

    Json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = "estimate";
    manifest["seed"] = est_seed;
    manifest["inputs"] = est_inputs;
    manifest["pipeline"] = to_string(opt.kind);
    manifest["s"] = r.median.s;
    if (est_s_from_counts) manifest["s_from_counts"] = *est_s_from_counts;
    manifest["tie_policy"] = est_ties;
    manifest["gamma"] = opt.gamma;
    manifest["tuning"] = tuning_json(opt.tuning);
    manifest["run"] = pipeline_run_json(r);
    manifest["outputs"] = {result_path.filename().string(), edges_path.filename().string(),
                           scores_path.filename().string()};
    write_json_file(manifest_path, manifest);

    out << "median graph: d=" << r.median.graph.dim() << " s=" << r.median.s
        << " T=" << r.median.counts.graphs() << " ties=" << r.median.tie_report.size()
        << '\n';
    return 0;
  }

  int run_evaluate() {
    std::ostringstream report;
    bool did_something = false;

    if (!ev_diff.empty()) {
      if (ev_estimate.empty()) {
        throw Error(ErrorKind::InvalidConfig, "--diff needs --estimate");
      }
      const auto labels = split(ev_labels, ',');
      if (labels.size() != 2) {
        throw Error(ErrorKind::InvalidConfig, "--labels expects L1,L2");
      }
      const MedianResult a = median_result_from_json(read_json_file(ev_estimate));
      const MedianResult b = median_result_from_json(read_json_file(ev_diff));
      const DiffRow row{ev_row, diff_summary(a.graph, labels[0], b.graph, labels[1])};
      write_diff_table(report, std::span(&row, 1));
      did_something = true;
    }

    if (!ev_truth.empty()) {
      const BinaryGraph truth = load_truth(ev_truth);
      if (!ev_estimate.empty() && ev_diff.empty()) {
        const MedianResult r = median_result_from_json(read_json_file(ev_estimate));
        const Confusion c = confusion(r.graph, truth);
        Json j;
        j["tp"] = c.tp;
        j["fp"] = c.fp;
        j["fn"] = c.fn;
        j["tn"] = c.tn;
        j["tpr"] = c.tpr();
        j["fpr"] = c.fpr();
        j["f1"] = c.f1();
        j["hamming"] = hamming_distance(r.graph, truth);
        report << j.dump(2) << '\n';
        did_something = true;
      }
      if (!ev_roc.empty()) {
        if (ev_scores.empty()) {
          throw Error(ErrorKind::InvalidConfig, "--roc needs --scores from estimate");
        }
        const ScoreTable table = read_scores_csv(ev_scores, truth.dim());
        const auto ranking = rank_pairs(table.counts, table.scores);
        const RocCurve curve = roc_sweep(ranking, truth, full_sweep(truth.dim()));
        std::ofstream roc(ev_roc, std::ios::binary);
        if (!roc) throw Error(ErrorKind::DataFormat, "cannot write " + ev_roc);
        write_roc_csv(roc, curve);
        report << "auc=" << format_double(curve.auc) << '\n';
        did_something = true;
      }
    }
    if (!did_something) {
      throw Error(ErrorKind::InvalidConfig,
                  "evaluate needs --truth with --estimate or --roc, or --estimate with --diff");
    }
    if (ev_out.empty()) {
      out << report.str();
    } else {
      write_text_file(ev_out, report.str());
    }
    return 0;
  }

  int run_compare() {
    BinaryGraph truth;
    DatasetCollection inputs;
    Json source;
    std::uint64_t seed = 0;
    if (!cmp_inputs.empty()) {
      if (cmp_truth.empty()) {
        throw Error(ErrorKind::InvalidConfig, "compare with --inputs needs --truth");
      }
      inputs = load_inputs(cmp_inputs);
      truth = load_truth(cmp_truth);
      seed = cmp.seed;
      source["inputs"] = cmp_inputs;
      source["truth"] = cmp_truth;
    } else {
      const SyntheticScenario sc = cmp.resolve();
      ScenarioData data = generate_scenario(sc);
      truth = data.median_graph;
      inputs = from_scenario(data);
      seed = sc.seed;
      source["scenario"] = scenario_json(sc);
    }
    if (truth.dim() != inputs.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "truth graph and data dimensions differ");
    }

    PipelineOptions opt;
    opt.s = cmp_s.value_or(truth.edge_count());
    opt.ties = parse_tie_mode(cmp_ties);
    opt.tuning = cmp_tuning.resolve(seed);
    opt.gamma = cmp_tuning.gamma;

    const fs::path dir(cmp_out);
    fs::create_directories(dir);
    Json runs = Json::array();
    Json outputs = Json::array();
    Json aucs = Json::object();
    std::map<PipelineKind, BinaryGraph> medians;
    for (PipelineKind kind : kAllPipelines) {
      opt.kind = kind;
      const PipelineResult r = run_pipeline(inputs, opt);
      const std::string name = to_string(kind);
      const RocCurve curve = roc_sweep(r.ranking, truth, full_sweep(truth.dim()));
      {
        std::ofstream roc(dir / ("roc_" + name + ".csv"), std::ios::binary);
        write_roc_csv(roc, curve);
      }
      write_json_file(dir / ("median_" + name + ".json"), median_result_to_json(r.median));
      write_text_file(dir / ("median_" + name + ".edges"), to_edge_list(r.median.graph));
      outputs.push_back("roc_" + name + ".csv");
      outputs.push_back("median_" + name + ".json");
      outputs.push_back("median_" + name + ".edges");
      Json run = pipeline_run_json(r);
      run["auc"] = curve.auc;
      runs.push_back(std::move(run));
      aucs[name] = curve.auc;
      medians[kind] = r.median.graph;
    }

    std::vector<DiffRow> rows;
    rows.push_back({"median", diff_summary(medians[PipelineKind::Kendall], "Kendall",
                                           medians[PipelineKind::Pearson], "Pearson")});
    rows.push_back({"median", diff_summary(medians[PipelineKind::Kendall], "Kendall",
                                           medians[PipelineKind::NP], "NP")});
    rows.push_back({"median", diff_summary(medians[PipelineKind::Pearson], "Pearson",
                                           medians[PipelineKind::NP], "NP")});
    rows.push_back({"truth", diff_summary(medians[PipelineKind::Kendall], "Kendall",
                                          truth, "Truth")});
    {
      std::ofstream diff(dir / "diff.txt", std::ios::binary);
      write_diff_table(diff, rows);
    }
    outputs.push_back("diff.txt");

    Json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = "compare";
    manifest["seed"] = seed;
    manifest["source"] = std::move(source);
    manifest["s"] = opt.s;
    manifest["tie_policy"] = cmp_ties;
    manifest["gamma"] = opt.gamma;
    manifest["tuning"] = tuning_json(opt.tuning);
    manifest["truth"] = {{"d", truth.dim()}, {"edges", edges_to_json(truth)}};
    manifest["runs"] = std::move(runs);
    manifest["outputs"] = std::move(outputs);
    write_json_file(dir / "manifest.json", manifest);

    out << aucs.dump() << '\n';
    return 0;
  }

  int run_bench() {
    const SyntheticScenario base = bench.resolve();
    if (bench_seeds < 1) throw Error(ErrorKind::InvalidConfig, "--seeds must be >= 1");
    const fs::path dir(bench_out);
    fs::create_directories(dir);

    std::map<PipelineKind, std::vector<double>> aucs;
    std::ostringstream csv;
    csv << "seed,pipeline,auc,hamming\n";
    for (int i = 0; i < bench_seeds; ++i) {
      SyntheticScenario sc = base;
      sc.seed = base.seed + static_cast<std::uint64_t>(i);
      const ScenarioData data = generate_scenario(sc);
      const DatasetCollection inputs = from_scenario(data);
      PipelineOptions opt;
      opt.s = bench_s.value_or(data.median_graph.edge_count());
      opt.ties = TieMode::Score;
      opt.tuning = bench_tuning.resolve(sc.seed);
      opt.gamma = bench_tuning.gamma;
      for (PipelineKind kind : kAllPipelines) {
        opt.kind = kind;
        const PipelineResult r = run_pipeline(inputs, opt);
        const RocCurve curve =
            roc_sweep(r.ranking, data.median_graph, full_sweep(sc.d));
        aucs[kind].push_back(curve.auc);
        csv << sc.seed << ',' << to_string(kind) << ',' << format_double(curve.auc) << ','
            << hamming_distance(r.median.graph, data.median_graph) << '\n';
      }
    }
    write_text_file(dir / "bench.csv", csv.str());

    Json summary;
    summary["version"] = kVersion;
    summary["command"] = "bench";
    summary["scenario"] = scenario_json(base);
    summary["seeds"] = bench_seeds;
    Json per = Json::object();
    for (PipelineKind kind : kAllPipelines) {
      const auto& v = aucs[kind];
      double mean = 0.0;
      for (double a : v) mean += a;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double a : v) var += (a - mean) * (a - mean);
      const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
      per[to_string(kind)] = {{"mean_auc", mean}, {"sd_auc", sd}, {"runs", v.size()}};
    }
    summary["pipelines"] = per;
    write_json_file(dir / "summary.json", summary);
    out << per.dump() << '\n';
    return 0;
  }
};

}  // namespace

SyntheticScenario load_scenario(const fs::path& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::DataFormat, "cannot open " + path.string());
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw Error(ErrorKind::DataFormat, path.string() + ": " + e.what());
  }

  std::map<std::string, std::string> kv;
  for (const auto& item : items) {
    if (item.parents.size() != 2 || item.parents[0] != "scenario" ||
        item.parents[1] != name || item.name == "++" || item.name == "--")
      continue;
    kv[item.name] = item.inputs.empty() ? "" : item.inputs.front();
  }
  if (kv.empty()) {
    throw Error(ErrorKind::InvalidConfig,
                path.string() + ": no [scenario." + name + "] section");
  }

  SyntheticScenario sc;
  auto number = [&](const std::string& key) { return parse_double(kv.at(key), key); };
  auto integer = [&](const std::string& key) {
    const double v = number(key);
    if (v != std::floor(v)) throw Error(ErrorKind::InvalidConfig, key + " must be an integer");
    return static_cast<long long>(v);
  };
  if (kv.count("pattern")) sc.pattern = GraphPattern::parse(kv.at("pattern"));
  for (const auto& [key, value] : kv) {
    if (key == "pattern") continue;
    else if (key == "d") sc.d = static_cast<int>(integer(key));
    else if (key == "t" || key == "T") sc.datasets = static_cast<int>(integer(key));
    else if (key == "n") sc.n = static_cast<int>(integer(key));
    else if (key == "perturb_edges") sc.perturb_edges = static_cast<int>(integer(key));
    else if (key == "off_value") sc.off_value = number(key);
    else if (key == "sigma_fill") sc.sigma_fill = number(key);
    else if (key == "seed") sc.seed = static_cast<std::uint64_t>(integer(key));
    else if (key == "bandwidth") sc.pattern.bandwidth = static_cast<int>(integer(key));
    else if (key == "groups") sc.pattern.groups = static_cast<int>(integer(key));
    else if (key == "within_prob") sc.pattern.within_prob = number(key);
    else if (key == "hubs") sc.pattern.hub_count = static_cast<int>(integer(key));
    else if (key == "edge_prob") sc.pattern.edge_prob = number(key);
    else if (key == "marginals") {
      if (value == "gaussian") sc.marginals = MarginalKind::Gaussian;
      else if (value == "nonparanormal") sc.marginals = MarginalKind::Nonparanormal;
      else throw Error(ErrorKind::InvalidConfig, "marginals must be gaussian or nonparanormal");
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown scenario key '" + key + "'");
    }
  }
  sc.validate();
  return sc;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Sparse median graph estimation across heterogeneous datasets", "mgk"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "INI file; [subcommand] sections supply defaults");
  app.require_subcommand(1);

  Commands cmd(out);

  auto* simulate = app.add_subcommand("simulate", "Write a synthetic scenario and its truth manifest");
  cmd.sim.add(simulate);
  simulate->add_option("--out", cmd.sim_out, "Output directory")->required();
  simulate->add_option("--s", cmd.sim_s, "Expected median sparsity (checked)");

  auto* estimate = app.add_subcommand("estimate", "Estimate the sparse median graph from CSV datasets");
  estimate->add_option("--pipeline", cmd.est_pipeline, "kendall | pearson | np");
  estimate->add_option("--s", cmd.est_s, "Sparsity of the median graph");
  estimate->add_option("--s-from-counts", cmd.est_s_from_counts,
                       "Extension: keep pairs present in at least this many graphs");
  estimate->add_option("--inputs", cmd.est_inputs, "CSV datasets")->required();
  estimate->add_option("--out", cmd.est_out, "Median result JSON path");
  estimate->add_option("--tie-policy", cmd.est_ties, "error | lexicographic | score");
  estimate->add_option("--seed", cmd.est_seed, "Seed for StARS subsampling");
  cmd.est_tuning.add(estimate);

  auto* evaluate = app.add_subcommand("evaluate", "Score an estimate against truth, sweep ROC, or diff two estimates");
  evaluate->add_option("--estimate", cmd.ev_estimate, "Median result JSON");
  evaluate->add_option("--truth", cmd.ev_truth, "Truth manifest JSON or edge list");
  evaluate->add_option("--scores", cmd.ev_scores, "Scores CSV written by estimate");
  evaluate->add_option("--roc", cmd.ev_roc, "Write the ROC sweep CSV here");
  evaluate->add_option("--diff", cmd.ev_diff, "Second median result JSON to diff against");
  evaluate->add_option("--labels", cmd.ev_labels, "Diff labels as L1,L2");
  evaluate->add_option("--row", cmd.ev_row, "Diff row name");
  evaluate->add_option("--out", cmd.ev_out, "Write the report here instead of stdout");

  auto* compare = app.add_subcommand("compare", "Run NP, Pearson and Kendall; emit ROC CSVs and a diff table");
  cmd.cmp.add(compare);
  compare->add_option("--inputs", cmd.cmp_inputs, "CSV datasets instead of a scenario");
  compare->add_option("--truth", cmd.cmp_truth, "Truth for --inputs");
  compare->add_option("--out", cmd.cmp_out, "Output directory")->required();
  compare->add_option("--s", cmd.cmp_s, "Median sparsity (default: truth edge count)");
  compare->add_option("--tie-policy", cmd.cmp_ties, "error | lexicographic | score");
  cmd.cmp_tuning.add(compare);

  auto* bench = app.add_subcommand("bench", "Repeat a scenario over seeds and aggregate AUC");
  cmd.bench.add(bench);
  bench->add_option("--seeds", cmd.bench_seeds, "Number of consecutive seeds");
  bench->add_option("--out", cmd.bench_out, "Output directory")->required();
  bench->add_option("--s", cmd.bench_s, "Median sparsity (default: truth edge count)");
  cmd.bench_tuning.add(bench);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = e.get_exit_code();
    if (code == 0) {
      // --help / --version
      app.exit(e, out, err);
      return 0;
    }
    Json j;
    j["error"] = "Usage";
    j["message"] = e.what();
    j["exit_code"] = 1;
    err << j.dump() << '\n';
    return 1;
  }

  try {
    if (*simulate) return cmd.run_simulate();
    if (*estimate) return cmd.run_estimate();
    if (*evaluate) return cmd.run_evaluate();
    if (*compare) return cmd.run_compare();
    if (*bench) return cmd.run_bench();
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    err << error_json(e, code).dump() << '\n';
    return code;
  } catch (const fs::filesystem_error& e) {
    Json j{{"error", "DataFormat"}, {"message", e.what()}, {"exit_code", 2}};
    err << j.dump() << '\n';
    return 2;
  }
  return 1;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace mgk
