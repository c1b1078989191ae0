#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgk/cli.hpp"
#include "mgk/error.hpp"
#include "mgk/io.hpp"

using namespace mgk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli_main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mgk_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> csv_files(const fs::path& dir) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("simulate is deterministic and writes a manifest") {
  const auto dir = scratch("simulate");
  const std::vector<std::string> base{"simulate", "--pattern", "banded", "--d", "40",
                                      "--t", "10", "--n", "100", "--s", "39", "--seed", "7"};
  auto a = base;
  a.insert(a.end(), {"--out", (dir / "a").string()});
  auto b = base;
  b.insert(b.end(), {"--out", (dir / "b").string()});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  for (const auto& e : fs::directory_iterator(dir / "a"))
    CHECK(read_text_file(e.path()) == read_text_file(dir / "b" / e.path().filename()));

  const Json m = read_json_file(dir / "a" / "manifest.json");
  CHECK(m.at("seed") == 7);
  CHECK(m.at("s") == 39);
  CHECK(m.at("files").size() == 10);
  CHECK(m.at("dataset_graphs").size() == 10);
  CHECK(read_text_file(dir / "a" / "truth.edges").rfind("# d=40 s=39\n", 0) == 0);

  auto wrong = base;
  wrong[10] = "38";
  wrong.insert(wrong.end(), {"--out", (dir / "c").string()});
  CHECK(run(wrong).code == 1);
}

TEST_CASE("estimate and evaluate") {
  const auto dir = scratch("estimate");
  REQUIRE(run({"simulate", "--d", "12", "--t", "4", "--n", "80", "--perturb-edges", "3",
               "--seed", "2", "--out", (dir / "sim").string()})
              .code == 0);
  auto inputs = csv_files(dir / "sim");
  std::vector<std::string> args{"estimate", "--pipeline", "kendall", "--s", "11",
                                "--lambda", "0.25", "--tie-policy", "score",
                                "--out", (dir / "est" / "result.json").string(), "--inputs"};
  args.insert(args.end(), inputs.begin(), inputs.end());
  const Run est = run(args);
  REQUIRE(est.code == 0);
  CHECK(est.out.find("median graph: d=12 s=11 T=4") != std::string::npos);
  for (const char* f : {"result.json", "result.edges", "result.scores.csv",
                        "result.manifest.json"})
    CHECK(fs::exists(dir / "est" / f));

  const Run score = run({"evaluate", "--estimate", (dir / "est" / "result.json").string(),
                         "--truth", (dir / "sim" / "manifest.json").string()});
  REQUIRE(score.code == 0);
  const Json j = Json::parse(score.out);
  CHECK(j.at("tp").get<int>() + j.at("fp").get<int>() + j.at("fn").get<int>() +
            j.at("tn").get<int>() ==
        66);

  const Run roc = run({"evaluate", "--truth", (dir / "sim" / "truth.edges").string(),
                       "--scores", (dir / "est" / "result.scores.csv").string(), "--roc",
                       (dir / "roc.csv").string()});
  REQUIRE(roc.code == 0);
  const std::string csv = read_text_file(dir / "roc.csv");
  CHECK(csv.rfind("s,fpr,tpr\n0,0,0\n", 0) == 0);
  CHECK(csv.find("# auc=") != std::string::npos);

  const Run diff = run({"evaluate", "--estimate", (dir / "est" / "result.json").string(),
                        "--diff", (dir / "est" / "result.json").string(), "--labels", "A,B",
                        "--row", "site"});
  REQUIRE(diff.code == 0);
  CHECK(diff.out.find("A > B") != std::string::npos);
  CHECK(diff.out.find("site  11  11      0      0") != std::string::npos);
}

TEST_CASE("exit codes and error json") {
  const auto dir = scratch("errors");
  CHECK(run({}).code == 1);
  CHECK(run({"estimate", "--bogus"}).code == 1);
  CHECK(run({"simulate", "--pattern", "lattice", "--out", dir.string()}).code == 1);

  const Run missing = run({"estimate", "--s", "1", "--lambda", "0.1", "--inputs",
                           (dir / "nope.csv").string()});
  CHECK(missing.code == 2);
  CHECK(Json::parse(missing.err).at("error") == "DataFormat");

  // Duplicated column: singular correlation, infeasible at lambda 0.
  {
    std::ofstream f(dir / "dup.csv");
    f << "a,b,c\n1,1,3\n2,2,1\n3,3,2\n4,4,5\n5,5,4\n";
  }
  const Run infeasible = run({"estimate", "--s", "1", "--lambda", "0", "--inputs",
                              (dir / "dup.csv").string(), "--out",
                              (dir / "r.json").string()});
  CHECK(infeasible.code == 3);
  CHECK(Json::parse(infeasible.err).at("error") == "Infeasible");

  const Run tie = run({"estimate", "--s", "1", "--lambda", "0.99", "--inputs",
                       (dir / "dup.csv").string(), "--out", (dir / "r.json").string()});
  CHECK(tie.code == 4);
  const Json tj = Json::parse(tie.err);
  CHECK(tj.at("error") == "TieAtRankS");
  CHECK(tj.at("tied_pairs").size() == 3);

  {
    std::ofstream f(dir / "bad.csv");
    f << "1,2\n3,x\n";
  }
  CHECK(run({"estimate", "--s", "1", "--lambda", "0.1", "--inputs",
             (dir / "bad.csv").string()})
            .code == 2);
}

TEST_CASE("scenario files and config sections") {
  const auto dir = scratch("config");
  {
    std::ofstream f(dir / "scenarios.ini");
    f << "[scenario.small]\npattern = hub\nd = 10\nt = 3\nn = 40\nperturb_edges = 2\nseed = 5\n"
      << "[scenario.broken]\nd = 10\ncolour = red\n";
  }
  REQUIRE(run({"simulate", "--scenario-file", (dir / "scenarios.ini").string(), "--scenario",
               "small", "--out", (dir / "s").string()})
              .code == 0);
  const Json m = read_json_file(dir / "s" / "manifest.json");
  CHECK(m.at("scenario").at("pattern") == "hub");
  CHECK(m.at("scenario").at("T") == 3);

  const SyntheticScenario sc = load_scenario(dir / "scenarios.ini", "small");
  CHECK(sc.d == 10);
  CHECK(sc.seed == 5);
  CHECK_THROWS_AS(load_scenario(dir / "scenarios.ini", "broken"), Error);
  CHECK_THROWS_AS(load_scenario(dir / "scenarios.ini", "absent"), Error);

  {
    std::ofstream f(dir / "run.ini");
    f << "[simulate]\nd = 9\nt = 2\nn = 30\nperturb_edges = 1\n";
  }
  REQUIRE(run({"--config", (dir / "run.ini").string(), "simulate", "--out",
               (dir / "c").string()})
              .code == 0);
  CHECK(read_json_file(dir / "c" / "manifest.json").at("scenario").at("d") == 9);
}

TEST_CASE("compare writes the full report") {
  const auto dir = scratch("compare");
  const Run r = run({"compare", "--pattern", "scale-free", "--d", "20", "--t", "4", "--n",
                     "60", "--perturb-edges", "3", "--seed", "3", "--lambda", "0.3", "--out",
                     dir.string()});
  REQUIRE(r.code == 0);
  const Json aucs = Json::parse(r.out);
  for (const char* k : {"np", "pearson", "kendall"}) {
    CHECK(aucs.at(k).get<double>() >= 0.0);
    CHECK(aucs.at(k).get<double>() <= 1.0);
    CHECK(fs::exists(dir / (std::string("roc_") + k + ".csv")));
    CHECK(fs::exists(dir / (std::string("median_") + k + ".json")));
  }
  const std::string diff = read_text_file(dir / "diff.txt");
  CHECK(diff.find("Kendall > Pearson") != std::string::npos);
  CHECK(read_json_file(dir / "manifest.json").at("runs").size() == 3);
}

TEST_CASE("bench aggregates over seeds") {
  const auto dir = scratch("bench");
  const Run r = run({"bench", "--pattern", "random", "--d", "12", "--t", "3", "--n", "50",
                     "--perturb-edges", "2", "--seeds", "2", "--lambda", "0.3", "--out",
                     dir.string()});
  REQUIRE(r.code == 0);
  const std::string csv = read_text_file(dir / "bench.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(read_json_file(dir / "summary.json").at("pipelines").at("kendall").at("runs") == 2);
}

TEST_CASE("paper-scale smoke run") {
  const auto dir = scratch("paper");
  const Run r = run({"compare", "--pattern", "banded", "--d", "100", "--t", "10", "--n",
                     "100", "--seed", "1", "--lambda", "0.3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"roc_np.csv", "roc_pearson.csv", "roc_kendall.csv", "diff.txt",
                        "manifest.json", "median_kendall.json"})
    CHECK(fs::exists(dir / f));
}
