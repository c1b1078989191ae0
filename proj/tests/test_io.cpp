#include <doctest.h>

#include <sstream>

#include "mgk/error.hpp"
#include "mgk/io.hpp"

using namespace mgk;

TEST_CASE("csv with and without header") {
  std::istringstream with("a,b\n1,2\n3.5,-4e-2\n");
  const Matrix m = read_csv_matrix(with, "with");
  REQUIRE(m.rows() == 2);
  CHECK(m(1, 1) == -0.04);

  std::istringstream without("1,2\n3,4\n\n5,6\n");
  CHECK(read_csv_matrix(without, "without").rows() == 3);
}

TEST_CASE("csv errors name the cell") {
  std::istringstream missing("x,y\n1,2\n3,\n");
  try {
    read_csv_matrix(missing, "data.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DataFormat);
    CHECK(std::string(e.what()).find("line 3, column 2") != std::string::npos);
  }
  std::istringstream text("1,2\n3,NA\n");
  CHECK_THROWS_AS(read_csv_matrix(text, "t"), Error);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_csv_matrix(ragged, "r"), Error);
  std::istringstream empty("a,b\n");
  CHECK_THROWS_AS(read_csv_matrix(empty, "e"), Error);
}

TEST_CASE("csv round trip keeps every bit") {
  Matrix m(3, 2);
  m << 0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 1e308, -0.0;
  std::stringstream ss;
  write_csv_matrix(ss, m);
  CHECK(ss.str().rfind("V1,V2\n", 0) == 0);
  CHECK(read_csv_matrix(ss, "rt") == m);
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("median result json round trip") {
  std::vector<BinaryGraph> graphs{BinaryGraph(4, {{0, 1}, {0, 2}}), BinaryGraph(4, {{0, 1}}),
                                  BinaryGraph(4, {{0, 1}, {2, 3}})};
  const auto r = sparse_median(graphs, 2, TiePolicy::Lexicographic);
  const Json j = median_result_to_json(r);
  CHECK(j.at("d") == 4);
  CHECK(j.at("T") == 3);
  CHECK(j.at("edges") == Json::parse("[[1,2],[1,3]]"));
  CHECK(j.at("zeta").at("1,2") == 3);
  CHECK(j.at("ties") == Json::parse("[[1,3],[3,4]]"));

  const auto back = median_result_from_json(Json::parse(j.dump()));
  CHECK(back.graph == r.graph);
  CHECK(back.s == r.s);
  CHECK(back.tie_report == r.tie_report);
  CHECK(back.per_dataset_distances == r.per_dataset_distances);
  for (std::int64_t p = 0; p < pair_count(4); ++p)
    CHECK(back.counts.count_at(p) == r.counts.count_at(p));

  CHECK_THROWS_AS(median_result_from_json(Json::parse("{\"d\":3}")), Error);
}
