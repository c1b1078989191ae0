#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgk/correlation.hpp"
#include "mgk/graph.hpp"
#include "mgk/median.hpp"

namespace mgk {

/// %.17g: enough digits to round-trip any double.
std::string format_double(double v);

// CSV observation matrix. A first line containing any non-numeric cell is a
// header. Empty, NA or otherwise unparsable cells abort with their row and
// column.
Matrix read_csv_matrix(std::istream& in, const std::string& source = "<stream>");
Matrix read_csv_matrix(const std::filesystem::path& path);

/// Header V1..Vd, one observation per line.
void write_csv_matrix(std::ostream& out, const Matrix& data);
void write_csv_matrix(const std::filesystem::path& path, const Matrix& data);

using Json = nlohmann::ordered_json;

/// [[j,k],...], 1-based.
Json edges_to_json(const BinaryGraph& g);
BinaryGraph edges_from_json(int dim, const Json& edges);

// {d, s, T, edges, zeta, ties, distances} in that order. zeta lists only
// nonzero counts, keyed "j,k" in lexicographic pair order.
Json median_result_to_json(const MedianResult& result);
/// Restores graph, s, counts, ties and distances.
MedianResult median_result_from_json(const Json& j);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace mgk
