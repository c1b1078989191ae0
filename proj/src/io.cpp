#include "mgk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgk/error.hpp"

namespace mgk {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

Matrix read_csv_matrix(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    std::vector<double> values(cells.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_number(cells[c], values[c])) {
        numeric = false;
        bad = c;
        break;
      }
    }
    if (first) {
      first = false;
      width = cells.size();
      if (!numeric) continue;  // header row
    }
    if (cells.size() != width) {
      throw Error(ErrorKind::DataFormat,
                  source + ": line " + std::to_string(lineno) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(width));
    }
    if (!numeric) {
      throw Error(ErrorKind::DataFormat,
                  source + ": missing or non-numeric value '" + cells[bad] +
                      "' at line " + std::to_string(lineno) + ", column " +
                      std::to_string(bad + 1));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) {
    throw Error(ErrorKind::DataFormat, source + ": no observations");
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::DataFormat, "cannot open " + path.string());
  }
  return read_csv_matrix(in, path.string());
}

void write_csv_matrix(std::ostream& out, const Matrix& data) {
  for (Eigen::Index j = 0; j < data.cols(); ++j)
    out << (j ? "," : "") << 'V' << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      out << (j ? "," : "") << format_double(data(i, j));
    out << '\n';
  }
}

void write_csv_matrix(const std::filesystem::path& path, const Matrix& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::DataFormat, "cannot write " + path.string());
  write_csv_matrix(out, data);
}

Json edges_to_json(const BinaryGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.j + 1, e.k + 1});
  return edges;
}

BinaryGraph edges_from_json(int dim, const Json& edges) {
  std::vector<Edge> out;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) {
      throw Error(ErrorKind::DataFormat, "edge must be a [j,k] pair");
    }
    out.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
  }
  return BinaryGraph(dim, std::move(out));
}

Json median_result_to_json(const MedianResult& result) {
  const int d = result.graph.dim();
  Json j;
  j["d"] = d;
  j["s"] = result.s;
  j["T"] = result.counts.graphs();
  j["edges"] = edges_to_json(result.graph);
  Json zeta = Json::object();
  for (std::int64_t p = 0; p < pair_count(d); ++p) {
    const int c = result.counts.count_at(p);
    if (c == 0) continue;
    const Edge e = pair_at(p, d);
    zeta[std::to_string(e.j + 1) + "," + std::to_string(e.k + 1)] = c;
  }
  j["zeta"] = std::move(zeta);
  Json ties = Json::array();
  for (const auto& e : result.tie_report) ties.push_back({e.j + 1, e.k + 1});
  j["ties"] = std::move(ties);
  j["distances"] = result.per_dataset_distances;
  return j;
}

MedianResult median_result_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    MedianResult r;
    r.graph = edges_from_json(d, j.at("edges"));
    r.s = j.at("s").get<std::int64_t>();
    r.counts = EdgeCountTable(d, j.at("T").get<int>());
    for (const auto& [key, value] : j.at("zeta").items()) {
      int a = 0, b = 0;
      if (std::sscanf(key.c_str(), "%d,%d", &a, &b) != 2 || a < 1 || b < 1 ||
          a > d || b > d || a == b) {
        throw Error(ErrorKind::DataFormat, "bad zeta key '" + key + "'");
      }
      if (a > b) std::swap(a, b);
      const auto p = pair_index(a - 1, b - 1, d);
      for (int c = value.get<int>(); c > 0; --c) r.counts.increment(p);
    }
    for (const auto& e : j.at("ties"))
      r.tie_report.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
    r.per_dataset_distances =
        j.at("distances").get<std::vector<std::int64_t>>();
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::DataFormat,
                std::string("malformed median result JSON: ") + ex.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::DataFormat, "cannot write " + path.string());
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::DataFormat, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::DataFormat,
                path.string() + ": invalid JSON: " + ex.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace mgk
