#include "mergegram/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "mergegram/errors.hpp"
#include "mergegram/invariants.hpp"

namespace mg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool skippable(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::int64_t parse_count(std::string_view token) {
  const std::string_view t = trim(token);
  std::int64_t value = 0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (result.ec != std::errc{} || result.ptr != t.data() + t.size())
    throw std::invalid_argument("not an integer: '" + std::string(token) + "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  return out;
}

}  // namespace

double parse_number(std::string_view token, bool allow_infinite) {
  const std::string_view t = trim(token);
  double value = 0.0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (result.ec != std::errc{} || result.ptr != t.data() + t.size())
    throw std::invalid_argument("not a number: '" + std::string(token) + "'");
  if (std::isnan(value)) throw std::invalid_argument("nan is not a valid value");
  if (!allow_infinite && std::isinf(value))
    throw std::invalid_argument("value must be finite");
  return value;
}

PointCloud read_cloud_csv(std::istream& in) {
  std::vector<Point> points;
  std::string line;
  std::size_t line_number = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (skippable(line)) continue;
    const auto fields = split(trim(line), ',');
    Point p;
    p.coords.reserve(fields.size());
    for (const auto& field : fields) {
      try {
        p.coords.push_back(parse_number(field));
      } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(line_number) + ": " + e.what(), line_number);
      }
    }
    if (dim == 0)
      dim = p.coords.size();
    else if (p.coords.size() != dim)
      throw ParseError("line " + std::to_string(line_number) + ": expected " +
                           std::to_string(dim) + " coordinates, got " +
                           std::to_string(p.coords.size()),
                       line_number);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ParseError("cloud file contains no points");
  return PointCloud(std::move(points));
}

PointCloud read_cloud_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_cloud_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line);
  }
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  for (const Point& p : cloud.points()) {
    for (std::size_t i = 0; i < p.dimension(); ++i) {
      if (i) out << ',';
      out << format_scale(p[i]);
    }
    out << '\n';
  }
}

void write_cloud_file(const std::string& path, const PointCloud& cloud) {
  auto out = open_output(path);
  write_cloud_csv(out, cloud);
}

Diagram read_diagram_tsv(std::istream& in) {
  Diagram diagram;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (skippable(line)) continue;
    const auto fields = split(trim(line), '\t');
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(line_number) +
                           ": expected birth<TAB>death<TAB>multiplicity",
                       line_number);
    try {
      const double birth = parse_number(fields[0]);
      const double death = parse_number(fields[1], /*allow_infinite=*/true);
      const std::int64_t mult = parse_count(fields[2]);
      diagram.add(DiagramPair(birth, death, mult));
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_number) + ": " + e.what(), line_number);
    }
  }
  return diagram;
}

Diagram read_diagram_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_diagram_tsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line);
  }
}

void write_diagram_tsv(std::ostream& out, const Diagram& diagram) {
  for (const DiagramPair& p : diagram.pairs())
    out << format_scale(p.birth) << '\t' << format_scale(p.death) << '\t' << p.multiplicity
        << '\n';
}

void write_diagram_file(const std::string& path, const Diagram& diagram) {
  auto out = open_output(path);
  write_diagram_tsv(out, diagram);
}

void write_nn_tsv(std::ostream& out, const NnDistanceSet& nn) {
  for (const auto& row : nn.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      out << format_scale(row[i]);
    }
    out << '\n';
  }
}

void write_nn_file(const std::string& path, const NnDistanceSet& nn) {
  auto out = open_output(path);
  write_nn_tsv(out, nn);
}

}  // namespace mg
