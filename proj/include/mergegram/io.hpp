#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mergegram/errors.hpp"
#include "mergegram/diagram.hpp"
#include "mergegram/geometry.hpp"

namespace mg {

struct NnDistanceSet;

/// Strict number parsing: the whole token must be consumed. "inf" (any case)
/// is accepted only when allow_infinite is set.
double parse_number(std::string_view token, bool allow_infinite = false);

// Cloud files: CSV, one point per line, coordinates comma-separated, lines
// starting with '#' ignored. UTF-8, LF line endings.
PointCloud read_cloud_csv(std::istream& in);
PointCloud read_cloud_file(const std::string& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_file(const std::string& path, const PointCloud& cloud);

// Diagram files: TSV with columns birth, death, multiplicity; the death
// column writes the literal "inf" for never-dying pairs.
Diagram read_diagram_tsv(std::istream& in);
Diagram read_diagram_file(const std::string& path);
void write_diagram_tsv(std::ostream& out, const Diagram& diagram);
void write_diagram_file(const std::string& path, const Diagram& diagram);

// NN(k) files: TSV, one row per point, k ascending distances.
void write_nn_tsv(std::ostream& out, const NnDistanceSet& nn);
void write_nn_file(const std::string& path, const NnDistanceSet& nn);

}  // namespace mg
