#pragma once

#include <iosfwd>
#include <string>

#include "cadlag/metrics.hpp"
#include "cadlag/path.hpp"

namespace cadlag {

// Text path document. Three kinds:
//   kind step        breaks/values per piece, then terminal
//   kind pl          continuous piecewise linear through (breaks, values),
//                    final knot at (domain, terminal)
//   kind segments    one "seg <start> <value> <end_value> <const|lin>" line per
//                    segment (mixed paths, e.g. empirical processes)
// '#' starts a comment; `domain` defaults to 1. Full round-trip precision.
std::string write_path(const CadlagPath& x);
CadlagPath read_path(std::istream& in);
CadlagPath read_path_file(const std::string& filename);
void write_path_file(const CadlagPath& x, const std::string& filename);

// Measure document: atoms, weights, dist matrix (one row per line).
std::string write_measure(const DiscreteMeasure& m);
DiscreteMeasure read_measure(std::istream& in);
DiscreteMeasure read_measure_file(const std::string& filename);

}  // namespace cadlag
