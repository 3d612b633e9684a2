#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "schemex/detect.hpp"
#include "schemex/graph_tools.hpp"
#include "schemex/scheme.hpp"

namespace schemex {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scheme file: a header line "n d", then n lines of n whitespace-separated
/// relation indices. Blank lines are ignored.
RelationMatrix read_scheme_file(std::istream& in);
void write_scheme_file(std::ostream& out, const RelationMatrix& rm);

/// Edge file: a header line "n m", then m lines "u v" with 0-indexed
/// endpoints. Loops, duplicates and out-of-range endpoints are rejected.
Graph read_edge_file(std::istream& in);
void write_edge_file(std::ostream& out, const Graph& g);

/// Rounds to 12 significant digits so that reports are byte-stable.
double report_number(double x);

nlohmann::ordered_json to_json(const RouteVerdict& rv);
nlohmann::ordered_json to_json(const DetectionReport& r);
nlohmann::ordered_json to_json(const SpectralExcessReport& r);

}  // namespace schemex
