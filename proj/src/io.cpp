#include "schemex/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace schemex {

namespace {

// Reads the next non-blank line, split into unsigned integers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::size_t>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fields.clear();
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
          throw ParseError("line " + std::to_string(lineno_) + ": '" + tok + "' is not a non-negative integer");
        fields.push_back(v);
      }
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

}  // namespace

RelationMatrix read_scheme_file(std::istream& in) {
  LineReader reader(in);
  std::vector<std::size_t> f;
  if (!reader.next(f)) throw ParseError("empty scheme file");
  if (f.size() != 2) throw ParseError("header must be 'n d'");
  const std::size_t n = f[0];
  const std::size_t d = f[1];
  if (n == 0) throw ParseError("n must be positive");
  if (d > std::numeric_limits<RelIndex>::max()) throw ParseError("d is too large");

  std::vector<RelIndex> entries;
  entries.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!reader.next(f)) throw ParseError("truncated: expected " + std::to_string(n) + " rows, got " + std::to_string(x));
    if (f.size() != n) {
      throw ParseError("line " + std::to_string(reader.line()) + ": expected " + std::to_string(n) + " entries, got " +
                       std::to_string(f.size()));
    }
    for (auto v : f) {
      if (v > d) {
        throw ParseError("line " + std::to_string(reader.line()) + ": relation index " + std::to_string(v) +
                         " exceeds d=" + std::to_string(d));
      }
      entries.push_back(static_cast<RelIndex>(v));
    }
  }
  if (reader.next(f)) throw ParseError("line " + std::to_string(reader.line()) + ": trailing data after the last row");
  return RelationMatrix(n, d, std::move(entries));
}

void write_scheme_file(std::ostream& out, const RelationMatrix& rm) {
  out << rm.n() << ' ' << rm.d() << '\n';
  for (std::size_t x = 0; x < rm.n(); ++x) {
    const auto row = rm.row(x);
    for (std::size_t y = 0; y < row.size(); ++y) out << (y ? " " : "") << row[y];
    out << '\n';
  }
}

Graph read_edge_file(std::istream& in) {
  LineReader reader(in);
  std::vector<std::size_t> f;
  if (!reader.next(f)) throw ParseError("empty edge file");
  if (f.size() != 2) throw ParseError("header must be 'n m'");
  const std::size_t n = f[0];
  const std::size_t m = f[1];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t e = 0; e < m; ++e) {
    if (!reader.next(f)) throw ParseError("truncated: expected " + std::to_string(m) + " edges, got " + std::to_string(e));
    if (f.size() != 2) throw ParseError("line " + std::to_string(reader.line()) + ": expected 'u v'");
    edges.emplace_back(f[0], f[1]);
  }
  if (reader.next(f)) throw ParseError("line " + std::to_string(reader.line()) + ": trailing data after the last edge");
  try {
    return Graph(n, edges);
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  }
}

void write_edge_file(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

double report_number(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

namespace {

using json = nlohmann::ordered_json;

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(report_number(x));
  return a;
}

json matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(report_number(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const RouteVerdict& rv) {
  json j;
  j["verdict"] = to_string(rv.verdict);
  j["ordering"] = rv.ordering ? json(*rv.ordering) : json(nullptr);
  j["l"] = rv.l ? json(*rv.l) : json(nullptr);
  j["max_residual"] = report_number(rv.max_residual);
  if (!rv.candidate_residuals.empty()) j["candidate_residuals"] = numbers(rv.candidate_residuals);
  j["witness"] = rv.witness;
  return j;
}

json to_json(const DetectionReport& r) {
  const auto& sd = r.spectral;
  json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["tol"] = report_number(r.tol);
  j["valencies"] = r.valencies;
  j["theta"] = numbers(sd.theta);
  j["multiplicities"] = sd.m;
  j["P"] = matrix(sd.P);
  j["Q"] = matrix(sd.Q);
  j["krein_min"] = r.krein ? json(report_number(r.krein->min())) : json(nullptr);
  json routes;
  routes["tridiagonal"] = to_json(r.tridiagonal);
  routes["nstar"] = to_json(r.nstar_verdict);
  routes["excess"] = to_json(r.excess);
  routes["predistance"] = to_json(r.predistance_verdict);
  routes["q_poly"] = r.q_poly ? to_json(*r.q_poly) : json(nullptr);
  j["routes"] = std::move(routes);
  j["nstar_sets"] = r.nstar ? json(r.nstar->sets) : json(nullptr);
  j["spectrum_simple"] = r.spectrum_simple;
  j["consensus"] = r.consensus ? "yes" : "no";
  j["outcome"] = to_string(r.outcome());
  json res;
  res["pq"] = report_number(r.pq_residual);
  res["q_crosscheck"] = report_number(sd.q_crosscheck_residual);
  res["eigen_split"] = report_number(sd.split_residual);
  res["krein_expansion"] = r.krein ? json(report_number(r.krein->expansion_residual())) : json(nullptr);
  res["mstar"] = numbers(r.mstar_residuals);
  res["coincidence"] = r.coincidence_residual ? json(report_number(*r.coincidence_residual)) : json(nullptr);
  j["residuals"] = std::move(res);
  j["disagreements"] = r.disagreements;
  return j;
}

json to_json(const SpectralExcessReport& r) {
  json j;
  json spec = json::array();
  for (std::size_t i = 0; i <= r.spectrum.d(); ++i)
    spec.push_back({{"theta", report_number(r.spectrum.theta(i))}, {"m", report_number(r.spectrum.m(i))}});
  j["spectrum"] = std::move(spec);
  j["d"] = r.d;
  j["diameter"] = r.diameter;
  j["pd_theta0"] = report_number(r.pd_theta0);
  j["excess"] = r.excess;
  j["mean_excess"] = report_number(r.mean_excess);
  j["harmonic_mean_excess"] = report_number(r.harmonic_mean_excess);
  j["drg"] = r.drg;
  j["oracle_note"] = r.oracle_note;
  return j;
}

}  // namespace schemex
