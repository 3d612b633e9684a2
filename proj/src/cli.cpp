#include "schemex/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "schemex/detect.hpp"
#include "schemex/families.hpp"
#include "schemex/graph_tools.hpp"
#include "schemex/io.hpp"

namespace schemex::cli {

namespace {

constexpr double kDefaultTol = 1e-8;

RelationMatrix load_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_scheme_file(in);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_edge_file(in);
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

double resolve_tol(const std::optional<double>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SCHEMEX_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw ParseError(std::string("invalid SCHEMEX_TOL '") + env + "'");
    return v;
  }
  return kDefaultTol;
}

int cmd_validate(const std::string& path, bool fast, unsigned threads, std::ostream& out, std::ostream& err) {
  RelationMatrix rm = [&] {
    try {
      return load_scheme(path);
    } catch (const SchemeError& e) {
      throw ParseError(e.what());
    }
  }();
  try {
    const auto s = build_scheme(std::move(rm), {.fast = fast, .threads = threads});
    out << "VALID n=" << s.n() << " d=" << s.d() << '\n';
    return kYes;
  } catch (const SchemeError& e) {
    err << "INVALID " << e.what() << '\n';
    return kInvalidScheme;
  }
}

void print_route(std::ostream& out, const RouteVerdict& rv) {
  out << "route " << rv.route << ": " << to_string(rv.verdict);
  if (rv.ordering) out << " ordering=" << join(*rv.ordering);
  if (rv.l) out << " l=" << *rv.l;
  out << " residual=" << std::setprecision(3) << rv.max_residual;
  if (!rv.witness.empty()) out << " (" << rv.witness << ")";
  out << '\n';
}

void print_report(std::ostream& out, const DetectionReport& r) {
  out << "n=" << r.n << " d=" << r.d << " valencies=";
  for (std::size_t i = 0; i < r.valencies.size(); ++i) out << (i ? "," : "") << r.valencies[i];
  out << '\n';
  print_route(out, r.tridiagonal);
  print_route(out, r.nstar_verdict);
  print_route(out, r.excess);
  print_route(out, r.predistance_verdict);
  if (r.q_poly) print_route(out, *r.q_poly);
  out << "consensus: " << (r.consensus ? "yes" : "no") << '\n';
  out << "outcome: " << to_string(r.outcome()) << '\n';
  if (r.consensus) {
    out << "ordering: " << join(*r.tridiagonal.ordering) << '\n';
    out << "l: " << r.tridiagonal.ordering->back() << '\n';
  }
  for (const auto& msg : r.disagreements) out << "DISAGREEMENT: " << msg << '\n';
}

int cmd_detect(const std::string& path, const std::optional<std::string>& json_path, double tol, unsigned threads,
               std::ostream& out, std::ostream& err) {
  RelationMatrix rm = [&] {
    try {
      return load_scheme(path);
    } catch (const SchemeError& e) {
      throw ParseError(e.what());
    }
  }();
  std::optional<AssociationScheme> s;
  try {
    s = build_scheme(std::move(rm), {.threads = threads});
  } catch (const SchemeError& e) {
    err << "INVALID " << e.what() << '\n';
    return kInvalidScheme;
  }

  DetectOptions opts;
  opts.tol = tol;
  try {
    const auto report = detect(*s, opts);
    print_report(out, report);
    if (json_path) write_json(*json_path, to_json(report));
    switch (report.outcome()) {
      case Outcome::Yes: return kYes;
      case Outcome::No: return kNo;
      case Outcome::PreconditionFailed: return kPrecondition;
    }
  } catch (const RouteDisagreement& e) {
    print_report(out, e.report());
    if (json_path) write_json(*json_path, to_json(e.report()));
    err << e.what() << '\n';
    return kDisagreement;
  } catch (const SpectralError& e) {
    err << e.what() << '\n';
    return kDisagreement;
  } catch (const PolyError& e) {
    err << e.what() << '\n';
    return kDisagreement;
  }
  return kDisagreement;
}

int cmd_gen(const std::string& family, const std::vector<std::size_t>& params,
            const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  try {
    const auto s = generate({family_from_string(family), params});
    if (out_path) {
      std::ofstream f(*out_path);
      if (!f) {
        err << "cannot write " << *out_path << '\n';
        return kParseError;
      }
      write_scheme_file(f, s.relations());
    } else {
      write_scheme_file(out, s.relations());
    }
    return kYes;
  } catch (const FamilyError& e) {
    err << e.what() << '\n';
    return kParseError;
  }
}

int cmd_graph(const std::string& path, const std::optional<std::string>& json_path, std::ostream& out,
              std::ostream& err) {
  const Graph g = load_graph(path);
  if (g.n() == 0) throw ParseError("graph has no vertices");
  if (const auto c = g.component_count(); c != 1) {
    err << "Disconnected: graph has " << c << " components\n";
    return kPrecondition;
  }
  if (!g.regular_degree()) {
    out << "drg: " << (is_distance_regular(g) ? "yes" : "no") << '\n';
    err << "NotRegular: vertex degrees differ\n";
    return kPrecondition;
  }
  const auto r = spectral_excess_report(g);
  out << "spectrum:";
  for (std::size_t i = 0; i <= r.spectrum.d(); ++i)
    out << ' ' << std::setprecision(10) << report_number(r.spectrum.theta(i)) << '^' << r.spectrum.m(i);
  out << '\n';
  out << "d=" << r.d << " diameter=" << r.diameter << '\n';
  const auto [lo, hi] = std::minmax_element(r.excess.begin(), r.excess.end());
  out << "excess=";
  if (*lo == *hi)
    out << *lo;
  else
    out << *lo << ".." << *hi;
  out << " p_d(theta0)=" << std::fixed << std::setprecision(6) << r.pd_theta0 << '\n';
  out << "mean_excess=" << r.mean_excess << " harmonic_mean_excess=" << r.harmonic_mean_excess << '\n';
  out.unsetf(std::ios::floatfield);
  out << "drg: " << (r.drg ? "yes" : "no");
  if (!r.oracle_note.empty()) out << " (" << r.oracle_note << ")";
  out << '\n';
  if (json_path) write_json(*json_path, to_json(r));
  return r.drg ? kYes : kNo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Association scheme analysis: validation, P-polynomial detection, graph excess"};
  app.require_subcommand(1);

  std::string path;
  std::optional<std::string> json_path;
  std::optional<double> tol_flag;
  unsigned threads = 1;
  bool fast = false;

  auto* validate = app.add_subcommand("validate", "Check the association-scheme axioms of a scheme file");
  validate->add_option("path", path, "scheme file")->required();
  validate->add_flag("--fast", fast, "check one representative pair per relation only (unsound on invalid input)");
  validate->add_option("--threads", threads, "worker threads for validation");

  auto* det = app.add_subcommand("detect", "Decide the P-polynomial property by every route");
  det->add_option("path", path, "scheme file")->required();
  det->add_option("--json", json_path, "write the JSON report here");
  det->add_option("--tol", tol_flag, "route matching tolerance (default $SCHEMEX_TOL or 1e-8)");
  det->add_option("--threads", threads, "worker threads for validation");

  std::string family;
  std::vector<std::size_t> params;
  std::optional<std::string> out_path;
  auto* gen = app.add_subcommand("gen", "Write a scheme file for a known family");
  gen->add_option("family", family, "hamming|johnson|cycle|complete|disjoint_cliques|cyclotomic13|petersen|hypercube_reordered")
      ->required();
  gen->add_option("params", params, "integer parameters of the family");
  gen->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* graph = app.add_subcommand("graph", "Distances, spectrum, excess and distance-regularity of an edge file");
  graph->add_option("path", path, "edge file")->required();
  graph->add_option("--json", json_path, "write the JSON report here");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kParseError;
  }

  try {
    if (*validate) return cmd_validate(path, fast, threads, out, err);
    if (*det) return cmd_detect(path, json_path, resolve_tol(tol_flag), threads, out, err);
    if (*gen) return cmd_gen(family, params, out_path, out, err);
    if (*graph) return cmd_graph(path, json_path, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace schemex::cli
