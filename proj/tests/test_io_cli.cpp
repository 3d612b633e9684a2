#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "schemex/cli.hpp"
#include "schemex/families.hpp"
#include "schemex/io.hpp"
#include "support/oracles.hpp"

using namespace schemex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("schemex_test_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "schemex");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string write_scheme(const std::string& path, const RelationMatrix& rm) {
  std::ofstream f(path);
  write_scheme_file(f, rm);
  return path;
}

std::string write_edges(const std::string& path, std::size_t n, const oracle::Edges& edges) {
  std::ofstream f(path);
  write_edge_file(f, Graph(n, edges));
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("scheme file round trip") {
  const auto rm = generate({Family::Cycle, {5}}).relations();
  std::stringstream ss;
  write_scheme_file(ss, rm);
  CHECK(ss.str().substr(0, 4) == "5 2\n");
  CHECK(contains(ss.str(), "0 1 2 2 1\n"));
  CHECK(read_scheme_file(ss) == rm);
}

TEST_CASE("scheme file parse errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_scheme_file(in);
  };
  CHECK_NOTHROW(parse("\n2 1\n\n0 1\n1 0\n\n"));
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("2\n0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 1\n1 0\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 2\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 x\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 -1\n1 0\n"), ParseError);
}

TEST_CASE("edge file parsing") {
  std::istringstream ok("3 2\n0 1\n1 2\n");
  CHECK(read_edge_file(ok).edge_count() == 2);
  for (const char* bad : {"3 2\n0 1\n", "3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 3\n", "3 1\n0 1\n1 2\n"}) {
    CAPTURE(bad);
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_edge_file(in), ParseError);
  }
}

TEST_CASE("report numbers") {
  CHECK(report_number(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(report_number(-1e-300 * 0.0)));
  CHECK(report_number(0.1 + 0.2) == 0.3);
  CHECK(report_number(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("validate") {
  TempDir tmp;
  {
    const auto r = run({"validate", write_scheme(tmp.file("c5"), generate({Family::Cycle, {5}}).relations())});
    CHECK(r.code == cli::kYes);
    CHECK(r.out == "VALID n=5 d=2\n");
  }
  {
    const auto r = run({"validate", write_scheme(tmp.file("p3"), oracle::distance_relations(3, oracle::path_edges(3)))});
    CHECK(r.code == cli::kInvalidScheme);
    CHECK(contains(r.err, "NotConstant"));
    CHECK(contains(r.err, "pair ("));
  }
  {
    const auto r = run({"validate", write_text(tmp.file("trunc"), "5 2\n0 1 2 2 1\n1 0 1 2\n")});
    CHECK(r.code == cli::kParseError);
  }
  CHECK(run({"validate", tmp.file("missing")}).code == cli::kParseError);
  CHECK(run({"validate", "--threads", "2", tmp.file("c5")}).code == cli::kYes);
  CHECK(run({"validate", "--fast", tmp.file("p3")}).code == cli::kYes);
  CHECK(run({"frobnicate"}).code == cli::kParseError);
}

TEST_CASE("detect exit codes") {
  TempDir tmp;
  {
    const auto r = run({"detect", write_scheme(tmp.file("h32"), generate({Family::Hamming, {3, 2}}).relations())});
    CHECK(r.code == cli::kYes);
    CHECK(contains(r.out, "consensus: yes\n"));
    CHECK(contains(r.out, "ordering: 0,1,2,3\n"));
    CHECK(contains(r.out, "l: 3\n"));
  }
  {
    const auto r = run({"detect", write_scheme(tmp.file("cy"), generate({Family::Cyclotomic13, {}}).relations())});
    CHECK(r.code == cli::kNo);
    CHECK(contains(r.out, "outcome: no\n"));
  }
  {
    const auto r =
        run({"detect", write_scheme(tmp.file("dc"), generate({Family::DisjointCliques, {3, 3}}).relations())});
    CHECK(r.code == cli::kPrecondition);
    CHECK(contains(r.out, "route excess: precondition-failed"));
  }
  {
    const auto r = run({"detect", write_scheme(tmp.file("p3"), oracle::distance_relations(3, oracle::path_edges(3)))});
    CHECK(r.code == cli::kInvalidScheme);
  }
}

TEST_CASE("detect JSON report") {
  TempDir tmp;
  const auto scheme = write_scheme(tmp.file("pet"), generate({Family::Petersen, {}}).relations());
  REQUIRE(run({"detect", scheme, "--json", tmp.file("a.json")}).code == cli::kYes);
  REQUIRE(run({"detect", scheme, "--json", tmp.file("b.json")}).code == cli::kYes);
  const auto text = slurp(tmp.file("a.json"));
  CHECK(text == slurp(tmp.file("b.json")));

  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"n", "d", "valencies", "theta", "multiplicities", "P", "Q", "krein_min", "routes",
                          "consensus", "residuals"})
    CHECK_MESSAGE(j.contains(key), key);
  for (const char* route : {"tridiagonal", "nstar", "excess", "predistance", "q_poly"})
    CHECK_MESSAGE(j["routes"].contains(route), route);
  CHECK(j["n"] == 10);
  CHECK(j["consensus"] == "yes");
  CHECK(j["outcome"] == "yes");
  CHECK(j["tol"] == 1e-8);
  CHECK(j["routes"]["predistance"]["l"] == 2);

  REQUIRE(run({"detect", scheme, "--tol", "1e-6", "--json", tmp.file("c.json")}).code == cli::kYes);
  CHECK(nlohmann::json::parse(slurp(tmp.file("c.json")))["tol"] == 1e-6);
}

TEST_CASE("SCHEMEX_TOL fallback") {
  TempDir tmp;
  const auto scheme = write_scheme(tmp.file("c7"), generate({Family::Cycle, {7}}).relations());
  ::setenv("SCHEMEX_TOL", "1e-7", 1);
  REQUIRE(run({"detect", scheme, "--json", tmp.file("env.json")}).code == cli::kYes);
  CHECK(nlohmann::json::parse(slurp(tmp.file("env.json")))["tol"] == 1e-7);
  REQUIRE(run({"detect", scheme, "--tol", "1e-5", "--json", tmp.file("flag.json")}).code == cli::kYes);
  CHECK(nlohmann::json::parse(slurp(tmp.file("flag.json")))["tol"] == 1e-5);
  ::setenv("SCHEMEX_TOL", "banana", 1);
  CHECK(run({"detect", scheme}).code == cli::kParseError);
  ::unsetenv("SCHEMEX_TOL");
}

TEST_CASE("gen") {
  TempDir tmp;
  REQUIRE(run({"gen", "cycle", "5", "-o", tmp.file("c5.scheme")}).code == cli::kYes);
  CHECK(slurp(tmp.file("c5.scheme")).substr(0, 4) == "5 2\n");
  CHECK(run({"gen", "hamming", "3", "2"}).out.substr(0, 4) == "8 3\n");
  CHECK(run({"gen", "johnson", "5", "2"}).out.substr(0, 5) == "10 2\n");
  CHECK(run({"gen", "petersen"}).out == run({"gen", "petersen"}).out);
  CHECK(run({"gen", "tesseract", "4"}).code == cli::kParseError);
  CHECK(run({"gen", "cycle", "2"}).code == cli::kParseError);
}

TEST_CASE("gen then validate over the corpus") {
  TempDir tmp;
  for (const auto& entry : corpus()) {
    CAPTURE(entry.name);
    std::vector<std::string> args{"gen", to_string(entry.spec.family)};
    for (auto p : entry.spec.params) args.push_back(std::to_string(p));
    args.insert(args.end(), {"-o", tmp.file("g.scheme")});
    REQUIRE(run(args).code == cli::kYes);
    const auto r = run({"validate", tmp.file("g.scheme")});
    CHECK(r.code == cli::kYes);
    std::ifstream in(tmp.file("g.scheme"));
    CHECK(read_scheme_file(in) == generate(entry.spec).relations());
  }
}

TEST_CASE("graph") {
  TempDir tmp;
  {
    const auto r = run({"graph", write_edges(tmp.file("pet"), 10, oracle::petersen_edges())});
    CHECK(r.code == cli::kYes);
    CHECK(contains(r.out, "excess=6 p_d(theta0)=6.000000\n"));
    CHECK(contains(r.out, "d=2 diameter=2\n"));
    CHECK(contains(r.out, "drg: yes\n"));
  }
  {
    auto edges = oracle::petersen_edges();
    edges.pop_back();
    const auto r = run({"graph", write_edges(tmp.file("pet-e"), 10, edges)});
    CHECK(r.code == cli::kPrecondition);
    CHECK(contains(r.out, "drg: no\n"));
    CHECK(contains(r.err, "NotRegular"));
  }
  {
    const auto r = run({"graph", write_text(tmp.file("star"), "4 3\n0 1\n0 2\n0 3\n")});
    CHECK(r.code == cli::kPrecondition);
  }
  {
    const auto r = run({"graph", write_text(tmp.file("two"), "4 2\n0 1\n2 3\n")});
    CHECK(r.code == cli::kPrecondition);
    CHECK(contains(r.err, "Disconnected"));
  }
  {
    const Graph prism(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
    {
      std::ofstream f(tmp.file("prism"));
      write_edge_file(f, prism);
    }
    const auto r = run({"graph", tmp.file("prism"), "--json", tmp.file("prism.json")});
    CHECK(r.code == cli::kNo);
    CHECK(contains(r.out, "drg: no"));
    const auto j = nlohmann::json::parse(slurp(tmp.file("prism.json")));
    CHECK(j["drg"] == false);
  }
  CHECK(run({"graph", write_text(tmp.file("loop"), "3 1\n1 1\n")}).code == cli::kParseError);
}
