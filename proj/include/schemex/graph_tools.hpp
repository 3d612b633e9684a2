#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schemex/poly.hpp"
#include "schemex/scheme.hpp"

namespace schemex {

enum class GraphErrc { InvalidGraph, NotRegular, Disconnected, NotDistanceRegular };

const char* to_string(GraphErrc e);

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what);
  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  /// Throws GraphError(InvalidGraph) on loops, duplicate edges or
  /// out-of-range endpoints.
  Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t n() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t x) const { return adj_[x]; }
  std::size_t degree(std::size_t x) const { return adj_[x].size(); }
  /// The common degree, if every vertex has the same one.
  std::optional<std::size_t> regular_degree() const;
  std::size_t component_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edges_ = 0;
};

/// The graph (X, R_i) of a scheme.
Graph relation_graph(const AssociationScheme& s, std::size_t i);

struct DistanceData {
  std::size_t n = 0;
  std::vector<std::size_t> dist;  ///< row-major n x n path distances
  std::size_t diameter = 0;
  /// layer_sizes[x][i] = |Gamma_i(x)|, i = 0..diameter
  std::vector<std::vector<std::size_t>> layer_sizes;
  /// |Gamma_D(x)|
  std::vector<std::size_t> excess;

  std::size_t operator()(std::size_t x, std::size_t y) const { return dist[x * n + y]; }
};

/// All-pairs BFS. Throws GraphError(Disconnected) with the component count.
DistanceData distance_data(const Graph& g);

/// Distinct adjacency eigenvalues with multiplicities. Requires a connected
/// regular graph.
Spectrum graph_spectrum(const Graph& g, double grouping_tol = 1e-9);

/// Path distances as a relation matrix with d = diameter.
RelationMatrix distance_partition(const Graph& g);

/// Combinatorial test: the distance partition is an association scheme.
bool is_distance_regular(const Graph& g);

struct SpectralExcessReport {
  explicit SpectralExcessReport(Spectrum sp) : spectrum(std::move(sp)) {}

  Spectrum spectrum;
  std::size_t d = 0;         ///< number of distinct eigenvalues minus one
  std::size_t diameter = 0;  ///< D
  double pd_theta0 = 0;      ///< p_d(theta_0)
  std::vector<std::size_t> excess;
  double mean_excess = 0;
  double harmonic_mean_excess = 0;
  bool drg = false;          ///< decided combinatorially
  std::string oracle_note;   ///< why the distance partition failed, if it did
};

SpectralExcessReport spectral_excess_report(const Graph& g, double grouping_tol = 1e-9);

/// The distance partition of a distance-regular graph as a scheme. Throws
/// GraphError(NotDistanceRegular) otherwise.
AssociationScheme scheme_from_drg(const Graph& g);

}  // namespace schemex
