#include "schemex/graph_tools.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace schemex {

const char* to_string(GraphErrc e) {
  switch (e) {
    case GraphErrc::InvalidGraph: return "InvalidGraph";
    case GraphErrc::NotRegular: return "NotRegular";
    case GraphErrc::Disconnected: return "Disconnected";
    case GraphErrc::NotDistanceRegular: return "NotDistanceRegular";
  }
  return "?";
}

GraphError::GraphError(GraphErrc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Graph::Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : adj_(n) {
  for (const auto& [u, v] : edges) {
    std::ostringstream msg;
    if (u >= n || v >= n) {
      msg << "edge (" << u << "," << v << ") has an endpoint outside 0.." << (n ? n - 1 : 0);
      throw GraphError(GraphErrc::InvalidGraph, msg.str());
    }
    if (u == v) {
      msg << "loop at vertex " << u;
      throw GraphError(GraphErrc::InvalidGraph, msg.str());
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (std::size_t x = 0; x < n; ++x) {
    auto& a = adj_[x];
    std::sort(a.begin(), a.end());
    if (auto it = std::adjacent_find(a.begin(), a.end()); it != a.end()) {
      std::ostringstream msg;
      msg << "duplicate edge (" << x << "," << *it << ")";
      throw GraphError(GraphErrc::InvalidGraph, msg.str());
    }
  }
  edges_ = edges.size();
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (adj_.empty()) return 0;
  const std::size_t k = adj_[0].size();
  for (const auto& a : adj_)
    if (a.size() != k) return std::nullopt;
  return k;
}

std::size_t Graph::component_count() const {
  std::vector<bool> seen(n(), false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto y : adj_[x])
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
    }
  }
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < n(); ++x)
    for (auto y : adj_[x])
      if (x < y) out.emplace_back(x, y);
  return out;
}

Graph relation_graph(const AssociationScheme& s, std::size_t i) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x = 0; x < s.n(); ++x)
    for (std::size_t y = x + 1; y < s.n(); ++y)
      if (s.relations()(x, y) == i) edges.emplace_back(x, y);
  return Graph(s.n(), edges);
}

DistanceData distance_data(const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0) throw GraphError(GraphErrc::InvalidGraph, "empty graph");
  if (const auto c = g.component_count(); c != 1)
    throw GraphError(GraphErrc::Disconnected, "graph has " + std::to_string(c) + " components");

  DistanceData dd;
  dd.n = n;
  constexpr auto unseen = static_cast<std::size_t>(-1);
  dd.dist.assign(n * n, unseen);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t* row = dd.dist.data() + s * n;
    row[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto y : g.neighbors(x))
        if (row[y] == unseen) {
          row[y] = row[x] + 1;
          queue.push_back(y);
        }
    }
    dd.diameter = std::max(dd.diameter, *std::max_element(row, row + n));
  }
  dd.layer_sizes.assign(n, std::vector<std::size_t>(dd.diameter + 1, 0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) ++dd.layer_sizes[x][dd(x, y)];
  for (std::size_t x = 0; x < n; ++x) dd.excess.push_back(dd.layer_sizes[x][dd.diameter]);
  return dd;
}

Spectrum graph_spectrum(const Graph& g, double grouping_tol) {
  const std::size_t n = g.n();
  const auto k = g.regular_degree();
  if (!k) throw GraphError(GraphErrc::NotRegular, "vertex degrees differ");
  if (n == 0) throw GraphError(GraphErrc::InvalidGraph, "empty graph");
  if (const auto c = g.component_count(); c != 1)
    throw GraphError(GraphErrc::Disconnected, "graph has " + std::to_string(c) + " components");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : g.neighbors(x)) a(x, y) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.rbegin(), ev.rend());

  const double tol = grouping_tol * std::max(1.0, static_cast<double>(*k));
  std::vector<double> theta, m;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && ev[hi - 1] - ev[hi] <= tol) ++hi;
    theta.push_back(std::accumulate(ev.begin() + lo, ev.begin() + hi, 0.0) / static_cast<double>(hi - lo));
    m.push_back(static_cast<double>(hi - lo));
    lo = hi;
  }
  // For a regular graph the multiplicity of theta_0 = k counts components.
  if (m[0] != 1.0) {
    throw GraphError(GraphErrc::Disconnected,
                     "eigenvalue " + std::to_string(theta[0]) + " has multiplicity " + std::to_string(m[0]));
  }
  double second_moment = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) second_moment += m[i] * theta[i] * theta[i];
  const double expected = static_cast<double>(n * *k);
  if (std::abs(second_moment - expected) > 1e-6 * std::max(1.0, expected))
    throw std::logic_error("sum of m_i theta_i^2 differs from n k");
  return Spectrum(std::move(theta), std::move(m), static_cast<double>(n));
}

RelationMatrix distance_partition(const Graph& g) {
  const auto dd = distance_data(g);
  std::vector<RelIndex> e(dd.dist.begin(), dd.dist.end());
  return RelationMatrix(g.n(), dd.diameter, std::move(e));
}

bool is_distance_regular(const Graph& g) {
  try {
    (void)scheme_from_drg(g);
    return true;
  } catch (const GraphError& e) {
    if (e.code() == GraphErrc::NotDistanceRegular) return false;
    throw;
  }
}

AssociationScheme scheme_from_drg(const Graph& g) {
  auto rm = distance_partition(g);
  try {
    return build_scheme(std::move(rm));
  } catch (const SchemeError& e) {
    throw GraphError(GraphErrc::NotDistanceRegular, e.what());
  }
}

SpectralExcessReport spectral_excess_report(const Graph& g, double grouping_tol) {
  const auto dd = distance_data(g);
  Spectrum sp = graph_spectrum(g, grouping_tol);
  const auto ps = predistance_polynomials(sp);
  SpectralExcessReport r(std::move(sp));
  r.d = r.spectrum.d();
  r.diameter = dd.diameter;
  r.pd_theta0 = ps.value(r.d, 0);
  r.excess = dd.excess;
  double sum = 0, inv = 0;
  for (auto e : r.excess) {
    sum += static_cast<double>(e);
    inv += 1.0 / static_cast<double>(e);
  }
  const auto n = static_cast<double>(r.excess.size());
  r.mean_excess = sum / n;
  r.harmonic_mean_excess = n / inv;
  try {
    (void)scheme_from_drg(g);
    r.drg = r.diameter == r.d;
    if (!r.drg) r.oracle_note = "distance partition is a scheme but D != d";
  } catch (const GraphError& e) {
    if (e.code() != GraphErrc::NotDistanceRegular) throw;
    r.drg = false;
    r.oracle_note = e.what();
  }
  return r;
}

}  // namespace schemex
