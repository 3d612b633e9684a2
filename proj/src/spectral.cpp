#include "schemex/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace schemex {

const char* to_string(SpectralErrc e) {
  switch (e) {
    case SpectralErrc::EigenSplitFailure: return "EigenSplitFailure";
    case SpectralErrc::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
    case SpectralErrc::ExpansionResidual: return "ExpansionResidual";
  }
  return "?";
}

SpectralError::SpectralError(SpectralErrc code, const std::string& what, double residual)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), residual_(residual) {}

bool SpectralData::perron_separated() const {
  for (std::size_t j = 1; j <= d; ++j)
    if (std::abs(theta[0] - theta[j]) <= theta_tol) return false;
  return true;
}

bool SpectralData::theta_distinct() const {
  for (std::size_t j = 0; j < d; ++j)
    if (theta[j] - theta[j + 1] <= theta_tol) return false;
  return true;
}

namespace {

// D^{-1/2} B_i D^{1/2} with B_i(j, k) = p^k_{ij} and D = diag(k). Symmetric
// because k_k p^k_{ij} = k_j p^j_{ik}.
Eigen::MatrixXd symmetrized_intersection_matrix(const IntersectionTensor& t, std::size_t i) {
  const std::size_t w = t.d() + 1;
  Eigen::MatrixXd s(w, w);
  for (std::size_t j = 0; j < w; ++j)
    for (std::size_t k = 0; k < w; ++k)
      s(j, k) = static_cast<double>(t(i, j, k)) *
                std::sqrt(static_cast<double>(t.valency(k)) / static_cast<double>(t.valency(j)));
  return 0.5 * (s + s.transpose());
}

// Splits the column space of `basis` into eigenspaces of basis^T S basis.
std::vector<Eigen::MatrixXd> split(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& s, double tol) {
  const Eigen::MatrixXd restricted = basis.transpose() * s * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (restricted + restricted.transpose()));
  const auto& vals = es.eigenvalues();  // ascending
  std::vector<Eigen::MatrixXd> out;
  Eigen::Index start = 0;
  for (Eigen::Index c = 1; c <= vals.size(); ++c) {
    if (c == vals.size() || vals(c) - vals(c - 1) > tol) {
      out.push_back(basis * es.eigenvectors().middleCols(start, c - start));
      start = c;
    }
  }
  return out;
}

}  // namespace

SpectralData spectral_data(const AssociationScheme& s, const SpectralOptions& opts) {
  const auto& t = s.intersection_numbers();
  const std::size_t d = s.d();
  const std::size_t w = d + 1;
  const auto k = t.valencies();

  // Simultaneous eigenvectors of the commuting symmetrized B_1, B_2, ...
  std::vector<Eigen::MatrixXd> spaces{Eigen::MatrixXd::Identity(w, w)};
  for (std::size_t i = 1; i <= d && spaces.size() < w; ++i) {
    const Eigen::MatrixXd si = symmetrized_intersection_matrix(t, i);
    const double tol = opts.grouping_tol * std::max(1.0, static_cast<double>(k[i]));
    std::vector<Eigen::MatrixXd> refined;
    for (const auto& sp : spaces) {
      if (sp.cols() == 1) {
        refined.push_back(sp);
        continue;
      }
      for (auto& piece : split(sp, si, tol)) refined.push_back(std::move(piece));
    }
    spaces = std::move(refined);
  }
  if (spaces.size() != w) {
    std::ostringstream msg;
    msg << "common eigenspaces did not separate: " << spaces.size() << " of " << w << " found";
    throw SpectralError(SpectralErrc::EigenSplitFailure, msg.str(), 0.0);
  }

  std::vector<Eigen::VectorXd> rows;
  for (const auto& sp : spaces) {
    Eigen::VectorXd u(w);
    for (std::size_t j = 0; j < w; ++j) u(j) = sp(j, 0) * std::sqrt(static_cast<double>(k[j]));
    if (std::abs(u(0)) < 1e-12) {
      throw SpectralError(SpectralErrc::EigenSplitFailure, "eigenvector has vanishing identity component",
                          std::abs(u(0)));
    }
    rows.push_back(u / u(0));
  }

  double residual = 0;
  for (const auto& u : rows) {
    for (std::size_t i = 0; i <= d; ++i) {
      const Eigen::MatrixXd b = t.intersection_matrix(i).cast<double>();
      residual = std::max(residual, (b * u - u(i) * u).cwiseAbs().maxCoeff() /
                                        std::max(1.0, static_cast<double>(k[i])));
    }
  }
  if (residual > 1e-6) {
    throw SpectralError(SpectralErrc::EigenSplitFailure, "eigenvector residual too large", residual);
  }

  const double n = static_cast<double>(s.n());
  std::vector<double> mult;
  for (const auto& u : rows) {
    double sum = 0;
    for (std::size_t i = 0; i <= d; ++i) sum += u(i) * u(i) / static_cast<double>(k[i]);
    mult.push_back(n / sum);
  }

  // Row 0 is the valency row; the rest sorted by decreasing theta.
  std::vector<std::size_t> order(w);
  std::iota(order.begin(), order.end(), 0);
  auto valency_gap = [&](std::size_t r) {
    double g = 0;
    for (std::size_t i = 0; i <= d; ++i)
      g = std::max(g, std::abs(rows[r](i) - static_cast<double>(k[i])) / std::max(1.0, static_cast<double>(k[i])));
    return g;
  };
  const auto perron = *std::min_element(order.begin(), order.end(),
                                        [&](auto a, auto b) { return valency_gap(a) < valency_gap(b); });
  std::erase(order, perron);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rows[a](1) > rows[b](1); });

  const double theta_tol = opts.grouping_tol * std::max(1.0, static_cast<double>(k[1]));
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && rows[order[hi - 1]](1) - rows[order[hi]](1) <= theta_tol) ++hi;
    std::sort(order.begin() + lo, order.begin() + hi, [&](auto a, auto b) {
      const long ma = std::lround(mult[a]);
      const long mb = std::lround(mult[b]);
      if (ma != mb) return ma < mb;
      return std::lexicographical_compare(rows[a].begin(), rows[a].end(), rows[b].begin(), rows[b].end());
    });
    lo = hi;
  }
  order.insert(order.begin(), perron);

  SpectralData sd;
  sd.n = s.n();
  sd.d = d;
  sd.P.resize(w, w);
  sd.theta_tol = theta_tol;
  sd.split_residual = residual;
  long total = 0;
  for (std::size_t j = 0; j < w; ++j) {
    const auto r = order[j];
    sd.P.row(j) = rows[r].transpose();
    sd.P(j, 0) = 1.0;
    sd.theta.push_back(sd.P(j, 1));
    sd.multiplicity.push_back(mult[r]);
    const long rounded = std::lround(mult[r]);
    if (rounded < 1 || std::abs(mult[r] - static_cast<double>(rounded)) > opts.multiplicity_tol) {
      std::ostringstream msg;
      msg << "multiplicity " << mult[r] << " of idempotent " << j << " is not a positive integer";
      throw SpectralError(SpectralErrc::NonIntegralMultiplicity, msg.str(),
                          std::abs(mult[r] - static_cast<double>(rounded)));
    }
    sd.m.push_back(rounded);
    total += rounded;
  }
  if (total != static_cast<long>(s.n())) {
    throw SpectralError(SpectralErrc::NonIntegralMultiplicity,
                        "multiplicities sum to " + std::to_string(total) + ", expected " + std::to_string(s.n()),
                        std::abs(static_cast<double>(total) - n));
  }

  sd.Q = sd.P.partialPivLu().solve(n * Eigen::MatrixXd::Identity(w, w));
  double cross = 0;
  for (std::size_t j = 0; j < w; ++j)
    for (std::size_t i = 0; i < w; ++i) {
      const double alt = static_cast<double>(sd.m[i]) * sd.P(i, j) / static_cast<double>(k[j]);
      cross = std::max(cross, std::abs(sd.Q(j, i) - alt));
    }
  sd.q_crosscheck_residual = cross;
  return sd;
}

std::vector<Eigen::MatrixXd> primitive_idempotents(const AssociationScheme& s, const SpectralData& sd) {
  const std::size_t n = s.n();
  std::vector<Eigen::MatrixXd> adj;
  for (std::size_t i = 0; i <= s.d(); ++i) adj.push_back(s.adjacency(i).cast<double>());
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t j = 0; j <= s.d(); ++j) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i <= s.d(); ++i) e += sd.Q(i, j) * adj[i];
    out.push_back(e / static_cast<double>(n));
  }
  return out;
}

KreinTensor::KreinTensor(std::size_t d, std::vector<double> values, double expansion_residual)
    : d_(d), q_(std::move(values)), residual_(expansion_residual) {}

double KreinTensor::min() const { return q_.empty() ? 0.0 : *std::min_element(q_.begin(), q_.end()); }

KreinTensor krein_parameters(const SpectralData& sd, const std::vector<Eigen::MatrixXd>& idempotents,
                             double residual_tol) {
  const std::size_t w = sd.d + 1;
  const double n = static_cast<double>(sd.n);
  std::vector<double> q(w * w * w);
  double residual = 0;
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = i; j < w; ++j) {
      const Eigen::MatrixXd prod = idempotents[i].cwiseProduct(idempotents[j]);
      Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(prod.rows(), prod.cols());
      for (std::size_t k = 0; k < w; ++k) {
        // tr(E_k X) = m_k q^k_{ij} / n, and tr(E_k X) = sum(E_k o X) for symmetric E_k.
        const double c = n * idempotents[k].cwiseProduct(prod).sum() / static_cast<double>(sd.m[k]);
        q[(k * w + i) * w + j] = c;
        q[(k * w + j) * w + i] = c;
        rebuilt += (c / n) * idempotents[k];
      }
      residual = std::max(residual, (prod - rebuilt).cwiseAbs().maxCoeff());
    }
  }
  if (residual > residual_tol) {
    std::ostringstream msg;
    msg << "E_i o E_j is not in the span of the idempotents (residual " << residual << ")";
    throw SpectralError(SpectralErrc::ExpansionResidual, msg.str(), residual);
  }
  return KreinTensor(sd.d, std::move(q), residual);
}

}  // namespace schemex
