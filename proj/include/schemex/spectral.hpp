#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "schemex/scheme.hpp"

namespace schemex {

enum class SpectralErrc { EigenSplitFailure, NonIntegralMultiplicity, ExpansionResidual };

const char* to_string(SpectralErrc e);

class SpectralError : public std::runtime_error {
 public:
  SpectralError(SpectralErrc code, const std::string& what, double residual);
  SpectralErrc code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  SpectralErrc code_;
  double residual_;
};

struct SpectralOptions {
  /// Two eigenvalues are grouped when |a - b| <= grouping_tol * max(1, rho),
  /// rho being the spectral radius of the matrix being split.
  double grouping_tol = 1e-9;
  /// Allowed distance of a multiplicity from the nearest positive integer.
  double multiplicity_tol = 1e-6;
};

/// Eigenmatrices and multiplicities of a scheme.
///
/// P(j, i) = P_i(j): rows are indexed by primitive idempotent j, columns by
/// relation i. Q(j, i) = Q_i(j) with rows indexed by relation j, columns by
/// idempotent i, so that P * Q = n I.
struct SpectralData {
  std::size_t n = 0;
  std::size_t d = 0;
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  std::vector<double> theta;          ///< theta_j = P_1(j)
  std::vector<double> multiplicity;   ///< as computed, before rounding
  std::vector<long> m;                ///< rounded multiplicities, sum to n
  double split_residual = 0;          ///< max |B_i u - P_i(j) u| over rows and relations
  double q_crosscheck_residual = 0;   ///< max |Q_i(j) - m_i P_j(i) / k_j|
  double theta_tol = 0;               ///< absolute grouping tolerance used for theta

  /// theta_0 differs from every theta_j, j >= 1.
  bool perron_separated() const;
  /// theta_0 > theta_1 > ... > theta_d with gaps above theta_tol.
  bool theta_distinct() const;
};

SpectralData spectral_data(const AssociationScheme& s, const SpectralOptions& opts = {});

/// E_j = (1/n) sum_i Q_j(i) A_i, in the row order of sd.P.
std::vector<Eigen::MatrixXd> primitive_idempotents(const AssociationScheme& s, const SpectralData& sd);

/// Krein parameters q^k_{ij}, defined by E_i o E_j = (1/n) sum_k q^k_{ij} E_k.
class KreinTensor {
 public:
  KreinTensor() = default;
  KreinTensor(std::size_t d, std::vector<double> values, double expansion_residual);

  std::size_t d() const noexcept { return d_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return q_[(k * (d_ + 1) + i) * (d_ + 1) + j];
  }
  double min() const;
  double expansion_residual() const noexcept { return residual_; }

 private:
  std::size_t d_ = 0;
  std::vector<double> q_;
  double residual_ = 0;
};

/// Throws SpectralError(ExpansionResidual) when some E_i o E_j is not in the
/// span of the idempotents to within residual_tol.
KreinTensor krein_parameters(const SpectralData& sd, const std::vector<Eigen::MatrixXd>& idempotents,
                             double residual_tol = 1e-8);

}  // namespace schemex
