#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schemex/poly.hpp"
#include "schemex/scheme.hpp"
#include "schemex/spectral.hpp"

namespace schemex {

enum class Verdict { Yes, No, PreconditionFailed, MultipleL };

const char* to_string(Verdict v);

enum class DetectErrc { PerronNotSeparated, SpectrumNotSimple };

class DetectError : public std::runtime_error {
 public:
  DetectError(DetectErrc code, const std::string& what);
  DetectErrc code() const noexcept { return code_; }

 private:
  DetectErrc code_;
};

using Ordering = std::vector<std::size_t>;

struct RouteVerdict {
  std::string route;
  Verdict verdict = Verdict::No;
  std::optional<Ordering> ordering;  ///< xi_0..xi_d, chain routes
  std::optional<std::size_t> l;      ///< index of A_d, excess and predistance routes
  double max_residual = 0;
  std::vector<double> candidate_residuals;  ///< per candidate l, where applicable
  std::string witness;
};

/// Greedy chain xi_0 = 0, xi_1 = 1, xi_{i+1} = the unique unused j with
/// p^j_{1,xi_i} > 0, followed by an irreducible-tridiagonal check.
RouteVerdict tridiagonal_route(const IntersectionTensor& t);

/// Same chain on the Krein side, q^j_{1,xi_i} counted as nonzero above tol.
RouteVerdict q_polynomial_route(const KreinTensor& kt, double tol = 1e-8);

/// N*_0, ..., N*_d: indices of the A_j first appearing in A_1^h.
struct NStarChain {
  std::vector<std::vector<std::size_t>> sets;
  /// walk_counts[h][j] = (A_1^h)(x, y) for (x, y) in R_j.
  std::vector<std::vector<std::int64_t>> walk_counts;
};

/// Throws DetectError(PerronNotSeparated) when theta_0 equals another theta_j.
NStarChain nstar_sets(const AssociationScheme& s, const SpectralData& sd);

/// Verdict from the N* chain: P-polynomial iff N*_d is non-empty.
RouteVerdict nstar_route(const NStarChain& chain);

/// kappa_i = -Q_i(l) for all i >= 1, for exactly one l. PreconditionFailed
/// when theta is not simple.
RouteVerdict excess_route(const SpectralData& sd, const IntersectionTensor& t, double tol = 1e-8);

/// p_d(theta_h) = P_l(h) for all h, for exactly one l.
RouteVerdict predistance_route(const SpectralData& sd, const PredistanceSystem& ps, double tol = 1e-8);

/// Spectrum (theta, m) of the graph (X, R_1). Throws DetectError
/// (SpectrumNotSimple) when theta repeats.
Spectrum scheme_spectrum(const SpectralData& sd);

/// max-abs of M*_i - (kappa_i E_0 + E_i), where M*_i is the Lagrange
/// product in A_1 vanishing on theta_j, j != 0, i.
double mstar_decomposition_residual(const AssociationScheme& s, const SpectralData& sd,
                                    const std::vector<Eigen::MatrixXd>& idempotents, std::size_t i);
double mstar_decomposition_residual(const AssociationScheme& s, const SpectralData& sd, std::size_t i);

struct DetectOptions {
  /// Relative match tolerance for kappa/Q and p_d/P comparisons.
  double tol = 1e-8;
  SpectralOptions spectral;
  /// Idempotent-based checks (Krein, M*) are skipped above this size.
  std::size_t max_dense_n = 2000;
};

enum class Outcome { Yes, No, PreconditionFailed };

const char* to_string(Outcome o);

struct DetectionReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::int64_t> valencies;
  double tol = 0;

  SpectralData spectral;
  std::optional<KreinTensor> krein;
  std::optional<PredistanceSystem> predistance;
  std::optional<NStarChain> nstar;

  RouteVerdict tridiagonal;
  RouteVerdict nstar_verdict;
  RouteVerdict excess;
  RouteVerdict predistance_verdict;
  std::optional<RouteVerdict> q_poly;

  /// P-polynomial with respect to A_1; decided by every route whose
  /// precondition held.
  bool consensus = false;
  /// theta_0 > ... > theta_d strictly, the hypothesis of the spectral routes.
  bool spectrum_simple = false;

  std::vector<double> mstar_residuals;  ///< per i = 1..d, when computed
  /// max over i, h of |p_i(theta_h) - P_{xi_i}(h)| / max(1, |P_{xi_i}(h)|), when yes.
  std::optional<double> coincidence_residual;
  double pq_residual = 0;  ///< max |P Q - n I|

  std::vector<std::string> disagreements;

  Outcome outcome() const;
};

/// Raised by detect() when routes whose preconditions held disagree.
class RouteDisagreement : public std::runtime_error {
 public:
  explicit RouteDisagreement(DetectionReport report);
  const DetectionReport& report() const noexcept { return report_; }

 private:
  DetectionReport report_;
};

/// Runs every route and checks their agreement.
DetectionReport detect(const AssociationScheme& s, const DetectOptions& opts = {});

}  // namespace schemex
