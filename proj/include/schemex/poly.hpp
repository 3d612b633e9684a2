#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace schemex {

enum class PolyErrc { InvalidSpectrum, DegenerateSpectrum, NumericalBreakdown, RepeatedBeta };

const char* to_string(PolyErrc e);

class PolyError : public std::runtime_error {
 public:
  PolyError(PolyErrc code, const std::string& what);
  PolyErrc code() const noexcept { return code_; }

 private:
  PolyErrc code_;
};

/// Distinct eigenvalues theta_0 > ... > theta_d with multiplicities m_i,
/// m_0 = 1, and sum m_i = n.
class Spectrum {
 public:
  Spectrum(std::vector<double> theta, std::vector<double> m, double n);

  std::size_t d() const noexcept { return theta_.size() - 1; }
  double n() const noexcept { return n_; }
  std::span<const double> theta() const noexcept { return theta_; }
  std::span<const double> m() const noexcept { return m_; }
  double theta(std::size_t i) const { return theta_[i]; }
  double m(std::size_t i) const { return m_[i]; }

 private:
  std::vector<double> theta_;
  std::vector<double> m_;
  double n_;
};

/// Real polynomial in the monomial basis, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(std::size_t degree, double c = 1.0);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  std::span<const double> coefficients() const noexcept { return c_; }
  double operator()(double x) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<double> c_;
};

/// (1/n) sum_i m_i p(theta_i) q(theta_i)
double inner_product(const Polynomial& p, const Polynomial& q, const Spectrum& sp);

/// The predistance polynomials p_0..p_d of a spectrum.
class PredistanceSystem {
 public:
  PredistanceSystem(std::vector<Polynomial> polys, Eigen::MatrixXd values);

  std::size_t d() const noexcept { return polys_.size() - 1; }
  const Polynomial& poly(std::size_t i) const { return polys_[i]; }
  /// p_i(theta_h), the authoritative values used by route comparisons.
  double value(std::size_t i, std::size_t h) const { return values_(i, h); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

 private:
  std::vector<Polynomial> polys_;
  Eigen::MatrixXd values_;
};

/// Gram-Schmidt under inner_product on the flag 1, t q_0, t q_1, ... (same
/// span as 1, t, ..., t^d), with one re-orthogonalization pass.
PredistanceSystem predistance_polynomials(const Spectrum& sp);

/// prod_{j=1..d, j != i} (theta_0 - theta_j) / (theta_i - theta_j), 1 <= i <= d.
double kappa(const Spectrum& sp, std::size_t i);

/// sum_i beta_i^h prod_{k != i} (x - beta_k) / (beta_i - beta_k); equals x^h
/// for h < betas.size().
double lagrange_power_identity(std::span<const double> betas, double x, std::size_t h);

/// kappa_i + m_i p_d(theta_i) / p_d(theta_0); vanishes for graph spectra.
double graph_property_residual(const Spectrum& sp, const PredistanceSystem& ps, std::size_t i);

/// prod_{j=1..d, j != i} (t - theta_j), degree d-1.
Polynomial lagrange_numerator(const Spectrum& sp, std::size_t i);

/// Z(t) = prod_{i=0..d} (t - theta_i); vanishes on the spectrum.
Polynomial minimal_polynomial(const Spectrum& sp);

}  // namespace schemex
