#include "schemex/poly.hpp"

#include <cmath>
#include <sstream>

namespace schemex {

const char* to_string(PolyErrc e) {
  switch (e) {
    case PolyErrc::InvalidSpectrum: return "InvalidSpectrum";
    case PolyErrc::DegenerateSpectrum: return "DegenerateSpectrum";
    case PolyErrc::NumericalBreakdown: return "NumericalBreakdown";
    case PolyErrc::RepeatedBeta: return "RepeatedBeta";
  }
  return "?";
}

PolyError::PolyError(PolyErrc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Spectrum::Spectrum(std::vector<double> theta, std::vector<double> m, double n)
    : theta_(std::move(theta)), m_(std::move(m)), n_(n) {
  if (theta_.empty() || theta_.size() != m_.size())
    throw PolyError(PolyErrc::InvalidSpectrum, "theta and m must be non-empty and of equal length");
  for (std::size_t i = 0; i + 1 < theta_.size(); ++i) {
    if (!(theta_[i] > theta_[i + 1])) {
      std::ostringstream msg;
      msg << "eigenvalues must be strictly decreasing: theta_" << i << " = " << theta_[i] << ", theta_" << i + 1
          << " = " << theta_[i + 1];
      throw PolyError(PolyErrc::DegenerateSpectrum, msg.str());
    }
  }
  double total = 0;
  for (double mi : m_) {
    if (!(mi > 0)) throw PolyError(PolyErrc::InvalidSpectrum, "multiplicities must be positive");
    total += mi;
  }
  if (m_[0] != 1.0) throw PolyError(PolyErrc::InvalidSpectrum, "m_0 must be 1");
  if (std::abs(total - n_) > 1e-9 * std::max(1.0, n_))
    throw PolyError(PolyErrc::InvalidSpectrum, "multiplicities do not sum to n");
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, double c) {
  std::vector<double> v(degree + 1, 0.0);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

double inner_product(const Polynomial& p, const Polynomial& q, const Spectrum& sp) {
  double acc = 0;
  for (std::size_t i = 0; i <= sp.d(); ++i) acc += sp.m(i) * p(sp.theta(i)) * q(sp.theta(i));
  return acc / sp.n();
}

PredistanceSystem::PredistanceSystem(std::vector<Polynomial> polys, Eigen::MatrixXd values)
    : polys_(std::move(polys)), values_(std::move(values)) {}

namespace {

double weighted_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& w) {
  return (a.array() * b.array() * w.array()).sum();
}

}  // namespace

PredistanceSystem predistance_polynomials(const Spectrum& sp) {
  const std::size_t d = sp.d();
  const std::size_t w = d + 1;
  Eigen::VectorXd theta(w), weight(w);
  for (std::size_t h = 0; h < w; ++h) {
    theta(h) = sp.theta(h);
    weight(h) = sp.m(h) / sp.n();
  }

  // Monic orthogonal q_i, tracked both as value vectors on the spectrum and
  // as monomial coefficients.
  std::vector<Eigen::VectorXd> qv{Eigen::VectorXd::Ones(w)};
  std::vector<Polynomial> qp{Polynomial::constant(1.0)};
  std::vector<double> qnorm{weighted_dot(qv[0], qv[0], weight)};
  const Polynomial t = Polynomial::monomial(1);

  for (std::size_t i = 1; i <= d; ++i) {
    Eigen::VectorXd v = theta.cwiseProduct(qv[i - 1]);
    Polynomial vp = t * qp[i - 1];
    const double ref = weighted_dot(v, v, weight);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> coef(i);
      for (std::size_t j = 0; j < i; ++j) coef[j] = weighted_dot(v, qv[j], weight) / qnorm[j];
      for (std::size_t j = 0; j < i; ++j) {
        v -= coef[j] * qv[j];
        vp -= coef[j] * qp[j];
      }
    }
    const double nrm = weighted_dot(v, v, weight);
    if (!(nrm >= 1e-12 * ref)) {
      std::ostringstream msg;
      msg << "||q_" << i << "||^2 = " << nrm << " fell below threshold (reference " << ref << ")";
      throw PolyError(PolyErrc::NumericalBreakdown, msg.str());
    }
    qv.push_back(std::move(v));
    qp.push_back(std::move(vp));
    qnorm.push_back(nrm);
  }

  std::vector<Polynomial> polys;
  Eigen::MatrixXd values(w, w);
  for (std::size_t i = 0; i < w; ++i) {
    const double at_top = qv[i](0);
    if (!(at_top > 0)) {
      throw PolyError(PolyErrc::NumericalBreakdown, "q_" + std::to_string(i) + "(theta_0) is not positive");
    }
    const double c = at_top / qnorm[i];
    polys.push_back(c * qp[i]);
    values.row(i) = (c * qv[i]).transpose();
  }
  return PredistanceSystem(std::move(polys), std::move(values));
}

double kappa(const Spectrum& sp, std::size_t i) {
  if (i < 1 || i > sp.d()) throw std::out_of_range("kappa: index must lie in 1..d");
  double prod = 1.0;
  for (std::size_t j = 1; j <= sp.d(); ++j) {
    if (j == i) continue;
    prod *= (sp.theta(0) - sp.theta(j)) / (sp.theta(i) - sp.theta(j));
  }
  return prod;
}

double lagrange_power_identity(std::span<const double> betas, double x, std::size_t h) {
  if (h >= betas.size()) throw std::invalid_argument("lagrange_power_identity: h must be below the number of betas");
  for (std::size_t i = 0; i < betas.size(); ++i)
    for (std::size_t k = i + 1; k < betas.size(); ++k)
      if (betas[i] == betas[k]) {
        throw PolyError(PolyErrc::RepeatedBeta,
                        "beta_" + std::to_string(i) + " equals beta_" + std::to_string(k));
      }
  // Terms grow like 1/min|beta_i - beta_k|^(d-1) and cancel; extended
  // precision keeps the absolute error well below the tolerance.
  long double sum = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    long double term = std::pow(static_cast<long double>(betas[i]), static_cast<long double>(h));
    for (std::size_t k = 0; k < betas.size(); ++k) {
      if (k != i) {
        term *= (static_cast<long double>(x) - betas[k]) / (static_cast<long double>(betas[i]) - betas[k]);
      }
    }
    sum += term;
  }
  return static_cast<double>(sum);
}

double graph_property_residual(const Spectrum& sp, const PredistanceSystem& ps, std::size_t i) {
  const std::size_t d = sp.d();
  return kappa(sp, i) + sp.m(i) * ps.value(d, i) / ps.value(d, 0);
}

Polynomial lagrange_numerator(const Spectrum& sp, std::size_t i) {
  Polynomial out = Polynomial::constant(1.0);
  for (std::size_t j = 1; j <= sp.d(); ++j) {
    if (j != i) out = out * Polynomial({-sp.theta(j), 1.0});
  }
  return out;
}

Polynomial minimal_polynomial(const Spectrum& sp) {
  Polynomial out = Polynomial::constant(1.0);
  for (std::size_t j = 0; j <= sp.d(); ++j) out = out * Polynomial({-sp.theta(j), 1.0});
  return out;
}

}  // namespace schemex
