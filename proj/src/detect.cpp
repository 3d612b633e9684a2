#include "schemex/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

namespace schemex {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::PreconditionFailed: return "precondition-failed";
    case Verdict::MultipleL: return "multiple-l";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::PreconditionFailed: return "precondition-failed";
  }
  return "?";
}

DetectError::DetectError(DetectErrc code, const std::string& what)
    : std::runtime_error(std::string(code == DetectErrc::PerronNotSeparated ? "PerronNotSeparated"
                                                                            : "SpectrumNotSimple") +
                         ": " + what),
      code_(code) {}

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

// coef(j, i) is the coefficient of basis element j in X_1 X_i.
RouteVerdict chain_route(std::string name, std::size_t d,
                         const std::function<double(std::size_t, std::size_t)>& coef, double tol) {
  RouteVerdict rv;
  rv.route = std::move(name);
  Ordering xi{0, 1};
  std::vector<bool> used(d + 1, false);
  used[0] = used[1] = true;
  for (std::size_t i = 1; i < d; ++i) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j <= d; ++j)
      if (!used[j] && coef(j, xi[i]) > tol) candidates.push_back(j);
    if (candidates.size() != 1) {
      std::ostringstream msg;
      msg << "chain step " << i << " after xi=(" << join(xi) << "): " << candidates.size() << " candidates";
      if (!candidates.empty()) msg << " {" << join(candidates) << "}";
      rv.verdict = Verdict::No;
      rv.witness = msg.str();
      return rv;
    }
    xi.push_back(candidates[0]);
    used[candidates[0]] = true;
  }

  double off_band = 0;
  for (std::size_t a = 0; a <= d; ++a) {
    for (std::size_t b = 0; b <= d; ++b) {
      const double v = coef(xi[a], xi[b]);
      const std::size_t gap = a > b ? a - b : b - a;
      if (gap > 1) off_band = std::max(off_band, std::abs(v));
      if ((gap > 1 && std::abs(v) > tol) || (gap == 1 && !(v > tol))) {
        std::ostringstream msg;
        msg << "entry (" << a << "," << b << ") of the reordered matrix is " << v
            << (gap > 1 ? " outside the tridiagonal band" : " on the off-diagonal");
        rv.verdict = Verdict::No;
        rv.witness = msg.str();
        rv.max_residual = off_band;
        return rv;
      }
    }
  }
  rv.verdict = Verdict::Yes;
  rv.ordering = std::move(xi);
  rv.max_residual = off_band;
  return rv;
}

// Picks the unique candidate l whose scaled residual is within tol.
void choose_l(RouteVerdict& rv, std::vector<double> residuals, double tol) {
  std::vector<std::size_t> passing;
  for (std::size_t l = 0; l < residuals.size(); ++l)
    if (residuals[l] <= tol) passing.push_back(l);
  const auto best = std::min_element(residuals.begin(), residuals.end());
  rv.max_residual = *best;
  std::ostringstream msg;
  if (passing.size() == 1) {
    rv.verdict = Verdict::Yes;
    rv.l = passing[0];
  } else if (passing.empty()) {
    rv.verdict = Verdict::No;
    msg << "no l matched; closest l=" << (best - residuals.begin()) << " with residual " << *best;
  } else {
    rv.verdict = Verdict::MultipleL;
    msg << "several l matched: {" << join(passing) << "}";
  }
  rv.witness = msg.str();
  rv.candidate_residuals = std::move(residuals);
}

RouteVerdict precondition_failed(std::string name, std::string why) {
  RouteVerdict rv;
  rv.route = std::move(name);
  rv.verdict = Verdict::PreconditionFailed;
  rv.witness = std::move(why);
  return rv;
}

const char* kNotSimple = "eigenvalues of A_1 are not mutually distinct";

}  // namespace

RouteVerdict tridiagonal_route(const IntersectionTensor& t) {
  return chain_route(
      "tridiagonal", t.d(), [&](std::size_t j, std::size_t i) { return static_cast<double>(t(1, i, j)); }, 0.5);
}

RouteVerdict q_polynomial_route(const KreinTensor& kt, double tol) {
  return chain_route("q_poly", kt.d(), [&](std::size_t j, std::size_t i) { return kt(1, i, j); }, tol);
}

NStarChain nstar_sets(const AssociationScheme& s, const SpectralData& sd) {
  if (!sd.perron_separated())
    throw DetectError(DetectErrc::PerronNotSeparated, "theta_0 coincides with another eigenvalue of A_1");
  const std::size_t n = s.n();
  const std::size_t d = s.d();
  const IntMatrix& a1 = s.adjacency(1);

  NStarChain chain;
  // Row 0 of A_1^h holds one representative of every class.
  std::vector<std::int64_t> row(n, 0);
  row[0] = 1;
  for (std::size_t h = 0; h <= d; ++h) {
    std::vector<std::int64_t> alpha(d + 1);
    for (std::size_t j = 0; j <= d; ++j) alpha[j] = row[s.representative(j).second];
    for (std::size_t y = 0; y < n; ++y) {
      if (row[y] != alpha[s.relations()(0, y)])
        throw std::logic_error("walk counts are not constant on a relation");
    }
    chain.walk_counts.push_back(alpha);
    if (h == d) break;
    std::vector<std::int64_t> next(n, 0);
    for (std::size_t z = 0; z < n; ++z) {
      if (row[z] == 0) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (a1(z, y) && __builtin_add_overflow(next[y], row[z], &next[y]))
          throw std::overflow_error("walk count overflow in A_1^h");
      }
    }
    row = std::move(next);
  }

  std::vector<bool> seen(d + 1, false);
  for (std::size_t h = 0; h <= d; ++h) {
    std::vector<std::size_t> set;
    for (std::size_t j = 0; j <= d; ++j) {
      if (!seen[j] && chain.walk_counts[h][j] != 0) {
        set.push_back(j);
        seen[j] = true;
      }
    }
    chain.sets.push_back(std::move(set));
  }
  return chain;
}

RouteVerdict nstar_route(const NStarChain& chain) {
  RouteVerdict rv;
  rv.route = "nstar";
  const std::size_t d = chain.sets.size() - 1;
  std::size_t covered = 0;
  for (const auto& set : chain.sets) covered += set.size();
  if (covered != d + 1) throw std::logic_error("N* sets do not cover all relations");

  if (chain.sets[d].empty()) {
    std::size_t h = 0;
    for (std::size_t acc = 0; h <= d; ++h) {
      acc += chain.sets[h].size();
      if (acc == d + 1) break;
    }
    rv.verdict = Verdict::No;
    rv.witness = "N*_0..N*_" + std::to_string(h) + " already cover every relation; N*_" + std::to_string(d) +
                 " is empty";
    return rv;
  }
  Ordering xi;
  for (const auto& set : chain.sets) {
    if (set.size() != 1) throw std::logic_error("N*_d is non-empty but some N*_h is not a singleton");
    xi.push_back(set[0]);
  }
  rv.verdict = Verdict::Yes;
  rv.ordering = std::move(xi);
  return rv;
}

Spectrum scheme_spectrum(const SpectralData& sd) {
  if (!sd.theta_distinct()) throw DetectError(DetectErrc::SpectrumNotSimple, kNotSimple);
  std::vector<double> m(sd.m.begin(), sd.m.end());
  return Spectrum(sd.theta, std::move(m), static_cast<double>(sd.n));
}

RouteVerdict excess_route(const SpectralData& sd, const IntersectionTensor& t, double tol) {
  if (!sd.theta_distinct()) return precondition_failed("excess", kNotSimple);
  const Spectrum sp = scheme_spectrum(sd);
  const std::size_t d = sd.d;
  std::vector<double> kap(d + 1, 0.0);
  for (std::size_t i = 1; i <= d; ++i) kap[i] = kappa(sp, i);

  std::vector<double> residuals;
  for (std::size_t l = 0; l <= d; ++l) {
    double r = 0;
    for (std::size_t i = 1; i <= d; ++i) {
      const double q = sd.Q(l, i);
      const double q_alt = static_cast<double>(sd.m[i]) * sd.P(i, l) / static_cast<double>(t.valency(l));
      const double scale = std::max(1.0, std::abs(kap[i]));
      r = std::max({r, std::abs(kap[i] + q) / scale, std::abs(kap[i] + q_alt) / scale});
    }
    residuals.push_back(r);
  }
  RouteVerdict rv;
  rv.route = "excess";
  choose_l(rv, std::move(residuals), tol);
  return rv;
}

RouteVerdict predistance_route(const SpectralData& sd, const PredistanceSystem& ps, double tol) {
  if (!sd.theta_distinct()) return precondition_failed("predistance", kNotSimple);
  const std::size_t d = sd.d;
  std::vector<double> residuals;
  for (std::size_t l = 0; l <= d; ++l) {
    double r = 0;
    for (std::size_t h = 0; h <= d; ++h) {
      const double target = sd.P(h, l);
      r = std::max(r, std::abs(ps.value(d, h) - target) / std::max(1.0, std::abs(target)));
    }
    residuals.push_back(r);
  }
  RouteVerdict rv;
  rv.route = "predistance";
  choose_l(rv, std::move(residuals), tol);
  return rv;
}

double mstar_decomposition_residual(const AssociationScheme& s, const SpectralData& sd,
                                    const std::vector<Eigen::MatrixXd>& idempotents, std::size_t i) {
  if (!sd.theta_distinct()) throw DetectError(DetectErrc::SpectrumNotSimple, kNotSimple);
  if (i < 1 || i > sd.d) throw std::out_of_range("mstar_decomposition_residual: index must lie in 1..d");
  const std::size_t n = s.n();
  const Eigen::MatrixXd a1 = s.adjacency(1).cast<double>();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd m = id;
  for (std::size_t j = 1; j <= sd.d; ++j) {
    if (j == i) continue;
    m = m * (a1 - sd.theta[j] * id) / (sd.theta[i] - sd.theta[j]);
  }
  const double k = kappa(scheme_spectrum(sd), i);
  return (m - (k * idempotents[0] + idempotents[i])).cwiseAbs().maxCoeff();
}

double mstar_decomposition_residual(const AssociationScheme& s, const SpectralData& sd, std::size_t i) {
  return mstar_decomposition_residual(s, sd, primitive_idempotents(s, sd), i);
}

Outcome DetectionReport::outcome() const {
  if (consensus) return Outcome::Yes;
  return spectrum_simple ? Outcome::No : Outcome::PreconditionFailed;
}

RouteDisagreement::RouteDisagreement(DetectionReport report)
    : std::runtime_error("RouteDisagreement: " +
                         (report.disagreements.empty() ? std::string("routes disagree") : report.disagreements[0])),
      report_(std::move(report)) {}

DetectionReport detect(const AssociationScheme& s, const DetectOptions& opts) {
  DetectionReport r;
  r.n = s.n();
  r.d = s.d();
  r.valencies = s.intersection_numbers().valencies();
  r.tol = opts.tol;
  const auto& t = s.intersection_numbers();
  const std::size_t d = s.d();

  r.spectral = spectral_data(s, opts.spectral);
  const SpectralData& sd = r.spectral;
  r.pq_residual = (sd.P * sd.Q - static_cast<double>(sd.n) * Eigen::MatrixXd::Identity(d + 1, d + 1))
                      .cwiseAbs()
                      .maxCoeff();
  r.spectrum_simple = sd.theta_distinct();

  r.tridiagonal = tridiagonal_route(t);

  if (sd.perron_separated()) {
    r.nstar = nstar_sets(s, sd);
    r.nstar_verdict = nstar_route(*r.nstar);
  } else {
    r.nstar_verdict = precondition_failed("nstar", "theta_0 coincides with another eigenvalue of A_1");
  }

  r.excess = excess_route(sd, t, opts.tol);
  if (r.spectrum_simple) {
    r.predistance = predistance_polynomials(scheme_spectrum(sd));
    r.predistance_verdict = predistance_route(sd, *r.predistance, opts.tol);
  } else {
    r.predistance_verdict = precondition_failed("predistance", kNotSimple);
  }

  if (s.n() <= opts.max_dense_n) {
    const auto idem = primitive_idempotents(s, sd);
    r.krein = krein_parameters(sd, idem);
    r.q_poly = q_polynomial_route(*r.krein, 1e-8 * static_cast<double>(s.n()));
    if (r.spectrum_simple) {
      for (std::size_t i = 1; i <= d; ++i) r.mstar_residuals.push_back(mstar_decomposition_residual(s, sd, idem, i));
    }
  }

  // Agreement among routes whose hypotheses held.
  const RouteVerdict* routes[] = {&r.tridiagonal, &r.nstar_verdict, &r.excess, &r.predistance_verdict};
  for (const auto* rv : routes) {
    if (rv->verdict == Verdict::MultipleL) r.disagreements.push_back(rv->route + " route: " + rv->witness);
  }
  r.consensus = r.tridiagonal.verdict == Verdict::Yes;
  for (const auto* rv : routes) {
    if (rv->verdict != Verdict::Yes && rv->verdict != Verdict::No) continue;
    if ((rv->verdict == Verdict::Yes) != r.consensus) {
      r.disagreements.push_back(rv->route + " route says " + to_string(rv->verdict) + " but tridiagonal says " +
                                to_string(r.tridiagonal.verdict));
    }
  }

  if (r.consensus) {
    const Ordering& xi = *r.tridiagonal.ordering;
    if (!r.spectrum_simple) r.disagreements.push_back("P-polynomial ordering found but A_1 has repeated eigenvalues");
    if (r.nstar_verdict.ordering && *r.nstar_verdict.ordering != xi) {
      r.disagreements.push_back("nstar ordering (" + join(*r.nstar_verdict.ordering) +
                                ") differs from tridiagonal ordering (" + join(xi) + ")");
    }
    for (const auto* rv : {&r.excess, &r.predistance_verdict}) {
      if (rv->l && *rv->l != xi[d]) {
        r.disagreements.push_back(rv->route + " route gives l=" + std::to_string(*rv->l) + " but xi_d=" +
                                  std::to_string(xi[d]));
      }
    }
    if (r.predistance) {
      double worst = 0;
      for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t h = 0; h <= d; ++h) {
          const double target = sd.P(h, xi[i]);
          worst = std::max(worst, std::abs(r.predistance->value(i, h) - target) / std::max(1.0, std::abs(target)));
        }
      r.coincidence_residual = worst;
      if (worst > opts.tol) {
        std::ostringstream msg;
        msg << "predistance values differ from the P columns of the ordering by " << worst;
        r.disagreements.push_back(msg.str());
      }
    }
  }

  if (!r.disagreements.empty()) throw RouteDisagreement(std::move(r));
  return r;
}

}  // namespace schemex
