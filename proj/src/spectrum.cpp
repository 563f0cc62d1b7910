#include "mie_ring/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mie_ring/errors.hpp"
#include "mie_ring/specfun.hpp"

namespace mie_ring::spectrum {

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct RadialTerms {
  double root = 0.0;     // sqrt((ell+1/2)^2 + 2 mu a / hbar^2)
  double bracket = 0.0;  // 1 + 2n + 2 root
  double binding = 0.0;
};

RadialTerms radial_terms(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn,
                         const model::UnitSystem& u) {
  if (!(mu > 0.0)) throw ValidationError("reduced mass must be positive");
  if (qn.n < 0 || qn.n_tilde < 0) throw ValidationError("quantum numbers n and n_tilde must be non-negative");
  if (spec.eta < 0.0) throw ValidationError("eta must be non-negative");
  const auto groups = model::dimensionless_groups(spec, mu, u);
  const double ell = ell_effective(qn, spec.eta);
  const double radicand = (ell + 0.5) * (ell + 0.5) + groups.two_mu_a;
  if (!(radicand > 0.0)) throw DomainError("centrifugal radicand must be positive");
  RadialTerms t;
  t.root = std::sqrt(radicand);
  t.bracket = 1.0 + 2.0 * qn.n + 2.0 * t.root;
  t.binding = groups.two_mu_b2 / (t.bracket * t.bracket);
  return t;
}

double log_gamma(double x) { return specfun::log_gamma(x).log_abs; }

double log_radial_magnitude(const QuantumState& s, double r) {
  return s.log_radial_norm + s.gamma * std::log(r) - s.varsigma * r;
}

double log_angular_prefactor(const QuantumState& s) { return s.log_angular_norm - 2.0 * s.zeta * kLn2; }

void require_polar(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw DomainError("polar angle must lie in (0, pi)");
}

}  // namespace

double zeta_of(int m, double eta) {
  if (eta < 0.0) throw ValidationError("eta must be non-negative");
  return 0.5 * std::sqrt(static_cast<double>(m) * m + eta);
}

double ell_effective(const QuantumNumbers& qn, double eta) {
  if (eta < 0.0) throw ValidationError("eta must be non-negative");
  return std::sqrt(static_cast<double>(qn.m) * qn.m + eta) + qn.n_tilde;
}

double energy(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn, const model::UnitSystem& u) {
  return spec.c - radial_terms(spec, mu, qn, u).binding;
}

double binding_energy(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn,
                      const model::UnitSystem& u) {
  return radial_terms(spec, mu, qn, u).binding;
}

QuantumState derive_state(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn,
                          const model::UnitSystem& u) {
  const RadialTerms t = radial_terms(spec, mu, qn, u);
  if (!(t.binding > 0.0)) throw UnboundStateError("state is not bound: c - E <= 0");
  QuantumState s;
  s.qn = qn;
  s.zeta = zeta_of(qn.m, spec.eta);
  s.ell_eff = ell_effective(qn, spec.eta);
  s.gamma = t.root - 0.5;
  s.varsigma = std::sqrt(u.two_mu_over_hbar_sq(mu) * t.binding);
  s.c = spec.c;
  s.binding = t.binding;
  s.energy = spec.c - t.binding;
  const LogNorms logs = log_normalization(s);
  s.log_radial_norm = logs.radial;
  s.log_angular_norm = logs.angular;
  s.norm_product = std::exp(logs.radial + logs.angular);
  return s;
}

LogNorms log_normalization(const QuantumState& s) {
  const double n = s.qn.n;
  const double nt = s.qn.n_tilde;
  const double g = s.gamma;
  const double z = s.zeta;
  LogNorms out;
  out.radial = 0.5 * (log_gamma(n + 1.0) + (2.0 * g + 3.0) * std::log(2.0 * s.varsigma) -
                      std::log(2.0 * (n + g + 1.0)) - log_gamma(n + 2.0 * g + 2.0));
  out.angular = 0.5 * (log_gamma(nt + 1.0) + std::log(nt + 2.0 * z + 0.5) + 2.0 * log_gamma(2.0 * z + 0.5) -
                       std::log(2.0 * std::numbers::pi * std::numbers::pi) + 8.0 * z * kLn2 -
                       log_gamma(4.0 * z + nt + 1.0));
  return out;
}

double normalization_product(const QuantumState& state) {
  const LogNorms logs = log_normalization(state);
  return std::exp(logs.radial + logs.angular);
}

double radial_wavefunction(const QuantumState& s, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const double L = specfun::laguerre_assoc(s.qn.n, 2.0 * s.gamma + 1.0, 2.0 * s.varsigma * r);
  return std::exp(log_radial_magnitude(s, r)) * L;
}

double radial_wavefunction_derivative(const QuantumState& s, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const double alpha = 2.0 * s.gamma + 1.0;
  const double x = 2.0 * s.varsigma * r;
  const double L = specfun::laguerre_assoc(s.qn.n, alpha, x);
  const double dL = specfun::laguerre_deriv(s.qn.n, alpha, x);
  return std::exp(log_radial_magnitude(s, r)) * ((s.gamma / r - s.varsigma) * L + 2.0 * s.varsigma * dL);
}

double angular_wavefunction(const QuantumState& s, double theta) {
  if (theta < 0.0 || theta > std::numbers::pi) throw DomainError("polar angle must lie in [0, pi]");
  const double lambda = 2.0 * s.zeta + 0.5;
  const double sine = std::sin(theta);
  return std::exp(log_angular_prefactor(s)) * std::pow(std::abs(sine), 2.0 * s.zeta) *
         specfun::gegenbauer(s.qn.n_tilde, lambda, std::cos(theta));
}

double angular_wavefunction_derivative(const QuantumState& s, double theta) {
  require_polar(theta);
  const int nt = s.qn.n_tilde;
  const double lambda = 2.0 * s.zeta + 0.5;
  const double sine = std::sin(theta);
  const double x = std::cos(theta);
  const double c_n = specfun::gegenbauer(nt, lambda, x);
  const double c_prev = nt > 0 ? specfun::gegenbauer(nt - 1, lambda, x) : 0.0;
  const double bracket = (2.0 * s.zeta + nt) * x / sine * c_n - (4.0 * s.zeta + nt) / sine * c_prev;
  return std::exp(log_angular_prefactor(s)) * std::pow(sine, 2.0 * s.zeta) * bracket;
}

double probability_density(const QuantumState& s, double r, double theta) {
  const double R = radial_wavefunction(s, r);
  const double T = angular_wavefunction(s, theta);
  return R * R * T * T;
}

double density_dr(const QuantumState& s, double r, double theta) {
  const double T = angular_wavefunction(s, theta);
  return 2.0 * radial_wavefunction(s, r) * radial_wavefunction_derivative(s, r) * T * T;
}

double density_dtheta(const QuantumState& s, double r, double theta) {
  const double R = radial_wavefunction(s, r);
  return 2.0 * R * R * angular_wavefunction(s, theta) * angular_wavefunction_derivative(s, theta);
}

RadialExtent radial_extent(const QuantumState& s, double log_drop) {
  const double alpha = 2.0 * s.gamma + 1.0;
  auto log_weight = [&](double r) {
    const double L = specfun::laguerre_assoc(s.qn.n, alpha, 2.0 * s.varsigma * r);
    if (L == 0.0) return -std::numeric_limits<double>::infinity();
    return 2.0 * (log_radial_magnitude(s, r) + std::log(std::abs(L)) + std::log(r));
  };

  constexpr int kSamples = 4000;
  double hi = (4.0 * (s.qn.n + s.gamma + 1.0) + 60.0) / s.varsigma;
  std::vector<double> values(kSamples);
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double step = hi / kSamples;
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < kSamples; ++i) {
      values[i] = log_weight((i + 1) * step);
      if (values[i] > best) {
        best = values[i];
        best_i = i;
      }
    }
    if (values.back() > best - log_drop) {
      hi *= 2.0;
      continue;
    }
    int first = 0;
    while (first < kSamples && values[first] <= best - log_drop) ++first;
    int last = kSamples - 1;
    while (last >= 0 && values[last] <= best - log_drop) --last;
    RadialExtent out;
    out.lo = std::max(0.0, first * step);
    out.hi = std::min(hi, (last + 2) * step);
    out.peak = (best_i + 1) * step;
    return out;
  }
  throw ConvergenceError("radial_extent: density does not decay");
}

}  // namespace mie_ring::spectrum
