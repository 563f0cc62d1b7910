#pragma once

// Analytic bound states of the ring-shaped inverse-square-plus-Coulomb
// potential: quantum-number bookkeeping, energies, normalization and the
// separable wavefunction.
//
// The azimuthal quantum number enters only through |m|.  Every product of
// gamma functions is evaluated in log space; the normalization constants for
// the heavy molecules (gamma of several hundred) would otherwise overflow.

#include "mie_ring/model.hpp"

namespace mie_ring::spectrum {

struct QuantumNumbers {
  int n = 0;        ///< radial
  int n_tilde = 0;  ///< angular (Gegenbauer degree)
  int m = 0;        ///< magnetic; sign is irrelevant

  bool operator==(const QuantumNumbers&) const = default;
};

struct QuantumState {
  QuantumNumbers qn;
  double zeta = 0.0;      ///< sqrt(m^2 + eta) / 2
  double ell_eff = 0.0;   ///< sqrt(m^2 + eta) + n_tilde
  double gamma = 0.0;     ///< radial power, > -1/2
  double varsigma = 0.0;  ///< radial decay rate, 1/length
  double c = 0.0;         ///< asymptote of the potential
  double binding = 0.0;   ///< c - E > 0
  double energy = 0.0;    ///< E
  double log_radial_norm = 0.0;   ///< log N
  double log_angular_norm = 0.0;  ///< log M
  double norm_product = 0.0;      ///< N M
};

double zeta_of(int m, double eta);
double ell_effective(const QuantumNumbers& qn, double eta);

/// c - 2 mu b^2/hbar^2 [1 + 2n + 2 sqrt((ell+1/2)^2 + 2 mu a/hbar^2)]^-2.
double energy(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn, const model::UnitSystem& u);

/// c - E, computed without forming E so that it is exactly independent of c.
double binding_energy(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn,
                      const model::UnitSystem& u);

/// Throws UnboundStateError when c - E <= 0 (for example b = 0).
QuantumState derive_state(const model::PotentialSpec& spec, double mu, const QuantumNumbers& qn,
                          const model::UnitSystem& u);

/// N M from the state's n, n_tilde, zeta, gamma and varsigma.
double normalization_product(const QuantumState& state);

/// log N and log M separately (radial and angular factors of the product).
struct LogNorms {
  double radial = 0.0;
  double angular = 0.0;
};
LogNorms log_normalization(const QuantumState& state);

/// R(r) = N r^gamma e^{-varsigma r} L_n^{2 gamma + 1}(2 varsigma r).
double radial_wavefunction(const QuantumState& state, double r);
/// dR/dr, using d/dx L_n^a = -L_{n-1}^{a+1}.
double radial_wavefunction_derivative(const QuantumState& state, double r);

/// Theta(theta) = M 2^{-2 zeta} sin^{2 zeta}(theta) C_{n_tilde}^{2 zeta + 1/2}(cos theta).
double angular_wavefunction(const QuantumState& state, double theta);
/// dTheta/dtheta = M 2^{-2 zeta} sin^{2 zeta} [(2 zeta + n~) cot C_{n~} - (4 zeta + n~) C_{n~-1} / sin].
double angular_wavefunction_derivative(const QuantumState& state, double theta);

/// |Psi|^2; independent of phi.
double probability_density(const QuantumState& state, double r, double theta);
double density_dr(const QuantumState& state, double r, double theta);
double density_dtheta(const QuantumState& state, double r, double theta);

/// Interval [lo, hi] outside which r^2 R(r)^2 is below exp(-log_drop) of its peak.
struct RadialExtent {
  double lo = 0.0;
  double hi = 0.0;
  double peak = 0.0;
};
RadialExtent radial_extent(const QuantumState& state, double log_drop = 80.0);

}  // namespace mie_ring::spectrum
