#pragma once

// Independent numerical checks of the analytic results: quadrature of the
// normalization and Fisher integrals, and finite-difference eigensolvers for
// the separated radial and angular equations.

#include <optional>
#include <vector>

#include "mie_ring/fisher.hpp"
#include "mie_ring/model.hpp"
#include "mie_ring/spectrum.hpp"

namespace mie_ring::oracle {

enum class Spacing { uniform, log };

/// Interior points are the unknowns; both ends carry Dirichlet conditions.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int points = 0;  ///< number of intervals
  Spacing spacing = Spacing::uniform;
};

struct EigenResult {
  double eigenvalue = 0.0;  ///< energy (radial) or separation constant (angular)
  std::vector<double> abscissae;
  std::vector<double> eigenvector;  ///< u = rR (radial) or Theta (angular), unit norm on the grid
  double residual_norm = 0.0;       ///< ||C v - lambda v|| on the finest grid
  double extrapolation_error = 0.0;
  RadialGrid grid;  ///< finest grid used (angular: r_min = 0, r_max = pi)
};

struct RadialSolveOptions {
  int base_points = 4000;
  int max_points = 64000;
  double tolerance = 1e-8;  ///< relative spread between successive extrapolants
  std::optional<double> r_max;  ///< fixed outer wall; chosen from the eigenvector tail when absent
  double r_min = 0.0;
  Spacing spacing = Spacing::uniform;
};

/// Lowest k eigenvalues of
///   -u'' + [(ell(ell+1) + 2 mu a/hbar^2)/r^2 - 2 mu b/(hbar^2 r)] u = 2 mu (E - c)/hbar^2 u
/// by second-order differences and Richardson extrapolation over three grids.
/// ell is real.  Throws ConvergenceError when the extrapolants do not settle.
std::vector<EigenResult> solve_radial(const model::PotentialSpec& spec, double mu, double ell_eff,
                                      const model::UnitSystem& u, int k, const RadialSolveOptions& options = {});

/// Raw eigenvalues (energies) on one grid, no extrapolation.
std::vector<double> radial_eigenvalues_on_grid(const model::PotentialSpec& spec, double mu, double ell_eff,
                                               const model::UnitSystem& u, const RadialGrid& grid, int k);

struct AngularSolveOptions {
  int base_points = 1000;
  int max_points = 32000;
  double tolerance = 1e-9;  ///< spread between extrapolants relative to max(|lambda|, 1)
};

/// Lowest k separation constants lambda of
///   -(1/sin) (sin Theta')' + (m^2 + eta cos^2)/sin^2 Theta = lambda Theta
/// on cell-centred points, with the flux through each pole set to zero.
std::vector<EigenResult> solve_angular(double eta, int m, int k, const AngularSolveOptions& options = {});

std::vector<double> angular_eigenvalues_on_grid(double eta, int m, int points, int k);

/// ell with ell(ell+1) = lambda.
double recovered_ell(double lambda);

// ---------------------------------------------------------------------------
// Quadrature

struct NormalizationResult {
  double value = 0.0;    ///< full integral of |Psi|^2
  double radial = 0.0;   ///< int R^2 r^2 dr
  double angular = 0.0;  ///< 2 pi int Theta^2 sin dtheta
  double drift = 0.0;    ///< relative change between N and 2N panels
};

/// Throws ConvergenceError when the drift exceeds 1e-8.
NormalizationResult normalization_integral(const spectrum::QuantumState& state);
double check_normalization(const spectrum::QuantumState& state);

struct DerivativeCheck {
  double residual_dr = 0.0;
  double residual_dtheta = 0.0;
  int samples = 0;
};

/// Analytic d rho/dr and d rho/dtheta against central differences of rho.
DerivativeCheck check_density_derivatives(const spectrum::QuantumState& state);

/// Quadrature of the Fisher functional in the 4 |grad sqrt(rho)|^2 form,
/// split into the same components as the closed form.  Throws
/// ConvergenceError if the derivative cross-check exceeds 1e-6.
fisher::FisherReport fisher_quadrature(const spectrum::QuantumState& state);

}  // namespace mie_ring::oracle
