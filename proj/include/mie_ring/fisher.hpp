#pragma once

// Fisher information of the bound-state density: closed-form angular and
// radial components, and the combined report.
//
// All components carry units of 1/length^2 (they scale as varsigma^2).

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "mie_ring/spectrum.hpp"

namespace mie_ring::fisher {

enum class Mode { closed_form, quadrature };

std::string_view mode_name(Mode mode);

struct ThetaComponents {
  std::array<double, 3> parts{};  ///< I_theta1, I_theta2, I_theta3
  double combined = 0.0;          ///< single-expression form of the sum
};

struct RadialComponents {
  std::array<double, 5> parts{};  ///< I_r1 .. I_r5
  double combined = 0.0;
};

struct FisherReport {
  Mode mode = Mode::closed_form;
  std::array<double, 3> i_theta_parts{};
  double i_theta = 0.0;
  std::array<double, 5> i_r_parts{};
  double i_r = 0.0;
  double total = 0.0;

  /// Quadrature mode only.  The three angular parts diverge separately when
  /// zeta = 0 (their sum does not); they are NaN in that case.
  bool theta_parts_defined = true;
  /// Largest relative mismatch between the analytic density derivatives and
  /// central differences of the density, over the sample points.
  double derivative_residual = 0.0;
  /// Largest relative change of any integral between N and 2N panels.
  double quadrature_drift = 0.0;
};

/// Angular components.  Throws SingularParameterError when zeta = 0 or
/// 4 zeta + n_tilde = 1 (vanishing denominators).
ThetaComponents i_theta_closed(const spectrum::QuantumState& state);

RadialComponents i_r_closed(const spectrum::QuantumState& state);

/// Closed-form I_r from (n, gamma, varsigma):
///   4 varsigma^2 / (n+gamma+1) [2 gamma^2/(n+2 gamma+1) + n - gamma + 1].
double i_r_combined(int n, double gamma, double varsigma);

/// Closed-form mode sums the combined angular and radial expressions;
/// quadrature mode evaluates the defining integrals (see oracle).
FisherReport fisher_total(const spectrum::QuantumState& state, Mode mode);

/// Both modes side by side.  `closed` is empty when the closed form is
/// singular for this state, with the reason in `closed_error`.
struct FisherComparison {
  std::optional<FisherReport> closed;
  std::string closed_error;
  FisherReport quadrature;
};

FisherComparison fisher_compare(const spectrum::QuantumState& state);

}  // namespace mie_ring::fisher
