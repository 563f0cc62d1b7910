#pragma once

// Orthogonal-polynomial kernels, log-space gamma support, Gaussian quadrature
// and the integral identities used by the bound-state and Fisher formulas.
//
// Everything here is a pure function of its arguments.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace mie_ring::specfun {

/// Gegenbauer polynomial C_n^lambda(x) by forward three-term recurrence.
/// Throws DomainError for lambda <= 0.
double gegenbauer(int n, double lambda, double x);

/// Associated Laguerre polynomial L_n^alpha(x), x >= 0, alpha > -1.
double laguerre_assoc(int n, double alpha, double x);

/// d/dx L_n^alpha(x) = -L_{n-1}^{alpha+1}(x); zero for n = 0.
double laguerre_deriv(int n, double alpha, double x);

/// log|Gamma(x)| together with the sign of Gamma(x).
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const { return sign * std::exp(log_abs); }
};

SignedLog log_gamma(double x);

/// Gamma(num) / Gamma(den), formed as exp of a log-gamma difference.
double gamma_ratio(double num, double den);

/// Generalized binomial coefficient binom(top, k) for real top, integer k >= 0.
double generalized_binomial(double top, int k);

// ---------------------------------------------------------------------------
// Gaussian quadrature

enum class QuadratureKind { gauss_legendre, gauss_laguerre };

/// Nodes and weights of an N-point Gauss rule.  Legendre rules live on
/// [-1, 1] with unit weight; Laguerre rules on [0, inf) with weight e^{-x}.
class QuadratureRule {
 public:
  QuadratureRule(QuadratureKind kind, std::vector<double> nodes, std::vector<double> weights);

  QuadratureKind kind() const { return kind_; }
  int order() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

 private:
  QuadratureKind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Supported orders: Gauss-Legendre 2..1024, Gauss-Laguerre 2..128.
QuadratureRule make_quadrature(QuadratureKind kind, int order);

/// Shared immutable 20-point Gauss-Legendre rule used by the composite integrators.
const QuadratureRule& default_panel_rule();

/// Applies a Legendre rule to f on [a, b].
template <class F>
double integrate_panel(const QuadratureRule& rule, F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const auto x = rule.nodes();
  const auto w = rule.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(mid + half * x[i]);
  return half * sum;
}

/// Panel breakpoints on [a, b]: `panels` uniform panels, with the two end
/// panels further split geometrically (`levels` times, ratio 0.15) so that
/// algebraic endpoint singularities converge.
std::vector<double> graded_breakpoints(double a, double b, int panels, int levels);

/// Composite Gauss-Legendre over graded panels.
template <class F>
double integrate_graded(F&& f, double a, double b, int panels, int levels = 12,
                        const QuadratureRule& rule = default_panel_rule()) {
  const auto cuts = graded_breakpoints(a, b, panels, levels);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrate_panel(rule, f, cuts[i], cuts[i + 1]);
  return sum;
}

/// Integral over x in [-1, 1] of (1-x^2)^{power} g(x), evaluated in theta-space
/// (x = cos theta) so that the endpoint behaviour becomes sin^{2 power + 1}.
template <class G>
double integrate_jacobi_like(G&& g, double power, int panels = 24) {
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    return std::pow(s, 2.0 * power + 1.0) * g(std::cos(theta));
  };
  return integrate_graded(integrand, 0.0, std::numbers::pi, panels);
}

/// Integral over [0, inf) of x^a e^{-x} g(x), via x = t^2 and graded
/// composite Gauss-Legendre in t.  Intended for polynomial-like g.
template <class G>
double integrate_laguerre_weight(G&& g, double a, double t_max = 14.0, int panels = 28) {
  auto integrand = [&](double t) {
    const double x = t * t;
    return 2.0 * std::pow(t, 2.0 * a + 1.0) * std::exp(-x) * g(x);
  };
  return integrate_graded(integrand, 0.0, t_max, panels);
}

// ---------------------------------------------------------------------------
// Integral identities

/// pi 2^{1-2v} Gamma(2v+n) / (n! (n+v) Gamma(v)^2): the exact value of
/// int_{-1}^{1} (1-x^2)^{v-1/2} [C_n^v(x)]^2 dx.  Throws std::overflow_error
/// when the result is not representable.
double gegenbauer_weighted_sq_integral(int n, double v);

/// Lowered-weight integral int_{-1}^{1} (1-x^2)^{v-3/2} [C_n^v]^2 dx.
/// `printed` is the closed form pi Gamma(2v+n) 2^{1-2v} / (n! (1/2-v) Gamma(v)^2),
/// which is negative for every admissible v; `quadrature` is the integral
/// itself.  Neither is substituted for the other.
struct LoweredWeightIntegral {
  double printed = 0.0;
  double quadrature = 0.0;

  double discrepancy() const { return quadrature - printed; }
};

/// Throws DivergentIntegralError for v <= 1/2.
LoweredWeightIntegral gegenbauer_weighted_sq_integral_lower(int n, double v);

/// Gamma(a+n+1)/Gamma(n+1) delta_{nm}.
double laguerre_orthogonality(int n, int m, double a);

/// (a+2n) Gamma(a+n) / Gamma(n+1): int x^a e^{-x} [L_n^{a-1}]^2 dx.
double laguerre_shifted_norm(int n, double a);

/// (alpha+n)! (2n+alpha+1) / n!: int x^{alpha+1} e^{-x} [L_n^alpha]^2 dx.
double laguerre_first_moment_norm(int n, double alpha);

/// int_0^inf x^p e^{-x} L_n^a(x) L_m^b(x) dx as the finite sum
/// Gamma(p+1) sum_r (-1)^{n+m} binom(p-a, n-r) binom(p-b, m-r) binom(p+r, r).
double laguerre_offdiag_integral(int n, int m, double p, double a, double b);

/// Residual of (n+2) C_{n+2} - 2(lambda+n+1) x C_{n+1} + (2 lambda+n) C_n.
double gegenbauer_recurrence_check(int n, double lambda, double x);

/// Residual (scaled by max(1, |rhs|)) between
///   2 (1-x^2)^{lambda-3/2} [(2lambda+n-1) C_n C_{n-1} - (lambda+n-1/2) x C_n^2]
/// and a central difference of (1-x^2)^{lambda-1/2} [C_n^lambda]^2.
/// Requires |x| < 1 and n >= 1.
double gegenbauer_weight_derivative_check(int n, double lambda, double x);

}  // namespace mie_ring::specfun
