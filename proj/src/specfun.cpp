#include "mie_ring/specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mie_ring/errors.hpp"

namespace mie_ring::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

double lgamma_abs(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void require_degree(int n, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": negative degree");
}

}  // namespace

double gegenbauer(int n, double lambda, double x) {
  require_degree(n, "gegenbauer");
  if (!(lambda > 0.0)) throw DomainError("gegenbauer: lambda must be positive");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * lambda * x;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * x * (k + lambda) * curr - (k + 2.0 * lambda - 1.0) * prev) / (k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

double laguerre_assoc(int n, double alpha, double x) {
  require_degree(n, "laguerre_assoc");
  if (!(alpha > -1.0)) throw DomainError("laguerre_assoc: alpha must exceed -1");
  if (x < 0.0) throw DomainError("laguerre_assoc: argument must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

double laguerre_deriv(int n, double alpha, double x) {
  if (n <= 0) return 0.0;
  return -laguerre_assoc(n - 1, alpha + 1.0, x);
}

SignedLog log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("log_gamma: pole at non-positive integer");
  SignedLog out;
  out.log_abs = lgamma_abs(x);
  if (x < 0.0) out.sign = (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
  return out;
}

double gamma_ratio(double num, double den) {
  const SignedLog a = log_gamma(num);
  const SignedLog b = log_gamma(den);
  return a.sign * b.sign * std::exp(a.log_abs - b.log_abs);
}

double generalized_binomial(double top, int k) {
  if (k < 0) return 0.0;
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= (top - i) / (i + 1);
  return out;
}

// ---------------------------------------------------------------------------

QuadratureRule::QuadratureRule(QuadratureKind kind, std::vector<double> nodes, std::vector<double> weights)
    : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) throw std::invalid_argument("QuadratureRule: node/weight count mismatch");
}

namespace {

QuadratureRule gauss_legendre(int order) {
  std::vector<double> x(order), w(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      const double z_old = z;
      z = z_old - p1 / pp;
      if (std::abs(z - z_old) <= 1e-15) break;
    }
    // recompute the derivative at the converged node
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= order; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = order * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = w[order - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return QuadratureRule(QuadratureKind::gauss_legendre, std::move(x), std::move(w));
}

QuadratureRule gauss_laguerre(int order) {
  std::vector<double> x(order), w(order);
  const double n = order;
  double z = 0.0;
  for (int i = 0; i < order; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - x[i - 2]);
    }
    double pp = 0.0, p2 = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      pp = (n * p1 - n * p2) / z;
      const double z_old = z;
      z = z_old - p1 / pp;
      if (std::abs(z - z_old) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("gauss-laguerre: Newton iteration failed at order " + std::to_string(order));
    double p1 = 1.0;
    p2 = 0.0;
    for (int j = 1; j <= order; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
    }
    pp = (n * p1 - n * p2) / z;
    x[i] = z;
    w[i] = -1.0 / (pp * n * p2);
  }
  return QuadratureRule(QuadratureKind::gauss_laguerre, std::move(x), std::move(w));
}

}  // namespace

QuadratureRule make_quadrature(QuadratureKind kind, int order) {
  switch (kind) {
    case QuadratureKind::gauss_legendre:
      if (order < 2 || order > 1024) throw DomainError("gauss-legendre: unsupported order " + std::to_string(order));
      return gauss_legendre(order);
    case QuadratureKind::gauss_laguerre:
      if (order < 2 || order > 128) throw DomainError("gauss-laguerre: unsupported order " + std::to_string(order));
      return gauss_laguerre(order);
  }
  throw DomainError("make_quadrature: unknown kind");
}

const QuadratureRule& default_panel_rule() {
  static const QuadratureRule rule = make_quadrature(QuadratureKind::gauss_legendre, 20);
  return rule;
}

std::vector<double> graded_breakpoints(double a, double b, int panels, int levels) {
  if (panels < 1) throw DomainError("graded_breakpoints: need at least one panel");
  const double width = (b - a) / panels;
  std::vector<double> cuts;
  cuts.reserve(panels + 2 * levels + 1);
  for (int i = 0; i <= panels; ++i) cuts.push_back(a + i * width);
  double frac = 1.0;
  for (int k = 0; k < levels; ++k) {
    frac *= 0.15;
    cuts.push_back(a + width * frac);
    cuts.push_back(b - width * frac);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// ---------------------------------------------------------------------------

double gegenbauer_weighted_sq_integral(int n, double v) {
  require_degree(n, "gegenbauer_weighted_sq_integral");
  if (!(v > 0.0)) throw DomainError("gegenbauer_weighted_sq_integral: v must be positive");
  const double log_value = std::log(kPi) + (1.0 - 2.0 * v) * std::numbers::ln2 + lgamma_abs(2.0 * v + n) -
                           lgamma_abs(n + 1.0) - std::log(n + v) - 2.0 * lgamma_abs(v);
  if (log_value > std::log(DBL_MAX)) throw std::overflow_error("gegenbauer_weighted_sq_integral: result overflows");
  return std::exp(log_value);
}

LoweredWeightIntegral gegenbauer_weighted_sq_integral_lower(int n, double v) {
  require_degree(n, "gegenbauer_weighted_sq_integral_lower");
  if (!(v > 0.5)) throw DivergentIntegralError("lowered-weight Gegenbauer integral diverges for v <= 1/2");
  LoweredWeightIntegral out;
  const double log_abs = std::log(kPi) + lgamma_abs(2.0 * v + n) + (1.0 - 2.0 * v) * std::numbers::ln2 -
                         lgamma_abs(n + 1.0) - std::log(v - 0.5) - 2.0 * lgamma_abs(v);
  out.printed = -std::exp(log_abs);
  out.quadrature = integrate_jacobi_like(
      [&](double x) {
        const double c = gegenbauer(n, v, x);
        return c * c;
      },
      v - 1.5);
  return out;
}

double laguerre_orthogonality(int n, int m, double a) {
  if (n != m) return 0.0;
  if (!(a > -1.0)) throw DomainError("laguerre_orthogonality: a must exceed -1");
  return gamma_ratio(a + n + 1.0, n + 1.0);
}

double laguerre_shifted_norm(int n, double a) {
  if (!(a > 0.0)) throw DomainError("laguerre_shifted_norm: a must be positive");
  return (a + 2.0 * n) * gamma_ratio(a + n, n + 1.0);
}

double laguerre_first_moment_norm(int n, double alpha) {
  if (!(alpha > -1.0)) throw DomainError("laguerre_first_moment_norm: alpha must exceed -1");
  return gamma_ratio(alpha + n + 1.0, n + 1.0) * (2.0 * n + alpha + 1.0);
}

double laguerre_offdiag_integral(int n, int m, double p, double a, double b) {
  if (!(p > -1.0)) throw DomainError("laguerre_offdiag_integral: p must exceed -1");
  double sum = 0.0;
  for (int r = 0; r <= std::min(n, m); ++r)
    sum += generalized_binomial(p - a, n - r) * generalized_binomial(p - b, m - r) * generalized_binomial(p + r, r);
  const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
  return sign * log_gamma(p + 1.0).value() * sum;
}

double gegenbauer_recurrence_check(int n, double lambda, double x) {
  const double c0 = gegenbauer(n, lambda, x);
  const double c1 = gegenbauer(n + 1, lambda, x);
  const double c2 = gegenbauer(n + 2, lambda, x);
  return (n + 2.0) * c2 - 2.0 * (lambda + n + 1.0) * x * c1 + (2.0 * lambda + n) * c0;
}

double gegenbauer_weight_derivative_check(int n, double lambda, double x) {
  if (!(std::abs(x) < 1.0)) throw DomainError("gegenbauer_weight_derivative_check: |x| must be below 1");
  if (n < 1) throw DomainError("gegenbauer_weight_derivative_check: n must be at least 1");
  auto weighted = [&](double t) {
    const double c = gegenbauer(n, lambda, t);
    return std::pow(1.0 - t * t, lambda - 0.5) * c * c;
  };
  const double h = 1e-5 * std::min(1.0, 1.0 - std::abs(x));
  const double fd = (weighted(x + h) - weighted(x - h)) / (2.0 * h);
  const double cn = gegenbauer(n, lambda, x);
  const double cm = gegenbauer(n - 1, lambda, x);
  const double rhs = 2.0 * std::pow(1.0 - x * x, lambda - 1.5) *
                     ((2.0 * lambda + n - 1.0) * cn * cm - (lambda + n - 0.5) * x * cn * cn);
  return std::abs(fd - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace mie_ring::specfun
