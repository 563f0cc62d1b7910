#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "mie_ring/errors.hpp"
#include "mie_ring/specfun.hpp"

using namespace mie_ring;
using namespace mie_ring::specfun;
using doctest::Approx;

TEST_CASE("gegenbauer low degrees") {
  CHECK(gegenbauer(0, 0.7, 0.3) == 1.0);
  CHECK(gegenbauer(1, 1.5, 0.4) == Approx(2 * 1.5 * 0.4));
  CHECK(gegenbauer(2, 1.5, 0.5) == Approx(0.375).epsilon(1e-14));
  CHECK_THROWS_AS(gegenbauer(2, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(gegenbauer(2, -1.0, 0.5), DomainError);
}

TEST_CASE("laguerre low degrees and derivative") {
  CHECK(laguerre_assoc(0, 2.5, 3.0) == 1.0);
  CHECK(laguerre_assoc(1, 2.5, 3.0) == Approx(1 + 2.5 - 3.0));
  CHECK(laguerre_assoc(2, 0.0, 1.0) == Approx(-0.5).epsilon(1e-14));
  CHECK(laguerre_deriv(0, 1.0, 0.5) == 0.0);
  CHECK(laguerre_deriv(1, 3.0, 0.5) == Approx(-1.0));
  CHECK(laguerre_deriv(2, 1.0, 0.7) == Approx(-2.3).epsilon(1e-14));
  CHECK_THROWS_AS(laguerre_assoc(2, -1.0, 0.5), DomainError);
}

TEST_CASE("log gamma and ratios") {
  CHECK(log_gamma(5.0).log_abs == Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(-0.5).sign == -1);
  CHECK(log_gamma(-0.5).value() == Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(gamma_ratio(6.0, 3.0) == Approx(60.0).epsilon(1e-13));
  // far beyond the range where Gamma itself overflows
  CHECK(gamma_ratio(400.5, 399.5) == Approx(399.5).epsilon(1e-12));
  CHECK(generalized_binomial(5.0, 2) == Approx(10.0));
  CHECK(generalized_binomial(-0.5, 3) == Approx(-0.3125));
}

TEST_CASE("two-point Gauss-Legendre rule") {
  const auto rule = make_quadrature(QuadratureKind::gauss_legendre, 2);
  REQUIRE(rule.order() == 2);
  CHECK(std::abs(rule.nodes()[0]) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rule.weights()[0] == Approx(1.0));
  CHECK(rule.weights()[1] == Approx(1.0));
  CHECK_THROWS(make_quadrature(QuadratureKind::gauss_legendre, 1));
  CHECK_THROWS(make_quadrature(QuadratureKind::gauss_laguerre, 500));
}

TEST_CASE("Gauss-Laguerre integrates polynomials exactly") {
  const auto rule = make_quadrature(QuadratureKind::gauss_laguerre, 16);
  double s = 0.0;
  for (int i = 0; i < rule.order(); ++i) s += rule.weights()[i] * std::pow(rule.nodes()[i], 5);
  CHECK(s == Approx(120.0).epsilon(1e-12));
}

TEST_CASE("gegenbauer weighted norm") {
  // v = 1/2 is the Legendre weight: 2/(2n+1)
  CHECK(gegenbauer_weighted_sq_integral(0, 0.5) == Approx(2.0).epsilon(1e-13));
  CHECK(gegenbauer_weighted_sq_integral(3, 0.5) == Approx(2.0 / 7.0).epsilon(1e-13));
  CHECK(gegenbauer_weighted_sq_integral(0, 1.0) == Approx(std::numbers::pi / 2).epsilon(1e-13));
  for (double v : {1.0, 1.5, 3.0}) {
    for (int n = 0; n <= 6; ++n) {
      const double q = integrate_jacobi_like([&](double x) { return std::pow(gegenbauer(n, v, x), 2); }, v - 0.5);
      CHECK(q == Approx(gegenbauer_weighted_sq_integral(n, v)).epsilon(1e-10));
    }
  }
}

TEST_CASE("lowered-weight integral keeps printed and quadrature apart") {
  const auto w = gegenbauer_weighted_sq_integral_lower(0, 1.0);
  // int (1-x^2)^{-1/2} dx = pi
  CHECK(w.quadrature == Approx(std::numbers::pi).epsilon(1e-10));
  CHECK(w.printed == Approx(-std::numbers::pi).epsilon(1e-13));
  CHECK(w.discrepancy() > 0.0);
  const auto w2 = gegenbauer_weighted_sq_integral_lower(1, 1.5);
  const double q = integrate_jacobi_like([](double x) { return std::pow(gegenbauer(1, 1.5, x), 2); }, 0.0);
  CHECK(w2.quadrature == Approx(q).epsilon(1e-10));
  CHECK_THROWS_AS(gegenbauer_weighted_sq_integral_lower(1, 0.5), DivergentIntegralError);
}

TEST_CASE("laguerre identities against quadrature") {
  CHECK(laguerre_orthogonality(1, 2, 0.5) == 0.0);
  CHECK(laguerre_orthogonality(0, 0, 0.0) == Approx(1.0));
  CHECK(laguerre_orthogonality(2, 2, 3.0) == Approx(60.0).epsilon(1e-13));
  for (double a : {0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 5; ++n) {
      const double q = integrate_laguerre_weight([&](double x) { return std::pow(laguerre_assoc(n, a - 1.0, x), 2); },
                                                 a);
      CHECK(q == Approx(laguerre_shifted_norm(n, a)).epsilon(1e-10));
      const double q1 =
          integrate_laguerre_weight([&](double x) { return x * std::pow(laguerre_assoc(n, a, x), 2); }, a);
      CHECK(q1 == Approx(laguerre_first_moment_norm(n, a)).epsilon(1e-10));
    }
  }
}

TEST_CASE("off-diagonal laguerre sum") {
  CHECK(laguerre_offdiag_integral(0, 0, 0, 0, 0) == Approx(1.0));
  const double q = integrate_laguerre_weight([](double x) { return laguerre_assoc(1, 1.0, x); }, 1.0);
  CHECK(laguerre_offdiag_integral(1, 0, 1, 1, 1) == Approx(q).epsilon(1e-10));
  const double q2 = integrate_laguerre_weight(
      [](double x) { return laguerre_assoc(1, 2.0, x) * laguerre_assoc(1, 1.0, x); }, 1.0);
  CHECK(laguerre_offdiag_integral(1, 1, 1, 2, 1) == Approx(q2).epsilon(1e-10));
}

TEST_CASE("gegenbauer recurrence residual") {
  CHECK(std::abs(gegenbauer_recurrence_check(0, 1.0, 0.3)) < 1e-12);
  CHECK(std::abs(gegenbauer_recurrence_check(3, 2.5, -0.8)) < 1e-12);
  CHECK(std::abs(gegenbauer_recurrence_check(0, 0.5, 1.0)) < 1e-12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.1, 6.0), xs(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int n = i % 11;
    const double l = lam(rng), x = xs(rng);
    const double scale = std::max(1.0, std::abs(gegenbauer(n + 2, l, x)));
    CHECK(std::abs(gegenbauer_recurrence_check(n, l, x)) / scale < 1e-12);
  }
}

TEST_CASE("weight derivative identity") {
  CHECK(gegenbauer_weight_derivative_check(1, 1.0, 0.0) < 1e-6);
  CHECK(gegenbauer_weight_derivative_check(2, 1.5, 0.4) < 1e-6);
  CHECK(gegenbauer_weight_derivative_check(1, 0.75, -0.5) < 1e-6);
  CHECK_THROWS_AS(gegenbauer_weight_derivative_check(1, 1.0, 1.0), DomainError);
}
