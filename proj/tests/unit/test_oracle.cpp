#include <cmath>

#include <doctest.h>

#include "mie_ring/errors.hpp"
#include "mie_ring/oracle.hpp"

using namespace mie_ring;
using namespace mie_ring::oracle;
using doctest::Approx;

namespace {
const model::Molecule kScH{"ScH", 2.25, 1.776, 0.986040};
const auto kPhys = model::UnitSystem::physical();
const auto kNat = model::UnitSystem::natural();
const auto kCoulomb = model::make_spec(0.0, 1.0, 0.0, 0.0);
}  // namespace

TEST_CASE("ScH ground state from the radial solver") {
  const auto spec = model::from_molecule(kScH, model::Variant::kratzer_fues, 0.0);
  const auto res = solve_radial(spec, kScH.mu, 0.0, kPhys, 2);
  REQUIRE(res.size() == 2);
  CHECK(res[0].eigenvalue < res[1].eigenvalue);
  CHECK(res[0].eigenvalue == Approx(spectrum::energy(spec, kScH.mu, {0, 0, 0}, kPhys)).epsilon(1e-6));
  CHECK(res[1].eigenvalue == Approx(spectrum::energy(spec, kScH.mu, {1, 0, 0}, kPhys)).epsilon(1e-6));
  CHECK(res[0].eigenvector.size() == res[0].abscissae.size());
}

TEST_CASE("hydrogenic levels with real l") {
  RadialSolveOptions opt;
  opt.r_max = 60.0;
  const auto res = solve_radial(kCoulomb, 1.0, 0.0, kNat, 3, opt);
  for (int n = 0; n < 3; ++n) CHECK(res[n].eigenvalue == Approx(-0.5 / ((n + 1.0) * (n + 1.0))).epsilon(1e-7));
  const double ell = 2.37;
  const auto frac = solve_radial(kCoulomb, 1.0, ell, kNat, 1, opt);
  CHECK(frac[0].eigenvalue == Approx(-0.5 / ((ell + 1) * (ell + 1))).epsilon(1e-7));
}

TEST_CASE("radial scheme is second order") {
  const double exact = -0.5;
  double prev = 0.0;
  for (int points : {1000, 2000, 4000}) {
    const double err = std::abs(radial_eigenvalues_on_grid(kCoulomb, 1.0, 0.0, kNat, {0.0, 60.0, points}, 1)[0] - exact);
    if (prev > 0.0) CHECK(prev / err == Approx(4.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("eigenvalue count and ordering") {
  const auto vals = radial_eigenvalues_on_grid(kCoulomb, 1.0, 1.0, kNat, {0.0, 80.0, 2000}, 5);
  REQUIRE(vals.size() == 5);
  for (int i = 1; i < 5; ++i) CHECK(vals[i] > vals[i - 1]);
}

TEST_CASE("coarse grid refuses to converge") {
  RadialSolveOptions opt;
  opt.base_points = 200;
  opt.max_points = 400;
  opt.r_max = 60.0;
  CHECK_THROWS_AS(solve_radial(kCoulomb, 1.0, 0.0, kNat, 1, opt), ConvergenceError);
}

TEST_CASE("Legendre and associated Legendre separation constants") {
  const auto leg = solve_angular(0.0, 0, 4);
  for (int l = 0; l < 4; ++l) CHECK(leg[l].eigenvalue == Approx(l * (l + 1.0)).scale(1.0).epsilon(1e-8));
  const auto assoc = solve_angular(0.0, 2, 2);
  CHECK(assoc[0].eigenvalue == Approx(6.0).epsilon(1e-8));
  CHECK(recovered_ell(assoc[0].eigenvalue) == Approx(2.0).epsilon(1e-8));
}

TEST_CASE("ring term lowers lambda by eta relative to L(L+1)") {
  // cos^2/sin^2 = 1/sin^2 - 1
  for (double eta : {1.0, 5.0, 10.0}) {
    const auto res = solve_angular(eta, 1, 3);
    for (int nt = 0; nt < 3; ++nt) {
      const double L = std::sqrt(1.0 + eta) + nt;
      CHECK(res[nt].eigenvalue == Approx(L * (L + 1.0) - eta).epsilon(1e-7));
    }
  }
  // the printed relation lambda = l(l+1) with l = sqrt(10) does not hold
  const auto r10 = solve_angular(10.0, 0, 1);
  CHECK(std::abs(recovered_ell(r10[0].eigenvalue) - std::sqrt(10.0)) > 1.0);
}

TEST_CASE("normalization quadrature") {
  const auto s = spectrum::derive_state(model::from_molecule(kScH, model::Variant::kratzer_fues, 10.0), kScH.mu,
                                        {3, 2, 1}, kPhys);
  const auto norm = normalization_integral(s);
  CHECK(norm.value == Approx(1.0).epsilon(1e-10));
  CHECK(norm.radial * norm.angular == Approx(norm.value).epsilon(1e-12));
  CHECK(norm.drift < 1e-8);
  CHECK(check_normalization(s) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("density derivative cross-check") {
  const auto s = spectrum::derive_state(model::from_molecule(kScH, model::Variant::kratzer_fues, 1.0), kScH.mu,
                                        {1, 1, 0}, kPhys);
  const auto d = check_density_derivatives(s);
  CHECK(d.samples > 0);
  CHECK(d.residual_dr < 1e-6);
  CHECK(d.residual_dtheta < 1e-6);
}

TEST_CASE("hydrogenic Fisher of an excited state") {
  // 4/n^2 (1 - |m|/n) for principal n = 5, m = 1: here (n, l, m) = (2, 2, 1) in radial-count form
  const auto s = spectrum::derive_state(kCoulomb, 1.0, {2, 1, 1}, kNat);
  CHECK(fisher_quadrature(s).total == Approx(4.0 / 25.0 * (1.0 - 1.0 / 5.0)).epsilon(1e-8));
}
