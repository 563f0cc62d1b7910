#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "mie_ring/errors.hpp"
#include "mie_ring/model.hpp"
#include "mie_ring/spectrum.hpp"

using namespace mie_ring;
using namespace mie_ring::spectrum;
using doctest::Approx;

namespace {
const model::Molecule kScH{"ScH", 2.25, 1.776, 0.986040};
const model::Molecule kCuLi{"CuLi", 1.74, 2.310, 6.259494};
const auto kPhys = model::UnitSystem::physical();
}  // namespace

TEST_CASE("zeta and effective l") {
  CHECK(zeta_of(0, 0.0) == 0.0);
  CHECK(zeta_of(0, 1.0) == Approx(0.5));
  CHECK(zeta_of(1, 10.0) == Approx(std::sqrt(11.0) / 2));
  CHECK(zeta_of(-1, 10.0) == zeta_of(1, 10.0));
  CHECK(ell_effective({0, 0, 0}, 0.0) == 0.0);
  CHECK(ell_effective({0, 3, 2}, 0.0) == Approx(5.0));
  CHECK(ell_effective({0, 2, 1}, 10.0) == Approx(std::sqrt(11.0) + 2));
}

TEST_CASE("tabulated energies") {
  const auto kf = model::from_molecule(kScH, model::Variant::kratzer_fues, 0.0);
  const auto mk = model::from_molecule(kScH, model::Variant::modified_kratzer, 0.0);
  CHECK(energy(kf, kScH.mu, {0, 0, 0}, kPhys) == Approx(-2.2114491348232).epsilon(1e-11));
  CHECK(energy(mk, kScH.mu, {0, 0, 0}, kPhys) == Approx(0.038550865177).epsilon(1e-9));
  const auto culi = model::from_molecule(kCuLi, model::Variant::kratzer_fues, 10.0);
  CHECK(energy(culi, kCuLi.mu, {5, 5, 4}, kPhys) == Approx(-1.6243049333992).epsilon(1e-10));
}

TEST_CASE("no attractive term means no binding") {
  const auto spec = model::make_spec(1.0, 0.0, 0.7, 1.0);
  for (int n = 0; n < 3; ++n) CHECK(energy(spec, 1.0, {n, 1, 1}, kPhys) == 0.7);
  CHECK_THROWS_AS(derive_state(spec, 1.0, {0, 0, 0}, kPhys), UnboundStateError);
}

TEST_CASE("hydrogenic pattern") {
  // natural units, a = 0, b = 1, mu = 1: E = -1/(2 (n + l + 1)^2)
  const auto spec = model::make_spec(0.0, 1.0, 0.0, 0.0);
  const auto nat = model::UnitSystem::natural();
  for (int n = 0; n < 4; ++n)
    for (int l = 0; l < 3; ++l)
      CHECK(energy(spec, 1.0, {n, l, 0}, nat) == Approx(-0.5 / ((n + l + 1.0) * (n + l + 1.0))).epsilon(1e-14));
}

TEST_CASE("c-shift leaves everything but the energy alone") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> de(0.5, 8.0), re(0.8, 3.0), mu(0.5, 20.0), eta(0.0, 12.0);
  std::uniform_int_distribution<int> qn(0, 6);
  for (int i = 0; i < 100; ++i) {
    const model::Molecule mol{"x", de(rng), re(rng), mu(rng)};
    const double e = eta(rng);
    const QuantumNumbers q{qn(rng), qn(rng), qn(rng)};
    const auto kf = derive_state(model::from_molecule(mol, model::Variant::kratzer_fues, e), mol.mu, q, kPhys);
    const auto mk = derive_state(model::from_molecule(mol, model::Variant::modified_kratzer, e), mol.mu, q, kPhys);
    CHECK(mk.energy - kf.energy == Approx(mol.De).epsilon(4e-15));
    CHECK(mk.binding == kf.binding);
    CHECK(mk.varsigma == kf.varsigma);
    CHECK(mk.norm_product == kf.norm_product);
  }
}

TEST_CASE("state parameters") {
  const auto spec = model::from_molecule(kScH, model::Variant::kratzer_fues, 0.0);
  const auto s = derive_state(spec, kScH.mu, {0, 0, 0}, kPhys);
  const auto g = model::dimensionless_groups(spec, kScH.mu, kPhys);
  CHECK(s.gamma == Approx(-0.5 + std::sqrt(0.25 + g.two_mu_a)).epsilon(1e-14));
  CHECK(s.varsigma == Approx(std::sqrt(kPhys.two_mu_over_hbar_sq(kScH.mu) * s.binding)).epsilon(1e-14));
  const auto logs = log_normalization(s);
  CHECK(std::exp(logs.radial + logs.angular) == Approx(s.norm_product).epsilon(1e-12));
  CHECK(normalization_product(s) == Approx(s.norm_product).epsilon(1e-12));
}

TEST_CASE("wavefunction boundary behaviour") {
  const auto s = derive_state(model::from_molecule(kScH, model::Variant::kratzer_fues, 10.0), kScH.mu, {1, 1, 0}, kPhys);
  CHECK(radial_wavefunction(s, 1e-6) == 0.0);
  CHECK(angular_wavefunction(s, 0.0) == 0.0);
  CHECK(angular_wavefunction(s, std::numbers::pi) == Approx(0.0).scale(1.0));
  CHECK(angular_wavefunction(s, 0.4) == Approx(-angular_wavefunction(s, std::numbers::pi - 0.4)));

  const auto sphere =
      derive_state(model::from_molecule(kScH, model::Variant::kratzer_fues, 0.0), kScH.mu, {0, 0, 0}, kPhys);
  CHECK(angular_wavefunction(sphere, 0.3) == Approx(angular_wavefunction(sphere, 2.1)).epsilon(1e-14));
  CHECK(angular_wavefunction(sphere, 0.3) == Approx(1.0 / std::sqrt(2.0 * 2.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("derivatives match central differences") {
  const auto s = derive_state(model::from_molecule(kCuLi, model::Variant::kratzer_fues, 5.0), kCuLi.mu, {2, 2, 1}, kPhys);
  const auto ext = radial_extent(s, 30.0);
  const double r = ext.peak, h = 1e-5 * r;
  const double fd_r = (radial_wavefunction(s, r + h) - radial_wavefunction(s, r - h)) / (2 * h);
  CHECK(radial_wavefunction_derivative(s, r) == Approx(fd_r).epsilon(1e-6).scale(std::abs(radial_wavefunction(s, r)) / r));
  for (double th : {0.4, 1.2, 2.0}) {
    const double k = 1e-6;
    const double fd = (angular_wavefunction(s, th + k) - angular_wavefunction(s, th - k)) / (2 * k);
    CHECK(angular_wavefunction_derivative(s, th) == Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("radial extent brackets the peak") {
  const auto s = derive_state(model::from_molecule(kScH, model::Variant::kratzer_fues, 0.0), kScH.mu, {0, 0, 0}, kPhys);
  const auto ext = radial_extent(s);
  CHECK(ext.lo < ext.peak);
  CHECK(ext.peak < ext.hi);
  // r^2 R^2 peaks at (gamma + 1) / varsigma for n = 0
  CHECK(ext.peak == Approx((s.gamma + 1.0) / s.varsigma).epsilon(1e-3));
}

TEST_CASE("invalid quantum numbers") {
  const auto spec = model::from_molecule(kScH, model::Variant::kratzer_fues, 0.0);
  CHECK_THROWS_AS(energy(spec, kScH.mu, {-1, 0, 0}, kPhys), ValidationError);
  CHECK_THROWS_AS(energy(spec, 0.0, {0, 0, 0}, kPhys), ValidationError);
}
