#include <cmath>
#include <random>

#include <doctest.h>

#include "mie_ring/errors.hpp"
#include "mie_ring/fisher.hpp"

using namespace mie_ring;
using namespace mie_ring::fisher;
using doctest::Approx;

namespace {
const model::Molecule kScH{"ScH", 2.25, 1.776, 0.986040};
const auto kPhys = model::UnitSystem::physical();

spectrum::QuantumState state(double eta, spectrum::QuantumNumbers q,
                             model::Variant v = model::Variant::kratzer_fues) {
  return spectrum::derive_state(model::from_molecule(kScH, v, eta), kScH.mu, q, kPhys);
}
}  // namespace

TEST_CASE("radial parts sum to the combined form") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n(0, 12);
  std::uniform_real_distribution<double> g(0.01, 80.0), vs(0.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    spectrum::QuantumState s;
    s.qn.n = n(rng);
    s.gamma = g(rng);
    s.varsigma = vs(rng);
    const auto rc = i_r_closed(s);
    double sum = 0.0;
    for (double p : rc.parts) sum += p;
    CHECK(sum == Approx(rc.combined).epsilon(1e-10));
    CHECK(rc.combined == Approx(i_r_combined(s.qn.n, s.gamma, s.varsigma)).epsilon(1e-15));
  }
}

TEST_CASE("radial parts at n = 0") {
  const auto rc = i_r_closed(state(1.0, {0, 0, 0}));
  CHECK(rc.parts[0] == 0.0);
  CHECK(rc.parts[4] == 0.0);
}

TEST_CASE("hydrogenic ground state") {
  const auto s = spectrum::derive_state(model::make_spec(0.0, 1.0, 0.0, 0.0), 1.0, {0, 0, 0},
                                        model::UnitSystem::natural());
  CHECK(i_r_combined(0, s.gamma, s.varsigma) == Approx(4.0 * s.varsigma * s.varsigma));
  const auto q = fisher_total(s, Mode::quadrature);
  CHECK(q.i_r == Approx(4.0).epsilon(1e-9));
  CHECK(q.i_theta == Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_FALSE(q.theta_parts_defined);
}

TEST_CASE("angular closed form") {
  const auto s = state(1.0, {0, 0, 0});
  const auto th = i_theta_closed(s);
  CHECK(th.parts[1] == 0.0);
  CHECK(th.parts[2] == 0.0);
  const double z = s.zeta, vs2 = s.varsigma * s.varsigma;
  const double expect = -2.0 * vs2 * 4 * z * z * (8 * z + 1) / (z * (s.gamma + 1) * (2 * s.gamma + 1));
  CHECK(th.combined == Approx(expect).epsilon(1e-13));
  const auto t2 = i_theta_closed(state(10.0, {3, 2, 1}));
  CHECK(t2.parts[0] + t2.parts[1] + t2.parts[2] == Approx(t2.combined).epsilon(1e-12));
}

TEST_CASE("closed form singularities") {
  CHECK_THROWS_AS(i_theta_closed(state(0.0, {0, 0, 0})), SingularParameterError);
  // zeta = 1/4 with n_tilde = 0: 4 zeta + n_tilde - 1 = 0
  CHECK_THROWS_AS(i_theta_closed(state(0.25, {0, 0, 0})), SingularParameterError);
  const auto cmp = fisher_compare(state(0.0, {0, 0, 0}));
  CHECK_FALSE(cmp.closed);
  CHECK_FALSE(cmp.closed_error.empty());
  CHECK(cmp.quadrature.total > 0.0);
}

TEST_CASE("quadrature parts add up") {
  const auto q = fisher_total(state(10.0, {1, 1, 0}), Mode::quadrature);
  CHECK(q.theta_parts_defined);
  CHECK(q.i_theta_parts[0] + q.i_theta_parts[1] + q.i_theta_parts[2] == Approx(q.i_theta).epsilon(1e-10));
  double r = 0.0;
  for (double p : q.i_r_parts) r += p;
  CHECK(r == Approx(q.i_r).epsilon(1e-10));
  CHECK(q.total == Approx(q.i_r + q.i_theta).epsilon(1e-15));
  CHECK(q.derivative_residual < 1e-6);
  CHECK(q.quadrature_drift < 1e-8);
}

TEST_CASE("closed radial form agrees with quadrature only at n = 0") {
  const auto s0 = state(1.0, {0, 0, 0});
  CHECK(fisher_total(s0, Mode::quadrature).i_r == Approx(i_r_combined(0, s0.gamma, s0.varsigma)).epsilon(1e-8));
  const auto s1 = state(1.0, {1, 1, 0});
  const double q1 = fisher_total(s1, Mode::quadrature).i_r;
  CHECK(std::abs(q1 - i_r_combined(1, s1.gamma, s1.varsigma)) / q1 > 1e-3);
}

TEST_CASE("Fisher is invariant under the c-shift") {
  for (double eta : {0.0, 1.0, 10.0}) {
    const auto a = fisher_total(state(eta, {3, 2, 1}), Mode::quadrature);
    const auto b = fisher_total(state(eta, {3, 2, 1}, model::Variant::modified_kratzer), Mode::quadrature);
    CHECK(a.total > 0.0);
    CHECK(b.total == Approx(a.total).epsilon(1e-12));
  }
}

TEST_CASE("mode names") {
  CHECK(mode_name(Mode::closed_form) == "closed-form");
  CHECK(mode_name(Mode::quadrature) == "quadrature");
}
