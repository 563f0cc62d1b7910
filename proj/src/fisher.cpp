#include "mie_ring/fisher.hpp"

#include "mie_ring/errors.hpp"
#include "mie_ring/oracle.hpp"

namespace mie_ring::fisher {

std::string_view mode_name(Mode mode) {
  return mode == Mode::closed_form ? "closed-form" : "quadrature";
}

ThetaComponents i_theta_closed(const spectrum::QuantumState& s) {
  const double z = s.zeta;
  const double nt = s.qn.n_tilde;
  if (z == 0.0) throw SingularParameterError("angular Fisher closed form divides by zeta = 0");
  const double shifted = 4.0 * z + nt - 1.0;
  if (shifted == 0.0) throw SingularParameterError("angular Fisher closed form has 4 zeta + n_tilde - 1 = 0");
  const double vs2 = s.varsigma * s.varsigma;
  const double den = z * (s.qn.n + s.gamma + 1.0) * (s.qn.n + 2.0 * s.gamma + 1.0);

  ThetaComponents out;
  out.parts[0] = -2.0 * vs2 * (2.0 * z + nt) * (2.0 * z + nt) * (8.0 * z + 2.0 * nt + 1.0) / den;
  out.parts[1] = -2.0 * nt * vs2 * (2.0 * nt + 4.0 * z + 1.0) * (4.0 * z + nt) / den;
  out.parts[2] = 2.0 * nt * vs2 * (2.0 * nt + 4.0 * z + 1.0) * (4.0 * z + nt) * (2.0 * z + nt) / (shifted * den);
  out.combined = 2.0 * vs2 / den *
                 (nt * (4.0 * z + nt) * (1.0 - 2.0 * z) * (4.0 * z + 2.0 * nt + 1.0) / shifted -
                  (2.0 * z + nt) * (2.0 * z + nt) * (2.0 * nt + 8.0 * z + 1.0));
  return out;
}

RadialComponents i_r_closed(const spectrum::QuantumState& s) {
  const double n = s.qn.n;
  const double g = s.gamma;
  const double vs2 = s.varsigma * s.varsigma;
  const double a = n + g + 1.0;
  RadialComponents out;
  out.parts[0] = -8.0 * n * vs2 / a;
  out.parts[1] = 8.0 * g * g * vs2 / (a * (n + 2.0 * g + 1.0));
  out.parts[2] = -8.0 * g * vs2 / a;
  out.parts[3] = 4.0 * vs2;
  out.parts[4] = 8.0 * n * vs2 / a;
  out.combined = i_r_combined(s.qn.n, g, s.varsigma);
  return out;
}

double i_r_combined(int n, double gamma, double varsigma) {
  const double vs2 = varsigma * varsigma;
  return 4.0 * vs2 / (n + gamma + 1.0) * (2.0 * gamma * gamma / (n + 2.0 * gamma + 1.0) + n - gamma + 1.0);
}

FisherReport fisher_total(const spectrum::QuantumState& state, Mode mode) {
  if (mode == Mode::quadrature) return oracle::fisher_quadrature(state);
  const ThetaComponents th = i_theta_closed(state);
  const RadialComponents rad = i_r_closed(state);
  FisherReport out;
  out.mode = Mode::closed_form;
  out.i_theta_parts = th.parts;
  out.i_theta = th.combined;
  out.i_r_parts = rad.parts;
  out.i_r = rad.combined;
  out.total = out.i_theta + out.i_r;
  return out;
}

FisherComparison fisher_compare(const spectrum::QuantumState& state) {
  FisherComparison out;
  try {
    out.closed = fisher_total(state, Mode::closed_form);
  } catch (const SingularParameterError& e) {
    out.closed_error = e.what();
  }
  out.quadrature = fisher_total(state, Mode::quadrature);
  return out;
}

}  // namespace mie_ring::fisher
