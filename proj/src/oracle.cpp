#include "mie_ring/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mie_ring/errors.hpp"
#include "mie_ring/specfun.hpp"

namespace mie_ring::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e (size n-1).
struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;
  // y = S^{-1/2}-type back transform applied to the eigenvectors of the
  // symmetrized matrix, so that the returned samples are function values.
  std::vector<double> back;
  std::vector<double> abscissae;
};

struct Eigenpairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm, symmetrized basis
  std::vector<double> residuals;
};

Eigenpairs lowest_eigenpairs(const Tridiagonal& t, int k, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(t.d.size());
  if (k < 1 || k > n) throw DomainError("requested eigenvalue count outside the matrix size");
  std::vector<double> e_pad(t.e);
  e_pad.resize(std::max<lapack_int>(n, 1), 0.0);
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  lapack_int found = 0, nsplit = 0;
  std::vector<double> w(n);
  std::vector<lapack_int> iblock(n), isplit(n);
  lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, 1, k, abstol, t.d.data(), e_pad.data(), &found, &nsplit,
                                   w.data(), iblock.data(), isplit.data());
  if (info != 0 || found != k) throw ConvergenceError("tridiagonal bisection failed (info " + std::to_string(info) + ")");
  Eigenpairs out;
  out.values.assign(w.begin(), w.begin() + k);
  if (!want_vectors) return out;

  std::vector<double> z(static_cast<std::size_t>(n) * k);
  std::vector<lapack_int> ifail(k);
  info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, t.d.data(), e_pad.data(), k, w.data(), iblock.data(), isplit.data(),
                        z.data(), n, ifail.data());
  if (info != 0) throw ConvergenceError("inverse iteration failed (info " + std::to_string(info) + ")");
  for (int j = 0; j < k; ++j) {
    std::vector<double> v(z.begin() + static_cast<std::ptrdiff_t>(j) * n, z.begin() + static_cast<std::ptrdiff_t>(j + 1) * n);
    double res = 0.0;
    for (lapack_int i = 0; i < n; ++i) {
      double cv = t.d[i] * v[i];
      if (i > 0) cv += t.e[i - 1] * v[i - 1];
      if (i + 1 < n) cv += t.e[i] * v[i + 1];
      const double r = cv - out.values[j] * v[i];
      res += r * r;
    }
    out.residuals.push_back(std::sqrt(res));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

// Function samples from a symmetrized eigenvector; sign fixed so that the
// first lobe reaching 1e-3 of the peak is positive.
std::vector<double> to_samples(const Tridiagonal& t, const std::vector<double>& y) {
  std::vector<double> f(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) f[i] = y[i] * t.back[i];
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  for (double v : f) {
    if (std::abs(v) > 1e-3 * peak) {
      if (v < 0.0)
        for (double& x : f) x = -x;
      break;
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Radial problem

struct RadialCoefficients {
  double centrifugal = 0.0;  // ell(ell+1) + 2 mu a / hbar^2
  double coulomb = 0.0;      // 2 mu b / hbar^2
  double k_factor = 0.0;     // 2 mu / hbar^2
  double c = 0.0;
};

RadialCoefficients radial_coefficients(const model::PotentialSpec& spec, double mu, double ell,
                                       const model::UnitSystem& u) {
  if (!(mu > 0.0)) throw ValidationError("reduced mass must be positive");
  if (ell < 0.0) throw ValidationError("ell must be non-negative");
  RadialCoefficients rc;
  rc.k_factor = u.two_mu_over_hbar_sq(mu);
  rc.centrifugal = ell * (ell + 1.0) + rc.k_factor * spec.a;
  rc.coulomb = rc.k_factor * spec.b;
  rc.c = spec.c;
  if (!(rc.coulomb > 0.0)) throw ValidationError("radial solver needs an attractive Coulomb term (b > 0)");
  return rc;
}

Tridiagonal radial_matrix(const RadialCoefficients& rc, const RadialGrid& g) {
  if (g.points < 200) throw ValidationError("radial grid needs at least 200 intervals");
  if (!(g.r_max > g.r_min)) throw ValidationError("radial grid needs r_max > r_min");
  const int n = g.points - 1;
  Tridiagonal t;
  t.d.resize(n);
  t.e.resize(n - 1);
  t.back.resize(n);
  t.abscissae.resize(n);
  if (g.spacing == Spacing::uniform) {
    if (g.r_min < 0.0) throw ValidationError("uniform radial grid needs r_min >= 0");
    const double h = (g.r_max - g.r_min) / g.points;
    const double h2 = h * h;
    for (int i = 0; i < n; ++i) {
      const double r = g.r_min + (i + 1) * h;
      t.abscissae[i] = r;
      t.d[i] = 2.0 / h2 + rc.centrifugal / (r * r) - rc.coulomb / r;
      t.back[i] = 1.0 / std::sqrt(h);
    }
    std::fill(t.e.begin(), t.e.end(), -1.0 / h2);
  } else {
    // r = e^x, u = r^{1/2} v:  -v'' + [(nu+1/2)^2 - K b r] v = kappa r^2 v.
    if (!(g.r_min > 0.0)) throw ValidationError("log radial grid needs r_min > 0");
    const double x0 = std::log(g.r_min);
    const double h = (std::log(g.r_max) - x0) / g.points;
    const double h2 = h * h;
    const double shift = rc.centrifugal + 0.25;
    for (int i = 0; i < n; ++i) {
      const double r = std::exp(x0 + (i + 1) * h);
      t.abscissae[i] = r;
      t.d[i] = (2.0 / h2 + shift - rc.coulomb * r) / (r * r);
      t.back[i] = 1.0 / std::sqrt(r * h);
    }
    for (int i = 0; i + 1 < n; ++i) t.e[i] = -1.0 / (h2 * t.abscissae[i] * t.abscissae[i + 1]);
  }
  return t;
}

bool tail_is_small(const std::vector<double>& f) {
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  const std::size_t start = f.size() - std::max<std::size_t>(4, f.size() / 50);
  for (std::size_t i = start; i < f.size(); ++i)
    if (std::abs(f[i]) > 1e-9 * peak) return false;
  return true;
}

struct Extrapolated {
  std::vector<double> values;
  std::vector<double> errors;
  int finest = 0;
};

// Three-level Richardson (h^2 then h^4) on grids base, 2 base, 4 base,
// doubling base until successive extrapolants agree.
template <class Solve>
Extrapolated richardson(Solve&& solve, int k, int base, int max_points, double tol, double floor) {
  for (;;) {
    const std::vector<double> e1 = solve(base);
    const std::vector<double> e2 = solve(2 * base);
    const std::vector<double> e3 = solve(4 * base);
    Extrapolated out;
    out.finest = 4 * base;
    bool ok = true;
    for (int j = 0; j < k; ++j) {
      const double r1 = (4.0 * e2[j] - e1[j]) / 3.0;
      const double r2 = (4.0 * e3[j] - e2[j]) / 3.0;
      out.values.push_back((16.0 * r2 - r1) / 15.0);
      out.errors.push_back(std::abs(r2 - r1));
      if (std::abs(r2 - r1) > tol * std::max(std::abs(r2), floor)) ok = false;
    }
    if (ok) return out;
    if (8 * base > max_points)
      throw ConvergenceError("grid refinement did not settle the eigenvalue (finest grid " +
                             std::to_string(4 * base) + " intervals)");
    base *= 2;
  }
}

// ---------------------------------------------------------------------------
// Angular problem

Tridiagonal angular_matrix(double eta, int m, int points) {
  if (points < 200) throw ValidationError("angular grid needs at least 200 cells");
  const double h = kPi / points;
  const double h2 = h * h;
  const double m2 = static_cast<double>(m) * m;
  Tridiagonal t;
  t.d.resize(points);
  t.e.resize(points - 1);
  t.back.resize(points);
  t.abscissae.resize(points);
  std::vector<double> s(points), face(points + 1);
  for (int i = 0; i <= points; ++i) face[i] = (i == 0 || i == points) ? 0.0 : std::sin(i * h);
  for (int i = 0; i < points; ++i) {
    const double th = (i + 0.5) * h;
    t.abscissae[i] = th;
    s[i] = std::sin(th);
    const double c = std::cos(th);
    t.d[i] = (face[i] + face[i + 1]) / (h2 * s[i]) + (m2 + eta * c * c) / (s[i] * s[i]);
    t.back[i] = 1.0 / std::sqrt(s[i] * h);
  }
  for (int i = 0; i + 1 < points; ++i) t.e[i] = -face[i + 1] / (h2 * std::sqrt(s[i] * s[i + 1]));
  return t;
}

// ---------------------------------------------------------------------------
// Quadrature helpers

struct Converged {
  double value = 0.0;
  double drift = 0.0;
};

template <class F>
Converged converge(F&& f, double a, double b, int levels, double scale, int panels = 8) {
  double prev = specfun::integrate_graded(f, a, b, panels, levels);
  double drift = std::numeric_limits<double>::infinity();
  double curr = prev;
  while (panels <= 512) {
    panels *= 2;
    curr = specfun::integrate_graded(f, a, b, panels, levels);
    drift = std::abs(curr - prev) / std::max(std::abs(curr), scale);
    if (drift <= 1e-13) break;
    prev = curr;
  }
  if (!(drift <= 1e-8))
    throw ConvergenceError("quadrature did not converge (relative drift " + std::to_string(drift) + ")");
  return {curr, drift};
}

// Fourth-order central difference.
template <class F>
double central_difference(F&& f, double x, double h) {
  return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h);
}

double radial_envelope(const spectrum::QuantumState& s, double r) {
  return std::exp(s.log_radial_norm + s.gamma * std::log(r) - s.varsigma * r);
}

double angular_envelope(const spectrum::QuantumState& s, double theta) {
  return std::exp(s.log_angular_norm - 2.0 * s.zeta * std::numbers::ln2) * std::pow(std::sin(theta), 2.0 * s.zeta);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> radial_eigenvalues_on_grid(const model::PotentialSpec& spec, double mu, double ell_eff,
                                               const model::UnitSystem& u, const RadialGrid& grid, int k) {
  const RadialCoefficients rc = radial_coefficients(spec, mu, ell_eff, u);
  const Eigenpairs ep = lowest_eigenpairs(radial_matrix(rc, grid), k, false);
  std::vector<double> out;
  for (double kappa : ep.values) out.push_back(rc.c + kappa / rc.k_factor);
  return out;
}

std::vector<EigenResult> solve_radial(const model::PotentialSpec& spec, double mu, double ell_eff,
                                      const model::UnitSystem& u, int k, const RadialSolveOptions& options) {
  const RadialCoefficients rc = radial_coefficients(spec, mu, ell_eff, u);
  if (k < 1) throw ValidationError("solve_radial: k must be positive");
  const double nu = -0.5 + std::sqrt(rc.centrifugal + 0.25);
  const double r_char = 2.0 * (nu + k) * (nu + k) / rc.coulomb;

  RadialGrid grid;
  grid.spacing = options.spacing;
  grid.r_min = options.r_min;
  if (grid.spacing == Spacing::log && !(grid.r_min > 0.0)) grid.r_min = 1e-4 * r_char;
  grid.r_max = options.r_max.value_or(grid.r_min + 4.0 * r_char);

  if (!options.r_max) {
    bool settled = false;
    for (int attempt = 0; attempt < 60 && !settled; ++attempt) {
      grid.points = 2000;
      const Tridiagonal t = radial_matrix(rc, grid);
      const Eigenpairs ep = lowest_eigenpairs(t, k, true);
      settled = std::all_of(ep.vectors.begin(), ep.vectors.end(),
                            [&](const std::vector<double>& y) { return tail_is_small(to_samples(t, y)); });
      if (!settled) grid.r_max = grid.r_min + 1.5 * (grid.r_max - grid.r_min);
    }
    if (!settled) throw ConvergenceError("solve_radial: eigenvector tail does not decay inside the domain");
  }

  auto solve = [&](int points) {
    RadialGrid g = grid;
    g.points = points;
    return lowest_eigenpairs(radial_matrix(rc, g), k, false).values;
  };
  const Extrapolated ex = richardson(solve, k, options.base_points, options.max_points, options.tolerance, 1e-300);

  grid.points = ex.finest;
  const Tridiagonal t = radial_matrix(rc, grid);
  const Eigenpairs ep = lowest_eigenpairs(t, k, true);
  std::vector<EigenResult> out;
  for (int j = 0; j < k; ++j) {
    EigenResult r;
    r.eigenvalue = rc.c + ex.values[j] / rc.k_factor;
    r.extrapolation_error = ex.errors[j] / rc.k_factor;
    r.abscissae = t.abscissae;
    r.eigenvector = to_samples(t, ep.vectors[j]);
    r.residual_norm = ep.residuals[j];
    r.grid = grid;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> angular_eigenvalues_on_grid(double eta, int m, int points, int k) {
  if (eta < 0.0) throw ValidationError("eta must be non-negative");
  return lowest_eigenpairs(angular_matrix(eta, m, points), k, false).values;
}

std::vector<EigenResult> solve_angular(double eta, int m, int k, const AngularSolveOptions& options) {
  if (eta < 0.0) throw ValidationError("eta must be non-negative");
  if (k < 1) throw ValidationError("solve_angular: k must be positive");
  auto solve = [&](int points) { return angular_eigenvalues_on_grid(eta, m, points, k); };
  const Extrapolated ex = richardson(solve, k, options.base_points, options.max_points, options.tolerance, 1.0);
  const Tridiagonal t = angular_matrix(eta, m, ex.finest);
  const Eigenpairs ep = lowest_eigenpairs(t, k, true);
  std::vector<EigenResult> out;
  for (int j = 0; j < k; ++j) {
    EigenResult r;
    r.eigenvalue = ex.values[j];
    r.extrapolation_error = ex.errors[j];
    r.abscissae = t.abscissae;
    r.eigenvector = to_samples(t, ep.vectors[j]);
    r.residual_norm = ep.residuals[j];
    r.grid = RadialGrid{0.0, kPi, ex.finest, Spacing::uniform};
    out.push_back(std::move(r));
  }
  return out;
}

double recovered_ell(double lambda) { return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * lambda)); }

// ---------------------------------------------------------------------------

NormalizationResult normalization_integral(const spectrum::QuantumState& s) {
  const spectrum::RadialExtent ext = spectrum::radial_extent(s);
  const int radial_levels = ext.lo == 0.0 ? 12 : 0;
  const Converged rad = converge(
      [&](double r) {
        const double R = spectrum::radial_wavefunction(s, r);
        return R * R * r * r;
      },
      ext.lo, ext.hi, radial_levels, 0.0);
  const Converged ang = converge(
      [&](double th) {
        const double T = spectrum::angular_wavefunction(s, th);
        return 2.0 * kPi * T * T * std::sin(th);
      },
      0.0, kPi, 12, 0.0);
  NormalizationResult out;
  out.radial = rad.value;
  out.angular = ang.value;
  out.value = rad.value * ang.value;
  out.drift = std::max(rad.drift, ang.drift);
  return out;
}

double check_normalization(const spectrum::QuantumState& state) { return normalization_integral(state).value; }

DerivativeCheck check_density_derivatives(const spectrum::QuantumState& s) {
  const spectrum::RadialExtent ext = spectrum::radial_extent(s);
  const double width = std::sqrt(s.gamma + 1.0) / s.varsigma;
  std::vector<double> radii;
  for (double k : {-1.5, -0.5, 0.5, 1.5}) {
    const double r = ext.peak + k * width;
    if (r > 2e-4 * width && r > ext.lo && r < ext.hi) radii.push_back(r);
  }
  if (radii.empty()) radii.push_back(ext.peak);
  const double thetas[] = {0.35, 1.1, 1.9, 2.6};

  const double hr = 1e-3 * width;
  const double ht = 1e-3;
  std::vector<double> an_r, fd_r, an_t, fd_t;
  double rho_max = 0.0;
  for (double r : radii) {
    for (double th : thetas) {
      rho_max = std::max(rho_max, spectrum::probability_density(s, r, th));
      an_r.push_back(spectrum::density_dr(s, r, th));
      fd_r.push_back(central_difference([&](double x) { return spectrum::probability_density(s, x, th); }, r, hr));
      an_t.push_back(spectrum::density_dtheta(s, r, th));
      fd_t.push_back(central_difference([&](double x) { return spectrum::probability_density(s, r, x); }, th, ht));
    }
  }
  auto residual = [&](const std::vector<double>& an, const std::vector<double>& fd, double fallback) {
    double scale = 0.0;
    for (double v : an) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = fallback;
    double worst = 0.0;
    for (std::size_t i = 0; i < an.size(); ++i) worst = std::max(worst, std::abs(an[i] - fd[i]) / scale);
    return worst;
  };
  DerivativeCheck out;
  out.residual_dr = residual(an_r, fd_r, rho_max / width);
  out.residual_dtheta = residual(an_t, fd_t, rho_max);
  out.samples = static_cast<int>(an_r.size());
  return out;
}

fisher::FisherReport fisher_quadrature(const spectrum::QuantumState& s) {
  const DerivativeCheck dc = check_density_derivatives(s);
  const double residual = std::max(dc.residual_dr, dc.residual_dtheta);
  if (!(residual <= 1e-6))
    throw ConvergenceError("density derivative cross-check failed (residual " + std::to_string(residual) + ")");

  const spectrum::RadialExtent ext = spectrum::radial_extent(s);
  const int rl = ext.lo == 0.0 ? 12 : 0;
  const int n = s.qn.n;
  const double g = s.gamma;
  const double vs = s.varsigma;
  const double alpha = 2.0 * g + 1.0;
  const double vs2 = vs * vs;
  double drift = 0.0;

  auto lag = [&](double r) { return specfun::laguerre_assoc(n, alpha, 2.0 * vs * r); };
  auto lag_lower = [&](double r) { return n > 0 ? specfun::laguerre_assoc(n - 1, alpha + 1.0, 2.0 * vs * r) : 0.0; };
  auto weight = [&](double r) {
    const double env = radial_envelope(s, r);
    return env * env * r * r;
  };
  auto radial = [&](auto&& f) {
    const Converged c = converge(f, ext.lo, ext.hi, rl, vs2);
    drift = std::max(drift, c.drift);
    return c.value;
  };

  fisher::FisherReport out;
  out.mode = fisher::Mode::quadrature;
  out.i_r_parts[0] = radial([&](double r) { return 16.0 * vs * (vs - g / r) * lag(r) * lag_lower(r) * weight(r); });
  out.i_r_parts[1] = radial([&](double r) {
    const double L = lag(r);
    return 4.0 * g * g * L * L * weight(r) / (r * r);
  });
  out.i_r_parts[2] = radial([&](double r) {
    const double L = lag(r);
    return -8.0 * g * vs * L * L * weight(r) / r;
  });
  out.i_r_parts[3] = radial([&](double r) {
    const double L = lag(r);
    return 4.0 * vs2 * L * L * weight(r);
  });
  out.i_r_parts[4] = radial([&](double r) {
    const double Lm = lag_lower(r);
    return 16.0 * vs2 * Lm * Lm * weight(r);
  });
  out.i_r = radial([&](double r) {
    const double dR = spectrum::radial_wavefunction_derivative(s, r);
    return 4.0 * dR * dR * r * r;
  });

  // int R^2 dr: the 1/r^2 of the polar gradient cancels the volume r^2.
  const double inv_r2 = radial([&](double r) {
    const double R = spectrum::radial_wavefunction(s, r);
    return R * R;
  });

  const double z = s.zeta;
  const int nt = s.qn.n_tilde;
  const double lambda = 2.0 * z + 0.5;
  const double A = 2.0 * z + nt;
  const double B = 4.0 * z + nt;
  auto angular = [&](auto&& f) {
    const Converged c = converge(f, 0.0, kPi, 12, 1.0);
    drift = std::max(drift, c.drift);
    return 2.0 * kPi * c.value;
  };
  const double theta_total = angular([&](double th) {
    const double dT = spectrum::angular_wavefunction_derivative(s, th);
    return dT * dT * std::sin(th);
  });
  out.i_theta = 4.0 * inv_r2 * theta_total;

  out.theta_parts_defined = z > 0.0;
  if (out.theta_parts_defined) {
    auto piece = [&](int which) {
      return angular([&](double th) {
        const double sn = std::sin(th);
        const double x = std::cos(th);
        const double P = angular_envelope(s, th);
        const double C = specfun::gegenbauer(nt, lambda, x);
        const double Cp = nt > 0 ? specfun::gegenbauer(nt - 1, lambda, x) : 0.0;
        double term = 0.0;
        if (which == 0) term = A * A * x * x * C * C;
        if (which == 1) term = B * B * Cp * Cp;
        if (which == 2) term = -2.0 * A * B * x * C * Cp;
        return P * P * term / sn;  // (.../sin^2) * sin
      });
    };
    for (int j = 0; j < 3; ++j) out.i_theta_parts[j] = 4.0 * inv_r2 * piece(j);
  } else {
    out.i_theta_parts.fill(std::numeric_limits<double>::quiet_NaN());
  }

  out.total = out.i_theta + out.i_r;
  out.derivative_residual = residual;
  out.quadrature_drift = drift;
  return out;
}

}  // namespace mie_ring::oracle
