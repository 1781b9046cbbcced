#pragma once

#include <cmath>
#include <vector>

#include "onofri/fields.hpp"
#include "onofri/functionals.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

/// Summary of pointwise residuals over a sample set.
struct ResidualReport {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  long n_samples = 0;
  HalfSpacePoint worst_point;

  void accumulate(double r, const HalfSpacePoint& x) {
    const double a = std::fabs(r);
    if (a >= max_abs) {
      max_abs = a;
      worst_point = x;
    }
    mean_abs = (mean_abs * n_samples + a) / (n_samples + 1);
    ++n_samples;
  }
};

/// Interior equation residual div a(grad u) from the closed-form flux
/// Jacobian; vanishes identically for the classified family.
inline ResidualReport interior_residual_closed(int n, const LiouvilleSolution& prm,
                                               const std::vector<HalfSpacePoint>& points) {
  ResidualReport rep;
  for (const auto& x : points) {
    rep.accumulate(liouville_flux_jacobian(n, prm, x.to_vec()).trace(), x);
  }
  return rep;
}

/// Second-opinion residual: central finite differences of the closed-form
/// flux components. Carries the usual O(h^2) discretization error.
inline ResidualReport interior_residual_fd(int n, const LiouvilleSolution& prm,
                                           const std::vector<HalfSpacePoint>& points,
                                           double h) {
  ResidualReport rep;
  for (const auto& x : points) {
    const Vec xv = x.to_vec();
    double div = 0.0;
    for (int i = 0; i < n; ++i) {
      Vec xp = xv, xm = xv;
      xp[i] += h;
      xm[i] -= h;
      div += (liouville_flux(n, prm, xp)[i] - liouville_flux(n, prm, xm)[i]) / (2.0 * h);
    }
    rep.accumulate(div, x);
  }
  return rep;
}

/// Boundary residual |grad u|^{n-2} d_t u + e^u at t = 0, from closed forms.
inline double neumann_residual_at(int n, const LiouvilleSolution& prm, const Vec& x_prime) {
  const HalfSpacePoint x = HalfSpacePoint::boundary(x_prime);
  const Vec flux = liouville_flux(n, prm, x.to_vec());
  const ScalarField u = liouville_solution_u(n, prm);
  return flux[n - 1] + std::exp(u.value(x.to_vec()));
}

inline ResidualReport neumann_residual(int n, const LiouvilleSolution& prm,
                                       const std::vector<Vec>& boundary_points) {
  ResidualReport rep;
  for (const auto& xp : boundary_points)
    rep.accumulate(neumann_residual_at(n, prm, xp), HalfSpacePoint::boundary(xp));
  return rep;
}

/// Euler-Lagrange residuals in the w-picture. The interior operator equals
/// the u-picture one through grad u = X + grad w, which is exact in closed
/// form; the boundary flux is checked against the L-scaled right side
/// (L = e^{-C~}), which reduces to e^w mu_n at the matching normalization.
inline std::pair<ResidualReport, ResidualReport> el_residual_w(
    int n, const OnofriTraceExtremal& prm, const std::vector<HalfSpacePoint>& interior_points,
    const std::vector<Vec>& boundary_points) {
  LiouvilleSolution lprm{prm.lambda, prm.x0_prime};
  ResidualReport interior = interior_residual_closed(n, lprm, interior_points);

  ScalarField w = onofri_extremal_w(n, prm);
  const double scale = 0.5 * std::pow(static_cast<double>(n), n - 1) * sphere_area(n) *
                       std::exp(-prm.c_tilde);
  ResidualReport boundary;
  for (const auto& xp : boundary_points) {
    const HalfSpacePoint x = HalfSpacePoint::boundary(xp);
    const Vec xv = x.to_vec();
    const Vec grad_u = drift_field(n, x) + w.grad(xv);
    const Vec flux = nlap_flux(n, grad_u);
    // outward normal is -e_n: flux . n = -flux[n-1]
    const double lhs = -flux[n - 1];
    const double rhs = scale * std::exp(w.value(xv)) * boundary_weight_mu(n, xp);
    boundary.accumulate(lhs - rhs, x);
  }
  return {interior, boundary};
}

// --------------------------------------------------------------------------
// Integral identities
// --------------------------------------------------------------------------

/// Pohozaev balance over the half-ball B_R^+ for the classified solution
/// (exponent n, no interior source). The three boundary contributions must
/// cancel for every center y:
///   0 = int_{dB_R^+} |grad u|^{n-2} <grad u, n> <x-y, grad u>
///     + int_{Sigma_R} e^u <x-y, grad u> dx'
///     - (1/n) int_{d(B_R^+)} |grad u|^n <x-y, n>.
struct PohozaevReport {
  double lhs = 0.0;  // identically zero here
  double rhs = 0.0;  // assembled surface terms
  double gap = 0.0;
  double quad_error = 0.0;
  long n_evals = 0;
  bool converged = false;
};

inline PohozaevReport pohozaev_check(int n, const LiouvilleSolution& prm, double R,
                                     const Vec& y, const QuadratureSpec& spec) {
  require_dimension(n);
  if (y.size() != n) throw std::invalid_argument("pohozaev_check: y must have dimension n");
  ScalarField u = liouville_solution_u(n, prm);

  // Hemisphere terms: flux-weighted radial pairing and the |grad u|^n part.
  auto f_hemi = [&](const Vec& x) {
    const Vec g = u.grad(x);
    const Vec nrm = (1.0 / norm(x)) * x;
    const Vec xy = x - y;
    const double gn = norm(g);
    const double flux_term = std::pow(gn, n - 2.0) * dot(g, nrm) * dot(xy, g);
    const double pressure = std::pow(gn, static_cast<double>(n)) * dot(xy, nrm) / n;
    return flux_term - pressure;
  };
  QuadratureResult hemi = integrate_hemisphere(n, f_hemi, R, spec);

  // Flat-disk terms: boundary source pairing plus the |grad u|^n part with
  // outward normal -e_n, so <x-y, n> = y_n there.
  auto f_disk = [&](const Vec& xp) {
    const Vec x = func_detail::embed_boundary(xp);
    const Vec g = u.grad(x);
    const Vec xy = x - y;
    double v = std::exp(u.value(x)) * dot(xy, g);
    v -= std::pow(norm(g), static_cast<double>(n)) * y[n - 1] / n;
    return v;
  };
  QuadratureResult disk = integrate_boundary_disk(n, f_disk, R, spec);

  PohozaevReport rep;
  rep.rhs = hemi.value + disk.value;
  rep.gap = rep.rhs - rep.lhs;
  rep.quad_error = hemi.error_estimate + disk.error_estimate;
  rep.n_evals = hemi.n_evals + disk.n_evals;
  rep.converged = hemi.converged && disk.converged;
  return rep;
}

/// Divergence-theorem flux balance at radius R:
///   int_{Sigma_R} e^u dx' = int_{dB_R^+} |grad u|^{n-2} <grad u, -n>.
/// Exact at every R; both sides tend to n^n omega_n / 2.
struct FluxIdentityReport {
  double boundary_mass = 0.0;
  double hemisphere_flux = 0.0;
  double quad_error = 0.0;
  long n_evals = 0;
  bool converged = false;

  double gap() const { return boundary_mass - hemisphere_flux; }
};

inline FluxIdentityReport flux_identity(int n, const LiouvilleSolution& prm, double R,
                                        const QuadratureSpec& spec) {
  ScalarField u = liouville_solution_u(n, prm);
  auto f_mass = [&](const Vec& xp) {
    return std::exp(u.value(func_detail::embed_boundary(xp)));
  };
  QuadratureResult mass = integrate_boundary_disk(n, f_mass, R, spec);

  auto f_flux = [&](const Vec& x) {
    const Vec g = u.grad(x);
    const Vec nrm = (1.0 / norm(x)) * x;
    return -std::pow(norm(g), n - 2.0) * dot(g, nrm);
  };
  QuadratureResult flux = integrate_hemisphere(n, f_flux, R, spec);

  FluxIdentityReport rep;
  rep.boundary_mass = mass.value;
  rep.hemisphere_flux = flux.value;
  rep.quad_error = mass.error_estimate + flux.error_estimate;
  rep.n_evals = mass.n_evals + flux.n_evals;
  rep.converged = mass.converged && flux.converged;
  return rep;
}

/// Decay exponent recovered from the total boundary mass:
///   beta = ( 2 m / (n omega_n) )^{1/(n-1)};  equals n for the classified family.
inline double beta_from_mass(double boundary_mass, int n) {
  require_dimension(n);
  if (!(boundary_mass > 0.0))
    throw std::invalid_argument("beta_from_mass: mass must be positive");
  return std::pow(2.0 * boundary_mass / (n * ball_volume(n)), 1.0 / (n - 1.0));
}

/// Reference value n^n omega_n / 2 of the boundary mass.
inline double boundary_mass_reference(int n) {
  return 0.5 * std::pow(static_cast<double>(n), n) * ball_volume(n);
}

// --------------------------------------------------------------------------
// Stress tensor and auxiliary function
// --------------------------------------------------------------------------

/// Scaling check on second-order decay: the shell integrals
///   int_{B_2R^+ \ B_R^+} |grad a(grad u)|^2 e^{gamma u} dx
/// scale like R^{-(gamma+1) n}; the returned ratios (integral * R^{(gamma+1)n})
/// should form a bounded sequence. The multiplicative constant is not pinned.
inline std::vector<double> second_order_scaling_ratio(int n, const LiouvilleSolution& prm,
                                                      double gamma,
                                                      const std::vector<double>& radii,
                                                      const QuadratureSpec& spec) {
  ScalarField u = liouville_solution_u(n, prm);
  std::vector<double> ratios;
  for (double R : radii) {
    auto f = [&](const Vec& x) {
      const Mat J = liouville_flux_jacobian(n, prm, x);
      double frob = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += J(i, j) * J(i, j);
      return frob * std::exp(gamma * u.value(x));
    };
    QuadratureResult q = integrate_half_shell(n, f, R, 2.0 * R, spec);
    ratios.push_back(q.value * std::pow(R, (gamma + 1.0) * n));
  }
  return ratios;
}

/// E_ij = d_j(|grad u|^{n-2} u_i) - (|grad u|^{n-2} u_i u_j - |grad u|^n delta_ij / n).
/// Assembled from the closed-form flux Jacobian; vanishes identically on the
/// classified family.
inline Mat stress_tensor_E(int n, const LiouvilleSolution& prm, const HalfSpacePoint& x) {
  const Vec xv = x.to_vec();
  const Mat J = liouville_flux_jacobian(n, prm, xv);
  ScalarField u = liouville_solution_u(n, prm);
  const Vec g = u.grad(xv);
  const double gn = norm(g);
  const double hn = std::pow(gn, static_cast<double>(n));
  const double fac = std::pow(gn, n - 2.0);
  Mat E(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double alg = fac * g[i] * g[j];
      if (i == j) alg -= hn / n;
      E(i, j) = J(i, j) - alg;
    }
  return E;
}

/// Checks on the auxiliary function v = e^{-u/(n-1)}, which in closed form is
/// v(x) = |x-x0|^{n/(n-1)} / (n lambda^{1/(n-1)}) and satisfies
///   Delta_n v = (n-1)|grad v|^n / v         in the interior,
///   |grad v|^{n-2} d_t v = (n-1)^{1-n}      on the boundary.
struct AuxiliaryVReport {
  ResidualReport interior;
  ResidualReport boundary;
  bool positive = true;
};

inline AuxiliaryVReport auxiliary_v_check(int n, const LiouvilleSolution& prm,
                                          const std::vector<HalfSpacePoint>& interior_points,
                                          const std::vector<Vec>& boundary_points) {
  AuxiliaryVReport rep;
  const Vec x0 = liouville_center(n, prm);
  const double c = 1.0 / (n * std::pow(prm.lambda, 1.0 / (n - 1.0)));
  const double cn1 = std::pow(c * static_cast<double>(n) / (n - 1.0), n - 1.0);
  // a(grad v) = cn1 * (x - x0); its divergence is n*cn1; the boundary flux
  // component is cn1 * (t + lambda)|_{t=0} = cn1 * lambda = (n-1)^{1-n}.
  const double q = static_cast<double>(n) / (n - 1.0);
  for (const auto& x : interior_points) {
    const Vec z = x.to_vec() - x0;
    const double rho = norm(z);
    const double v = c * std::pow(rho, q);
    if (!(v > 0.0)) rep.positive = false;
    const double grad_norm = c * q * std::pow(rho, q - 1.0);
    const double nlap = n * cn1;  // div of cn1*(x-x0)
    const double target = (n - 1.0) * std::pow(grad_norm, static_cast<double>(n)) / v;
    rep.interior.accumulate(nlap - target, x);
  }
  for (const auto& xp : boundary_points) {
    const HalfSpacePoint x = HalfSpacePoint::boundary(xp);
    const Vec z = x.to_vec() - x0;
    const double rho = norm(z);
    const double grad_norm = c * q * std::pow(rho, q - 1.0);
    const double dt_v = c * q * std::pow(rho, q - 2.0) * z[n - 1];
    const double lhs = std::pow(grad_norm, n - 2.0) * dt_v;
    const double rhs = std::pow(n - 1.0, 1.0 - n);
    rep.boundary.accumulate(lhs - rhs, x);
  }
  return rep;
}

}  // namespace onofri
