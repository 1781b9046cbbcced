#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "onofri/fields.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

/// Deterministic direction set on the closed upper hemisphere (t >= 0).
/// n = 2: uniform angles; n = 3: Fibonacci spiral; n >= 4: seeded normals.
inline std::vector<Vec> hemisphere_directions(int n, int count, std::uint64_t seed = 42) {
  require_dimension(n);
  std::vector<Vec> dirs;
  dirs.reserve(count);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double phi = -0.5 * kPi + kPi * (i + 0.5) / count;
      Vec d(2);
      d[0] = std::sin(phi);
      d[1] = std::cos(phi);
      dirs.push_back(d);
    }
    return dirs;
  }
  if (n == 3) {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int i = 0; i < count; ++i) {
      const double z = (i + 0.5) / count;  // cos of polar angle, upper sheet
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double psi = 2.0 * kPi * std::fmod(i * golden, 1.0);
      Vec d(3);
      d[0] = s * std::cos(psi);
      d[1] = s * std::sin(psi);
      d[2] = z;
      dirs.push_back(d);
    }
    return dirs;
  }
  Rng rng(seed);
  while (static_cast<int>(dirs.size()) < count) {
    Vec d(n);
    for (int i = 0; i < n; ++i) d[i] = rng.normal();
    const double r = norm(d);
    if (r < 1e-8) continue;
    d *= 1.0 / r;
    d[n - 1] = std::fabs(d[n - 1]);
    dirs.push_back(d);
  }
  return dirs;
}

/// Sharp profile: per radius, sup over directions of
///   |u(x) + n log|x| - log(n^{n-1} lambda)|;  tends to 0 at infinity.
struct ProfileReport {
  std::vector<double> radii;
  std::vector<double> sup_deviation;
  std::vector<double> grad_decay;
};

inline ProfileReport sharp_profile(int n, const LiouvilleSolution& prm,
                                   const std::vector<double>& radii, int n_directions = 200,
                                   std::uint64_t seed = 42) {
  ScalarField u = liouville_solution_u(n, prm);
  const double limit_const = (n - 1.0) * std::log(static_cast<double>(n)) + std::log(prm.lambda);
  const auto dirs = hemisphere_directions(n, n_directions, seed);
  ProfileReport rep;
  for (double R : radii) {
    double sup = 0.0;
    for (const auto& d : dirs) {
      const Vec x = R * d;
      sup = std::max(sup, std::fabs(u.value(x) + n * std::log(R) - limit_const));
    }
    rep.radii.push_back(R);
    rep.sup_deviation.push_back(sup);
  }
  return rep;
}

/// Gradient profile: per radius, sup over directions of |x| |grad(u + n log|x|)|.
inline ProfileReport gradient_decay(int n, const LiouvilleSolution& prm,
                                    const std::vector<double>& radii, int n_directions = 200,
                                    std::uint64_t seed = 42) {
  ScalarField u = liouville_solution_u(n, prm);
  const auto dirs = hemisphere_directions(n, n_directions, seed);
  ProfileReport rep;
  for (double R : radii) {
    double sup = 0.0;
    for (const auto& d : dirs) {
      const Vec x = R * d;
      const Vec g = u.grad(x) + (static_cast<double>(n) / (R * R)) * x;
      sup = std::max(sup, R * norm(g));
    }
    rep.radii.push_back(R);
    rep.grad_decay.push_back(sup);
  }
  return rep;
}

/// Empirical sup of u + (n-1) log|x| over a sample set: the minimal C with
/// u <= C - (n-1) log|x| there. Finite, since the sharp decay exponent is n.
inline double log_upper_bound(int n, const LiouvilleSolution& prm,
                              const std::vector<HalfSpacePoint>& samples) {
  ScalarField u = liouville_solution_u(n, prm);
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& p : samples) {
    const Vec x = p.to_vec();
    const double r = norm(x);
    if (r == 0.0) throw std::invalid_argument("log_upper_bound: samples must exclude the origin");
    sup = std::max(sup, u.value(x) + (n - 1.0) * std::log(r));
  }
  return sup;
}

/// Closed-form maximum of the classified solution, attained at (x0', 0):
/// sup u = log(n^{n-1} lambda^{1-n}).
inline double liouville_sup(int n, const LiouvilleSolution& prm) {
  return (n - 1.0) * (std::log(static_cast<double>(n)) - std::log(prm.lambda));
}

/// Sphere Harnack ratio for u_hat = U0 - u: max/min over each sphere
/// {|x| = kappa} in the closed half-space. NaN marks spheres where
/// min u_hat <= 0 (ratio undefined there).
inline std::vector<double> sphere_harnack_ratio(int n, const LiouvilleSolution& prm, double U0,
                                                const std::vector<double>& kappas,
                                                int n_directions = 200, std::uint64_t seed = 42) {
  if (U0 < liouville_sup(n, prm))
    throw std::invalid_argument("sphere_harnack_ratio: U0 must dominate sup u");
  ScalarField u = liouville_solution_u(n, prm);
  const auto dirs = hemisphere_directions(n, n_directions, seed);
  std::vector<double> ratios;
  for (double kappa : kappas) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& d : dirs) {
      const double v = U0 - u.value(kappa * d);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ratios.push_back(lo > 0.0 ? hi / lo : std::numeric_limits<double>::quiet_NaN());
  }
  return ratios;
}

// --------------------------------------------------------------------------
// Radial barrier of the decay analysis
// --------------------------------------------------------------------------

/// Parameters of the supersolution u_bar(x) = C1^{1/(n-1)} phi(|x| + t/|x|^delta).
/// The admissible window couples them:
///   0 < (gamma-n)/2 < delta < min{1, 1/2}   (decay exponent beta = n),
///   a_eps >= 2 R1^{(n-gamma)/2}.
struct SupersolutionParams {
  int n = 3;
  double gamma = 3.2;
  double delta = 0.45;
  double R1 = 1e3;
  double a_eps = 0.0;
  double b = 0.0;
  double C1 = 1.0;
};

inline void validate_supersolution(const SupersolutionParams& sp) {
  require_dimension(sp.n);
  const double beta = sp.n;  // pinned by the mass identity
  if (!(sp.gamma > sp.n)) throw std::invalid_argument("supersolution: gamma must exceed n");
  const double lo = 0.5 * (sp.gamma - sp.n);
  const double hi = std::min(1.0, 0.5 * (beta - (sp.n - 1)));
  if (!(lo < sp.delta && sp.delta < hi))
    throw std::invalid_argument("supersolution: delta outside ((gamma-n)/2, min{1,1/2})");
  if (!(sp.R1 > 1.0)) throw std::invalid_argument("supersolution: R1 must exceed 1");
  if (!(sp.C1 > 0.0)) throw std::invalid_argument("supersolution: C1 must be positive");
  if (!(sp.a_eps >= 2.0 * std::pow(sp.R1, 0.5 * (sp.n - sp.gamma))))
    throw std::invalid_argument("supersolution: a_eps below 2 R1^{(n-gamma)/2}");
}

/// Picks C1 so the lower bound (n-1)^{n-1}(gamma-n)/(2 C1) lands exactly on
/// the floor 2 R1^{(n-gamma)/2}, then derives a_eps from eps. Infeasible
/// combinations throw rather than guessing a different ordering.
inline SupersolutionParams solve_supersolution(int n, double gamma, double delta, double R1,
                                               double eps = 0.5, double b = 0.0) {
  SupersolutionParams sp;
  sp.n = n;
  sp.gamma = gamma;
  sp.delta = delta;
  sp.R1 = R1;
  sp.b = b;
  const double beta = n;
  if (!(eps > 0.0) || !(eps < beta - (n - 1)))
    throw std::invalid_argument("solve_supersolution: eps outside (0, beta-(n-1))");
  const double floor = 2.0 * std::pow(R1, 0.5 * (n - gamma));
  sp.C1 = std::pow(n - 1.0, n - 1.0) * (gamma - n) / (2.0 * floor);
  sp.a_eps = std::pow(beta - eps, n - 1.0) * (gamma - n) / (2.0 * sp.C1);
  validate_supersolution(sp);
  return sp;
}

/// Calibrated default window: gamma = n + 0.2, delta = 0.45, R1 = 1e4. The
/// interior sign margin scales like R1^{delta + (n-gamma)/2}; narrower
/// windows or smaller R1 leave the sign indefinite at desk radii and the
/// checks then report the failure rather than pass.
inline SupersolutionParams default_supersolution(int n) {
  return solve_supersolution(n, n + 0.2, 0.45, 1e4, 0.5, 1.0);
}

/// Deterministic log-uniform sample cloud over the closed half-space shell
/// {R1 <= |x| <= decades*R1}, with a boundary subset at t = 0 exactly.
inline std::vector<HalfSpacePoint> shell_samples(int n, double R1, int count,
                                                 std::uint64_t seed = 42,
                                                 double decades = 100.0) {
  Rng rng(seed);
  const auto dirs = hemisphere_directions(n, 64, seed);
  std::vector<HalfSpacePoint> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    const double R = R1 * std::exp(rng.uniform(0.0, std::log(decades)));
    Vec x = R * dirs[rng.next_u64() % dirs.size()];
    if (rng.uniform() < 0.3) x[n - 1] = 0.0;
    pts.push_back(HalfSpacePoint::from_vec(x));
  }
  return pts;
}

/// phi'(r) = -((gamma-n)/2)^{1/(1-n)} (a_eps - r^{(n-gamma)/2})^{1/(n-1)} / r,
/// nonincreasing barrier slope; the integrand of phi.
inline double phi_prime(double r, const SupersolutionParams& sp) {
  if (!(r >= sp.R1)) throw std::invalid_argument("phi_prime: r must be >= R1");
  const double base = sp.a_eps - std::pow(r, 0.5 * (sp.n - sp.gamma));
  if (!(base >= 0.0)) throw std::invalid_argument("phi_prime: parameter constraint violated");
  return -std::pow(0.5 * (sp.gamma - sp.n), 1.0 / (1.0 - sp.n)) *
         std::pow(base, 1.0 / (sp.n - 1.0)) / r;
}

/// phi(r) = b - integral of -phi' from R1 to r, by adaptive 1-D quadrature.
inline double phi(double r, const SupersolutionParams& sp, const QuadratureSpec& spec = {}) {
  if (!(r >= sp.R1)) throw std::invalid_argument("phi: r must be >= R1");
  if (r == sp.R1) return sp.b;
  auto f = [&sp](double s) { return -phi_prime(s, sp); };
  QuadratureResult q = quad_detail::integrate_interval_1d(f, sp.R1, r, spec);
  return sp.b - q.value;
}

/// Residual of the barrier ODE
///   [(-phi')^{n-1}]' + (n-1)(-phi')^{n-1}/r = r^{-(n+gamma)/2},
/// with the first derivative taken by central differences of the closed form.
inline double phi_ode_residual(double r, const SupersolutionParams& sp, double h = 1e-5) {
  const double fp = std::pow(-phi_prime(r + h, sp), sp.n - 1.0);
  const double fm = std::pow(-phi_prime(r - h, sp), sp.n - 1.0);
  const double d = (fp - fm) / (2.0 * h);
  const double f0 = std::pow(-phi_prime(r, sp), sp.n - 1.0);
  return d + (sp.n - 1.0) * f0 / r - std::pow(r, -0.5 * (sp.n + sp.gamma));
}

/// Two-sided bound on -phi': the exact value sits between the depleted and
/// full-amplitude envelopes.
inline bool phi_sandwich_holds(double r, const SupersolutionParams& sp, double slack = 1e-12) {
  const double pref = std::pow(0.5 * (sp.gamma - sp.n), 1.0 / (1.0 - sp.n));
  const double lo = pref * std::pow(sp.a_eps - std::pow(r, 0.5 * (sp.n - sp.gamma)),
                                    1.0 / (sp.n - 1.0)) / r;
  const double hi = pref * std::pow(sp.a_eps, 1.0 / (sp.n - 1.0)) / r;
  const double mid = -phi_prime(r, sp);
  return lo <= mid * (1.0 + slack) && mid <= hi * (1.0 + slack);
}

// --------------------------------------------------------------------------
// Supersolution sign checks
// --------------------------------------------------------------------------

namespace asy_detail {

/// Geometry of the composite radius rho(x) = |x| + t/|x|^delta:
/// X = grad rho, A = |X|^2 - 1, and grad A, all in closed form.
struct BarrierGeometry {
  double rho = 0.0;
  double A = 0.0;
  Vec X;
  Vec gradA;
  double divX = 0.0;
};

inline BarrierGeometry barrier_geometry(const Vec& x, double delta) {
  const int n = x.size();
  const double r = norm(x);
  const double t = x[n - 1];
  BarrierGeometry g;
  g.rho = r + t * std::pow(r, -delta);
  const double rd1 = std::pow(r, -delta - 1.0);
  const double common = 1.0 - delta * t * rd1;
  g.X = Vec(n);
  for (int i = 0; i < n - 1; ++i) g.X[i] = x[i] / r * common;
  g.X[n - 1] = t / r * common + std::pow(r, -delta);
  // A = 2(1-delta) t r^{-(delta+1)} + (delta^2-2delta) t^2 r^{-(2delta+2)} + r^{-2delta}
  g.A = 2.0 * (1.0 - delta) * t * std::pow(r, -(delta + 1.0)) +
        (delta * delta - 2.0 * delta) * t * t * std::pow(r, -(2.0 * delta + 2.0)) +
        std::pow(r, -2.0 * delta);
  g.divX = (n - 1.0) / r - delta * (n - delta) * t * std::pow(r, -(delta + 2.0));
  // gradient of A: tangential part proportional to x', plus a t-component
  const double bracket = (delta * delta - 1.0) * t / r -
                         (delta + 1.0) * (delta * delta - 2.0 * delta) * t * t *
                             std::pow(r, -(delta + 2.0)) -
                         delta * std::pow(r, -delta);
  const double cr = 2.0 * std::pow(r, -(delta + 2.0)) * bracket;
  g.gradA = Vec(n);
  for (int i = 0; i < n - 1; ++i) g.gradA[i] = cr * x[i];
  g.gradA[n - 1] = cr * x[n - 1] +
                   2.0 * std::pow(r, -(delta + 1.0)) *
                       (1.0 - delta + (delta * delta - 2.0 * delta) * t *
                                          std::pow(r, -(delta + 1.0)));
  return g;
}

}  // namespace asy_detail

/// Interior operator value -Delta_n u_bar assembled from the exact three-term
/// decomposition (positivity is the supersolution property), and the
/// boundary flux expression checked against -C0 |x'|^{-(n-1+beta)/2}.
struct SupersolutionCheckReport {
  bool boundary_ok = true;
  bool interior_ok = true;
  double worst_boundary_margin = std::numeric_limits<double>::infinity();
  double worst_interior_value = std::numeric_limits<double>::infinity();
  double min_leading_ratio = std::numeric_limits<double>::infinity();  // leading/|correction|
  Vec worst_boundary_point;
  Vec worst_interior_point;
  double c0_capacity = 0.0;  // largest C0 the boundary chain supports at R1
};

/// -Delta_n u_bar at x, exact closed form.
inline double supersolution_interior_operator(const SupersolutionParams& sp, const Vec& x,
                                              double* leading = nullptr,
                                              double* correction = nullptr) {
  const auto g = asy_detail::barrier_geometry(x, sp.delta);
  if (!(g.rho >= sp.R1))
    throw std::invalid_argument("supersolution_interior_operator: rho below R1");
  const double mphi = -phi_prime(g.rho, sp);
  const double fn1 = std::pow(mphi, sp.n - 1.0);
  // ODE supplies the derivative of (-phi')^{n-1}
  const double dfn1 = std::pow(g.rho, -0.5 * (sp.n + sp.gamma)) - (sp.n - 1.0) * fn1 / g.rho;
  const double onepA = 1.0 + g.A;
  const double term1 = dfn1 * std::pow(onepA, 0.5 * sp.n);
  const double term2 = 0.5 * (sp.n - 2.0) * fn1 * std::pow(onepA, 0.5 * sp.n - 2.0) *
                       dot(g.gradA, g.X);
  const double term3 = fn1 * std::pow(onepA, 0.5 * (sp.n - 2.0)) * g.divX;
  if (leading) *leading = std::pow(g.rho, -0.5 * (sp.n + sp.gamma)) * std::pow(onepA, 0.5 * sp.n);
  if (correction) *correction = (term1 + term2 + term3) - *leading;
  return sp.C1 * (term1 + term2 + term3);
}

/// Boundary flux expression at t = 0:
///   C1 (-phi')^{n-2} phi'(|x'|) (1 + |x'|^{-2 delta})^{(n-2)/2} |x'|^{-delta}.
inline double supersolution_boundary_expression(const SupersolutionParams& sp, double r) {
  const double mphi = -phi_prime(r, sp);
  return -sp.C1 * std::pow(mphi, sp.n - 1.0) *
         std::pow(1.0 + std::pow(r, -2.0 * sp.delta), 0.5 * (sp.n - 2.0)) *
         std::pow(r, -sp.delta);
}

/// Largest C0 the boundary-chain display supports at radius R1.
inline double supersolution_c0_capacity(const SupersolutionParams& sp) {
  const double beta = sp.n;
  return 2.0 * sp.C1 / (sp.gamma - sp.n) *
         (sp.a_eps - std::pow(sp.R1, 0.5 * (sp.n - sp.gamma))) *
         std::pow(sp.R1, 0.5 * (beta - (sp.n - 1.0)) - sp.delta);
}

inline SupersolutionCheckReport supersolution_checks(const SupersolutionParams& sp, double C0,
                                                     const std::vector<HalfSpacePoint>& samples) {
  validate_supersolution(sp);
  if (!(C0 > 0.0)) throw std::invalid_argument("supersolution_checks: C0 must be positive");
  const double beta = sp.n;
  SupersolutionCheckReport rep;
  rep.c0_capacity = supersolution_c0_capacity(sp);
  for (const auto& p : samples) {
    const Vec x = p.to_vec();
    const double r = norm(x);
    if (r < sp.R1) continue;
    if (p.t == 0.0) {
      const double expr = supersolution_boundary_expression(sp, r);
      const double bound = -C0 * std::pow(r, -0.5 * (sp.n - 1.0 + beta));
      const double margin = bound - expr;  // need expr <= bound
      if (margin < rep.worst_boundary_margin) {
        rep.worst_boundary_margin = margin;
        rep.worst_boundary_point = x;
      }
      if (expr > bound) rep.boundary_ok = false;
    } else {
      double leading = 0.0, corr = 0.0;
      const double v = supersolution_interior_operator(sp, x, &leading, &corr);
      if (v < rep.worst_interior_value) {
        rep.worst_interior_value = v;
        rep.worst_interior_point = x;
      }
      if (!(v > 0.0)) rep.interior_ok = false;
      if (corr != 0.0)
        rep.min_leading_ratio = std::min(rep.min_leading_ratio, leading / std::fabs(corr));
    }
  }
  return rep;
}

}  // namespace onofri
