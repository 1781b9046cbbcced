#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "onofri/core.hpp"
#include "onofri/kernels.hpp"

namespace onofri {

/// Analytic decay metadata used by the tail-bound checks. Fields without
/// declared decay are still integrable numerically, but reports flag the
/// tail as assumed rather than verified.
struct FieldTraits {
  std::optional<double> grad_decay;  // |grad w(x)| = O(|x|^{-grad_decay})
  std::optional<double> log_slope;   // w(x) = -log_slope*log|x| + O(1) at infinity
  bool bounded = false;              // bounded on the closed half-space
  bool bounded_above = false;
  std::optional<std::pair<Vec, Vec>> support;  // effective support box, when compact
};

/// Evaluation contract: value and gradient at a point of R^n (for half-space
/// fields the last coordinate is t >= 0). Closed-form families and user test
/// functions both satisfy it; all downstream quadrature is meshfree.
struct ScalarField {
  int dim = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  FieldTraits traits;

  double operator()(const Vec& x) const { return value(x); }
};

inline ScalarField constant_field(int n, double c) {
  ScalarField f;
  f.dim = n;
  f.value = [c](const Vec&) { return c; };
  f.grad = [n](const Vec&) { return Vec::zero(n); };
  f.traits.bounded = true;
  f.traits.bounded_above = true;
  f.traits.grad_decay = 1e300;
  f.traits.log_slope = 0.0;
  return f;
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.dim != b.dim) throw std::invalid_argument("field sum: dimension mismatch");
  ScalarField f;
  f.dim = a.dim;
  f.value = [a, b](const Vec& x) { return a.value(x) + b.value(x); };
  f.grad = [a, b](const Vec& x) { return a.grad(x) + b.grad(x); };
  f.traits.bounded = a.traits.bounded && b.traits.bounded;
  f.traits.bounded_above = a.traits.bounded_above && b.traits.bounded_above;
  if (a.traits.grad_decay && b.traits.grad_decay)
    f.traits.grad_decay = std::min(*a.traits.grad_decay, *b.traits.grad_decay);
  if (a.traits.log_slope && b.traits.log_slope)
    f.traits.log_slope = *a.traits.log_slope + *b.traits.log_slope;
  return f;
}

inline ScalarField shift_field(const ScalarField& a, double c) {
  ScalarField f = a;
  const auto base = a.value;
  f.value = [base, c](const Vec& x) { return base(x) + c; };
  return f;
}

// --------------------------------------------------------------------------
// Closed-form families
// --------------------------------------------------------------------------

/// Parameters of the trace-inequality extremal family (lambda, x0', C~).
struct OnofriTraceExtremal {
  double lambda = 1.0;
  Vec x0_prime;
  double c_tilde = 0.0;
};

/// Parameters of the classified half-space Liouville solution (lambda, x0').
/// The induced center (x0', -lambda) lies strictly below the boundary.
struct LiouvilleSolution {
  double lambda = 1.0;
  Vec x0_prime;
};

/// Full-space classified solution.
struct FullSpaceLiouville {
  double lambda = 1.0;
  Vec x0;
};

/// Sobolev-trace extremal (p, lambda, x0').
struct SobolevTraceExtremal {
  double p = 2.0;
  double lambda = 1.0;
  Vec x0_prime;
};

namespace detail {
inline void require_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
}
// G1 = |x'|^2 + (1+t)^2 and G2 = |x'-x0'|^2 + (t+lambda)^2 at x = (x',t).
inline double quad_g1(const Vec& x) {
  const int n = x.size();
  double s = (1.0 + x[n - 1]) * (1.0 + x[n - 1]);
  for (int i = 0; i < n - 1; ++i) s += x[i] * x[i];
  return s;
}
inline double quad_g2(const Vec& x, const Vec& x0p, double lambda) {
  const int n = x.size();
  double s = (x[n - 1] + lambda) * (x[n - 1] + lambda);
  for (int i = 0; i < n - 1; ++i) s += (x[i] - x0p[i]) * (x[i] - x0p[i]);
  return s;
}
// G1 - G2 without large-|x| cancellation: 2<x0',x'> - |x0'|^2 + (1-l)(2t+1+l).
inline double quad_g1_minus_g2(const Vec& x, const Vec& x0p, double lambda) {
  const int n = x.size();
  double s = (1.0 - lambda) * (2.0 * x[n - 1] + 1.0 + lambda);
  for (int i = 0; i < n - 1; ++i) s += x0p[i] * (2.0 * x[i] - x0p[i]);
  return s;
}
}  // namespace detail

/// Extremal of the trace inequality:
///   w(x) = log[ (|x'|^2+(1+t)^2)^{n/2} lambda / (|x'-x0'|^2+(t+lambda)^2)^{n/2} ] + C~.
/// Identically C~ when lambda = 1, x0' = 0.
inline ScalarField onofri_extremal_w(int n, OnofriTraceExtremal prm) {
  require_dimension(n);
  detail::require_lambda(prm.lambda);
  if (prm.x0_prime.size() == 0) prm.x0_prime = Vec::zero(n - 1);
  if (prm.x0_prime.size() != n - 1) throw std::invalid_argument("x0_prime: dimension mismatch");
  ScalarField f;
  f.dim = n;
  const double l = prm.lambda, ct = prm.c_tilde;
  const Vec x0p = prm.x0_prime;
  f.value = [n, l, ct, x0p](const Vec& x) {
    const double g2 = detail::quad_g2(x, x0p, l);
    const double diff = detail::quad_g1_minus_g2(x, x0p, l);
    return 0.5 * n * std::log1p(diff / g2) + std::log(l) + ct;
  };
  f.grad = [n, l, x0p](const Vec& x) {
    const double g1 = detail::quad_g1(x);
    const double g2 = detail::quad_g2(x, x0p, l);
    Vec g(n);
    for (int i = 0; i < n - 1; ++i) g[i] = n * (x[i] / g1 - (x[i] - x0p[i]) / g2);
    g[n - 1] = n * ((1.0 + x[n - 1]) / g1 - (x[n - 1] + l) / g2);
    return g;
  };
  f.traits.bounded = true;
  f.traits.bounded_above = true;
  f.traits.grad_decay = 2.0;
  f.traits.log_slope = 0.0;
  return f;
}

/// Classified solution of the half-space Liouville problem:
///   u(x) = log[ n^{n-1} lambda / (|x'-x0'|^2 + (t+lambda)^2)^{n/2} ],
/// with grad u = -n (x - x0)/|x - x0|^2, x0 = (x0', -lambda).
inline ScalarField liouville_solution_u(int n, LiouvilleSolution prm) {
  require_dimension(n);
  detail::require_lambda(prm.lambda);
  if (prm.x0_prime.size() == 0) prm.x0_prime = Vec::zero(n - 1);
  if (prm.x0_prime.size() != n - 1) throw std::invalid_argument("x0_prime: dimension mismatch");
  ScalarField f;
  f.dim = n;
  const double l = prm.lambda;
  const Vec x0p = prm.x0_prime;
  f.value = [n, l, x0p](const Vec& x) {
    const double g2 = detail::quad_g2(x, x0p, l);
    return (n - 1.0) * std::log(static_cast<double>(n)) + std::log(l) - 0.5 * n * std::log(g2);
  };
  f.grad = [n, l, x0p](const Vec& x) {
    const double g2 = detail::quad_g2(x, x0p, l);
    Vec g(n);
    for (int i = 0; i < n - 1; ++i) g[i] = -n * (x[i] - x0p[i]) / g2;
    g[n - 1] = -n * (x[n - 1] + l) / g2;
    return g;
  };
  f.traits.bounded_above = true;
  f.traits.log_slope = static_cast<double>(n);
  f.traits.grad_decay = 1.0;
  return f;
}

/// Center (x0', -lambda) of the solution, as a full-space vector.
inline Vec liouville_center(int n, const LiouvilleSolution& prm) {
  Vec c(n);
  const Vec x0p = prm.x0_prime.size() ? prm.x0_prime : Vec::zero(n - 1);
  for (int i = 0; i < n - 1; ++i) c[i] = x0p[i];
  c[n - 1] = -prm.lambda;
  return c;
}

/// Flux a(grad u) = |grad u|^{n-2} grad u = -n^{n-1} (x-x0)/|x-x0|^n in closed form.
inline Vec liouville_flux(int n, const LiouvilleSolution& prm, const Vec& x) {
  require_dimension(n);
  const Vec z = x - liouville_center(n, prm);
  const double r2 = norm2(z);
  return (-std::pow(static_cast<double>(n), n - 1) / std::pow(r2, 0.5 * n)) * z;
}

/// Jacobian of the flux: d_j a_i = -n^{n-1} [ delta_ij/|z|^n - n z_i z_j/|z|^{n+2} ].
/// Its trace vanishes identically (n-harmonicity).
inline Mat liouville_flux_jacobian(int n, const LiouvilleSolution& prm, const Vec& x) {
  require_dimension(n);
  const Vec z = x - liouville_center(n, prm);
  const double r2 = norm2(z);
  const double c = std::pow(static_cast<double>(n), n - 1);
  const double inv_rn = 1.0 / std::pow(r2, 0.5 * n);
  Mat J(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = n * z[i] * z[j] / r2 * inv_rn;
      if (i == j) v -= inv_rn;
      J(i, j) = c * v;
    }
  return J;
}

/// Classified entire solution on R^n:
///   u(x) = log[ n (n^2/(n-1))^{n-1} lambda^n / (1 + lambda^{n/(n-1)} |x-x0|^{n/(n-1)})^n ].
inline ScalarField fullspace_liouville_u(int n, FullSpaceLiouville prm) {
  require_dimension(n);
  detail::require_lambda(prm.lambda);
  if (prm.x0.size() == 0) prm.x0 = Vec::zero(n);
  if (prm.x0.size() != n) throw std::invalid_argument("x0: dimension mismatch");
  ScalarField f;
  f.dim = n;
  const double l = prm.lambda;
  const Vec x0 = prm.x0;
  const double q = static_cast<double>(n) / (n - 1.0);
  const double lq = std::pow(l, q);
  const double top = std::log(static_cast<double>(n)) +
                     (n - 1.0) * std::log(n * static_cast<double>(n) / (n - 1.0)) +
                     n * std::log(l);
  f.value = [n, x0, lq, q, top](const Vec& x) {
    const double r = norm(x - x0);
    return top - n * std::log1p(lq * std::pow(r, q));
  };
  f.grad = [n, x0, lq, q](const Vec& x) {
    const Vec z = x - x0;
    const double r = norm(z);
    if (r == 0.0) return Vec::zero(n);
    const double rq = std::pow(r, q);
    const double c = -n * q * lq * rq / ((1.0 + lq * rq) * r * r);
    return c * z;
  };
  f.traits.bounded_above = true;
  f.traits.log_slope = n * q;  // n^2/(n-1)
  f.traits.grad_decay = 1.0;
  return f;
}

/// Sobolev-trace extremal
///   u(x',t) = ( lambda^{2/p} / (|x'-x0'|^2 + (t+lambda)^2) )^{(n-p)/(2(p-1))},
/// with the chain-rule gradient.
inline ScalarField sobolev_extremal_u(int n, SobolevTraceExtremal prm) {
  require_dimension(n);
  require_p_range(n, prm.p);
  detail::require_lambda(prm.lambda);
  if (prm.x0_prime.size() == 0) prm.x0_prime = Vec::zero(n - 1);
  if (prm.x0_prime.size() != n - 1) throw std::invalid_argument("x0_prime: dimension mismatch");
  ScalarField f;
  f.dim = n;
  const double p = prm.p, l = prm.lambda;
  const Vec x0p = prm.x0_prime;
  const double m = (n - p) / (2.0 * (p - 1.0));
  const double scale = std::pow(l, 2.0 * m / p);
  f.value = [m, scale, l, x0p](const Vec& x) {
    return scale * std::pow(detail::quad_g2(x, x0p, l), -m);
  };
  f.grad = [n, m, scale, l, x0p](const Vec& x) {
    const double g2 = detail::quad_g2(x, x0p, l);
    const double c = -2.0 * m * scale * std::pow(g2, -m - 1.0);
    Vec g(n);
    for (int i = 0; i < n - 1; ++i) g[i] = c * (x[i] - x0p[i]);
    g[n - 1] = c * (x[n - 1] + l);
    return g;
  };
  f.traits.bounded = true;
  f.traits.bounded_above = true;
  f.traits.grad_decay = 2.0 * m + 1.0;
  f.traits.log_slope = 0.0;
  return f;
}

// --------------------------------------------------------------------------
// Transformations between the w-picture and the u-picture
// --------------------------------------------------------------------------

/// u = log mu_n + w; gradients shift by the drift field.
inline ScalarField u_from_w(const ScalarField& w) {
  const int n = w.dim;
  ScalarField f;
  f.dim = n;
  f.value = [n, w](const Vec& x) {
    return log_weight_mu(n, HalfSpacePoint::from_vec(x)) + w.value(x);
  };
  f.grad = [n, w](const Vec& x) {
    return drift_field(n, HalfSpacePoint::from_vec(x)) + w.grad(x);
  };
  f.traits.bounded_above = w.traits.bounded_above;
  if (w.traits.log_slope) f.traits.log_slope = *w.traits.log_slope + n;
  f.traits.grad_decay = w.traits.grad_decay ? std::min(*w.traits.grad_decay, 1.0) : 1.0;
  return f;
}

/// w = u - log mu_n.
inline ScalarField w_from_u(const ScalarField& u) {
  const int n = u.dim;
  ScalarField f;
  f.dim = n;
  f.value = [n, u](const Vec& x) {
    return u.value(x) - log_weight_mu(n, HalfSpacePoint::from_vec(x));
  };
  f.grad = [n, u](const Vec& x) {
    return u.grad(x) - drift_field(n, HalfSpacePoint::from_vec(x));
  };
  if (u.traits.log_slope) f.traits.log_slope = *u.traits.log_slope - n;
  f.traits.grad_decay = u.traits.grad_decay ? std::min(*u.traits.grad_decay, 1.0) : 1.0;
  f.traits.bounded = u.traits.log_slope && std::fabs(*u.traits.log_slope - n) < 1e-14;
  f.traits.bounded_above = f.traits.bounded;
  return f;
}

/// The C~ value for which the extremal w maps exactly onto the Liouville
/// solution under u = log mu_n + w.
inline double matching_c_tilde(int n) {
  return std::log(0.5 * std::pow(static_cast<double>(n), n - 1) * sphere_area(n));
}

// --------------------------------------------------------------------------
// Perturbed field of the p -> n limit
// --------------------------------------------------------------------------

/// Canonical Sobolev extremal at unit scale, u_*(x',t) = ((1+t)^2+|x'|^2)^{-(n-p)/(2(p-1))}.
inline ScalarField sobolev_u_star(int n, double p) {
  SobolevTraceExtremal prm;
  prm.p = p;
  prm.lambda = 1.0;
  prm.x0_prime = Vec::zero(n - 1);
  return sobolev_extremal_u(n, prm);
}

/// h = u_*(1 + delta w) with delta = (n-p)/(p(n-1));
/// grad h = grad u_* (1 + delta w) + delta u_* grad w.
inline ScalarField perturbed_h(int n, double p, const ScalarField& w) {
  require_p_range(n, p);
  ScalarField ustar = sobolev_u_star(n, p);
  const double delta = limit_delta(n, p);
  ScalarField f;
  f.dim = n;
  f.value = [ustar, w, delta](const Vec& x) { return ustar.value(x) * (1.0 + delta * w.value(x)); };
  f.grad = [ustar, w, delta](const Vec& x) {
    return (1.0 + delta * w.value(x)) * ustar.grad(x) + (delta * ustar.value(x)) * w.grad(x);
  };
  f.traits = ustar.traits;
  f.traits.support = w.traits.support;
  return f;
}

/// Unit-scaled gradient decomposition of h: returns X_delta/delta and
/// Y_delta/delta, whose remainder R_p rescales by delta^p exactly.
inline void h_decomposition_scaled(int n, double p, const ScalarField& w, const Vec& x,
                                   Vec* x_part, Vec* y_part) {
  require_p_range(n, p);
  const double delta = limit_delta(n, p);
  const double m = (n - p) / (2.0 * (p - 1.0));
  const double g1 = detail::quad_g1(x);
  // grad u_* / delta = -(p(n-1)/(p-1)) G1^{-m-1} (x', 1+t)
  const double c = -(p * (n - 1.0) / (p - 1.0)) * std::pow(g1, -m - 1.0);
  Vec gu(n);
  for (int i = 0; i < n - 1; ++i) gu[i] = c * x[i];
  gu[n - 1] = c * (1.0 + x[n - 1]);
  *x_part = (1.0 + delta * w.value(x)) * gu;
  *y_part = std::pow(g1, -m) * w.grad(x);
}

}  // namespace onofri
