#pragma once

#include <cmath>
#include <stdexcept>

#include "onofri/core.hpp"
#include "onofri/special.hpp"

namespace onofri {

namespace detail {

/// (1+t)^a - 1 - a*t for small |t|, by the binomial series from the quadratic
/// term on. Direct evaluation loses all significant digits when t -> 0.
inline double power_remainder_small(double a, double t) {
  double coeff = a;          // running binomial coefficient C(a,k) * k!-normalized
  double tk = 1.0;           // t^{k-1}
  double sum = 0.0;
  for (int k = 2; k <= 12; ++k) {
    coeff *= (a - (k - 1)) / k;
    tk *= t;
    sum += coeff * tk;
  }
  return sum * t;  // sum_{k>=2} C(a,k) t^k
}

}  // namespace detail

/// Convexity remainder of |.|^p at X in direction Y:
///   R_p(X,Y) = |X+Y|^p - |X|^p - p |X|^{p-2} X.Y .
/// Nonnegative for p >= 2. At X = 0 the linear term is extended by 0
/// (it is homogeneous of degree p-1 > 0).
inline double convexity_remainder(const Vec& X, const Vec& Y, double p) {
  if (X.size() != Y.size()) throw std::invalid_argument("convexity_remainder: dimension mismatch");
  if (!(p > 1.0)) throw std::invalid_argument("convexity_remainder: requires p > 1");
  const double nx2 = norm2(X);
  const double ny2 = norm2(Y);
  if (ny2 == 0.0) return 0.0;
  if (nx2 == 0.0) return std::pow(ny2, 0.5 * p);

  const double xy = dot(X, Y);
  // rho = |Y|/|X|; for small rho the direct formula cancels catastrophically,
  // so switch to the series of (1+t)^{p/2} with t = 2 X.Y/|X|^2 + rho^2.
  const double rho2 = ny2 / nx2;
  const double nxp = std::pow(nx2, 0.5 * p);
  if (rho2 < 1e-4) {
    const double t = (2.0 * xy / nx2) + rho2;
    const double a = 0.5 * p;
    // R_p/|X|^p = [(1+t)^a - 1 - a t] + a rho^2
    return nxp * (detail::power_remainder_small(a, t) + a * rho2);
  }
  double sum2 = nx2 + 2.0 * xy + ny2;  // |X+Y|^2
  if (sum2 < 0.0) sum2 = 0.0;
  return std::pow(sum2, 0.5 * p) - nxp - p * std::pow(nx2, 0.5 * p - 1.0) * xy;
}

/// Drift field of the full-space kernel:
///   X_h(y) = - n |y|^{-(n-2)/(n-1)} / (1 + |y|^{n/(n-1)}) * y .
/// Vanishes like |y|^{1/(n-1)} at the origin but is not smooth there for n >= 3.
inline Vec fullspace_drift(int n, const Vec& y) {
  require_dimension(n);
  if (y.size() != n) throw std::invalid_argument("fullspace_drift: dimension mismatch");
  const double r = norm(y);
  if (r == 0.0) {
    if (n >= 3) throw std::domain_error("fullspace_drift: singular prefactor at y = 0 for n >= 3");
    return Vec::zero(n);
  }
  const double q = static_cast<double>(n) / (n - 1.0);
  const double pref = -n * std::pow(r, -(n - 2.0) / (n - 1.0)) / (1.0 + std::pow(r, q));
  return pref * y;
}

/// Full-space kernel H_n(y,z) = R_n(X_h(y), (n-1)/n * z).
inline double fullspace_kernel(int n, const Vec& y, const Vec& z) {
  Vec X = fullspace_drift(n, y);
  return convexity_remainder(X, ((n - 1.0) / n) * z, static_cast<double>(n));
}

/// Drift field on the half-space:
///   X(x) = -n (x', 1+t) / ((1+t)^2 + |x'|^2) = grad log mu_n(x).
inline Vec drift_field(int n, const HalfSpacePoint& x) {
  require_dimension(n);
  if (x.dim() != n) throw std::invalid_argument("drift_field: dimension mismatch");
  const double g = (1.0 + x.t) * (1.0 + x.t) + norm2(x.x_prime);
  Vec X(n);
  for (int i = 0; i < n - 1; ++i) X[i] = -n * x.x_prime[i] / g;
  X[n - 1] = -n * (1.0 + x.t) / g;
  return X;
}

/// Half-space kernel K_n(x,y) = R_n(X(x), y); shares the code path of the
/// convexity remainder exactly.
inline double halfspace_kernel(int n, const HalfSpacePoint& x, const Vec& y) {
  return convexity_remainder(drift_field(n, x), y, static_cast<double>(n));
}

/// Interior weight mu_n(x',t) = 2 / (|S^{n-1}| ((1+t)^2 + |x'|^2)^{n/2}).
inline double weight_mu(int n, const HalfSpacePoint& x) {
  require_dimension(n);
  if (x.dim() != n) throw std::invalid_argument("weight_mu: dimension mismatch");
  const double g = (1.0 + x.t) * (1.0 + x.t) + norm2(x.x_prime);
  return 2.0 / (sphere_area(n) * std::pow(g, 0.5 * n));
}

inline double log_weight_mu(int n, const HalfSpacePoint& x) {
  const double g = (1.0 + x.t) * (1.0 + x.t) + norm2(x.x_prime);
  return std::log(2.0 / sphere_area(n)) - 0.5 * n * std::log(g);
}

/// Boundary trace of the weight: mu_n(x',0) dx' is a probability measure.
inline double boundary_weight_mu(int n, const Vec& x_prime) {
  return weight_mu(n, HalfSpacePoint::boundary(x_prime));
}

/// Full-space weight nu_n(x) = n/|S^{n-1}| (1+|x|^{n/(n-1)})^{-n}.
inline double weight_nu(int n, const Vec& x) {
  require_dimension(n);
  if (x.size() != n) throw std::invalid_argument("weight_nu: dimension mismatch");
  const double q = static_cast<double>(n) / (n - 1.0);
  return n / sphere_area(n) * std::pow(1.0 + std::pow(norm(x), q), -static_cast<double>(n));
}

/// Interior comparison weight: the (n+1)-dimensional weight formula applied
/// pointwise to (x', t) in the n-dimensional half-space.
inline double weight_mu_tilde(int n, const HalfSpacePoint& x) {
  require_dimension(n);
  if (x.dim() != n) throw std::invalid_argument("weight_mu_tilde: dimension mismatch");
  const double g = (1.0 + x.t) * (1.0 + x.t) + norm2(x.x_prime);
  return 2.0 / (sphere_area(n + 1) * std::pow(g, 0.5 * (n + 1)));
}

/// n-Laplacian flux map a(xi) = |xi|^{n-2} xi.
inline Vec nlap_flux(int n, const Vec& xi) {
  require_dimension(n);
  const double r = norm(xi);
  if (r == 0.0) return Vec::zero(xi.size());
  return std::pow(r, n - 2.0) * xi;
}

/// Regularized flux a_eps(x) = (|x|^2 + eps^2)^{(n-2)/2} x; equals a(x) at eps = 0.
inline Vec regularized_flux(int n, const Vec& x, double eps) {
  require_dimension(n);
  if (!(eps >= 0.0)) throw std::invalid_argument("regularized_flux: eps must be >= 0");
  const double s = norm2(x) + eps * eps;
  if (s == 0.0) return Vec::zero(x.size());
  return std::pow(s, 0.5 * (n - 2.0)) * x;
}

}  // namespace onofri
