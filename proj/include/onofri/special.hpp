#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "onofri/core.hpp"

namespace onofri {

inline constexpr double kPi = std::numbers::pi_v<double>;

/// Surface area of the unit sphere S^{n-1} in R^n:  2 pi^{n/2} / Gamma(n/2).
inline double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Volume of the unit ball in R^n.
inline double ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("ball_volume: n must be >= 1");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Sharp constant of the half-space trace inequality: alpha_n = 2 / (n^n |S^{n-1}|).
/// Reduces to 1/(4 pi) in dimension 2.
inline double alpha_n(int n) {
  if (n < 2) throw std::invalid_argument("alpha_n: n must be >= 2");
  return 2.0 / (std::pow(static_cast<double>(n), n) * sphere_area(n));
}

/// Sharp constant of the full-space inequality:
/// beta_n = n^{1-n} Gamma(n/2) / (2 (n-1) pi^{n/2}).
inline double fullspace_beta_n(int n) {
  if (n < 2) throw std::invalid_argument("fullspace_beta_n: n must be >= 2");
  return std::pow(static_cast<double>(n), 1 - n) * std::tgamma(0.5 * n) /
         (2.0 * (n - 1) * std::pow(kPi, 0.5 * n));
}

/// Euler Beta function, evaluated through lgamma for range safety.
inline double beta_function(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_function: arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline void require_p_range(int n, double p) {
  if (!(p > 1.0) || !(p < static_cast<double>(n)))
    throw std::invalid_argument("p must lie in (1, n)");
}

/// Boundary norm of the Sobolev-trace extremal at unit scale:
/// C_{0,p} = (1/2) |S^{n-2}| B((n-1)/2, (n-1)/(2(p-1))).
inline double limit_c0p(int n, double p) {
  if (n < 2) throw std::invalid_argument("limit_c0p: n must be >= 2");
  require_p_range(n, p);
  return 0.5 * sphere_area(n - 1) * beta_function(0.5 * (n - 1), 0.5 * (n - 1) / (p - 1));
}

/// Scaled gradient energy of the same extremal:
/// C_{1,p} = (1/2) (p(n-1)/(p-1))^{p-1} |S^{n-2}| B((n-1)/2, (n-1)/(2(p-1))).
inline double limit_c1p(int n, double p) {
  if (n < 2) throw std::invalid_argument("limit_c1p: n must be >= 2");
  require_p_range(n, p);
  return std::pow(p * (n - 1) / (p - 1), p - 1.0) * limit_c0p(n, p);
}

/// Sharp Sobolev trace constant
/// S(n,p) = ((n-p)/(p-1))^{(p-1)/p} [ (1/2) |S^{n-2}| B((n-1)/2, (n-1)/(2(p-1))) ]^{(p-1)/(p(n-1))}.
inline double sobolev_trace_S(int n, double p) {
  if (n < 2) throw std::invalid_argument("sobolev_trace_S: n must be >= 2");
  require_p_range(n, p);
  double first = std::pow((n - p) / (p - 1.0), (p - 1.0) / p);
  double bracket = limit_c0p(n, p);
  return first * std::pow(bracket, (p - 1.0) / (p * (n - 1.0)));
}

/// delta = (n-p)/(p(n-1)), the small parameter of the p -> n limit.
inline double limit_delta(int n, double p) {
  require_p_range(n, p);
  return (n - p) / (p * (n - 1.0));
}

}  // namespace onofri
