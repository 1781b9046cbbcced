#pragma once

#include <cmath>
#include <stdexcept>

#include "onofri/fields.hpp"
#include "onofri/kernels.hpp"
#include "onofri/quadrature.hpp"
#include "onofri/special.hpp"

namespace onofri {

/// A computed integral plus bookkeeping. tail_verified records whether the
/// declared decay of the field analytically covers the compactified tail;
/// fields without declared decay get the value anyway, flagged as assumed.
struct FunctionalValue {
  double value = 0.0;
  double quad_error = 0.0;
  long n_evals = 0;
  bool converged = false;
  bool tail_verified = false;
};

namespace func_detail {

inline Vec embed_boundary(const Vec& x_prime) {
  Vec x(x_prime.size() + 1);
  for (int i = 0; i < x_prime.size(); ++i) x[i] = x_prime[i];
  x[x_prime.size()] = 0.0;
  return x;
}

inline FunctionalValue from_quad(const QuadratureResult& q, bool tail_ok) {
  return FunctionalValue{q.value, q.error_estimate, q.n_evals, q.converged, tail_ok};
}

inline bool boundary_exp_tail_ok(const ScalarField& w) {
  if (w.traits.bounded_above) return true;
  return w.traits.log_slope && *w.traits.log_slope >= 0.0;
}

inline bool boundary_mean_tail_ok(const ScalarField& w) {
  return w.traits.bounded || w.traits.log_slope.has_value();
}

}  // namespace func_detail

/// Boundary exponential mass against the probability measure: int e^w dmu_n.
inline FunctionalValue boundary_exp_mass(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  auto f = [n, &w](const Vec& xp) {
    const Vec x = func_detail::embed_boundary(xp);
    return std::exp(w.value(x)) * boundary_weight_mu(n, xp);
  };
  return func_detail::from_quad(integrate_boundary_plane(n, f, spec),
                                func_detail::boundary_exp_tail_ok(w));
}

/// Boundary mean: int w dmu_n.
inline FunctionalValue boundary_mean(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  auto f = [n, &w](const Vec& xp) {
    const Vec x = func_detail::embed_boundary(xp);
    return w.value(x) * boundary_weight_mu(n, xp);
  };
  return func_detail::from_quad(integrate_boundary_plane(n, f, spec),
                                func_detail::boundary_mean_tail_ok(w));
}

/// Left side of the trace inequality: log(int e^w dmu_n) - int w dmu_n.
inline FunctionalValue onofri_lhs(const ScalarField& w, const QuadratureSpec& spec) {
  FunctionalValue e = boundary_exp_mass(w, spec);
  FunctionalValue m = boundary_mean(w, spec);
  if (!(e.value > 0.0)) throw std::domain_error("onofri_lhs: divergent or vanishing exponential mass");
  FunctionalValue out;
  out.value = std::log(e.value) - m.value;
  out.quad_error = e.quad_error / e.value + m.quad_error;
  out.n_evals = e.n_evals + m.n_evals;
  out.converged = e.converged && m.converged;
  out.tail_verified = e.tail_verified && m.tail_verified;
  return out;
}

/// Kernel energy int K_n(x, grad w) dx over the half-space, without the
/// sharp constant in front.
inline FunctionalValue kn_energy(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  auto f = [n, &w](const Vec& x) {
    return halfspace_kernel(n, HalfSpacePoint::from_vec(x), w.grad(x));
  };
  const bool tail_ok = w.traits.grad_decay && *w.traits.grad_decay > 1.0;
  return func_detail::from_quad(integrate_half_space(n, f, spec), tail_ok);
}

/// Two sides of the sharp trace inequality and their gap. The deficit is
/// nonnegative up to quadrature error, and zero exactly on the extremal family.
struct DeficitReport {
  double lhs = 0.0;      // log int e^w dmu - int w dmu
  double rhs = 0.0;      // alpha_n * int K_n(x, grad w) dx
  double deficit = 0.0;  // rhs - lhs
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  long n_evals = 0;
  bool converged = false;
  bool tail_verified = false;

  double total_error() const { return lhs_error + rhs_error; }
};

inline DeficitReport deficit(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  FunctionalValue lhs = onofri_lhs(w, spec);
  FunctionalValue energy = kn_energy(w, spec);
  DeficitReport r;
  r.lhs = lhs.value;
  r.rhs = alpha_n(n) * energy.value;
  r.deficit = r.rhs - r.lhs;
  r.lhs_error = lhs.quad_error;
  r.rhs_error = alpha_n(n) * energy.quad_error;
  r.n_evals = lhs.n_evals + energy.n_evals;
  r.converged = lhs.converged && energy.converged;
  r.tail_verified = lhs.tail_verified && energy.tail_verified;
  return r;
}

/// Rayleigh-type quotient Q[w] = int K_n / (log int e^w dmu - int w dmu).
/// Undefined at constants, where the denominator vanishes.
struct QuotientResult {
  double value = 0.0;
  bool defined = false;
  double numerator = 0.0;
  double denominator = 0.0;
  double quad_error = 0.0;
};

inline QuotientResult quotient_Q(const ScalarField& w, const QuadratureSpec& spec) {
  FunctionalValue lhs = onofri_lhs(w, spec);
  FunctionalValue energy = kn_energy(w, spec);
  QuotientResult q;
  q.numerator = energy.value;
  q.denominator = lhs.value;
  if (std::fabs(lhs.value) <= std::max(10.0 * lhs.quad_error, 1e-12)) {
    q.defined = false;
    return q;
  }
  q.defined = true;
  q.value = energy.value / lhs.value;
  q.quad_error = std::fabs(q.value) *
                 (energy.quad_error / std::max(std::fabs(energy.value), 1e-300) +
                  lhs.quad_error / std::fabs(lhs.value));
  return q;
}

/// The three components of the weighted-space norm:
///   b1    = int |w| dmu_n                       (boundary),
///   gn    = (int |grad w|^n dx)^{1/n},
///   cross = (int |grad w|^2 |grad log mu_n|^{n-2} dx)^{1/2}.
struct WeightedNorm {
  FunctionalValue b1, gn, cross;
};

inline WeightedNorm weighted_norm(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  WeightedNorm out;
  auto fb = [n, &w](const Vec& xp) {
    const Vec x = func_detail::embed_boundary(xp);
    return std::fabs(w.value(x)) * boundary_weight_mu(n, xp);
  };
  out.b1 = func_detail::from_quad(integrate_boundary_plane(n, fb, spec),
                                  func_detail::boundary_mean_tail_ok(w));

  auto fg = [n, &w](const Vec& x) { return std::pow(norm(w.grad(x)), n); };
  out.gn = func_detail::from_quad(integrate_half_space(n, fg, spec),
                                  w.traits.grad_decay && *w.traits.grad_decay > 1.0);
  out.gn.value = std::pow(out.gn.value, 1.0 / n);

  auto fc = [n, &w](const Vec& x) {
    const Vec g = w.grad(x);
    const Vec X = drift_field(n, HalfSpacePoint::from_vec(x));
    return norm2(g) * std::pow(norm(X), n - 2.0);
  };
  out.cross = func_detail::from_quad(
      integrate_half_space(n, fc, spec),
      w.traits.grad_decay && 2.0 * *w.traits.grad_decay + (n - 2.0) > n);
  out.cross.value = std::sqrt(std::max(out.cross.value, 0.0));
  return out;
}

/// Interior exponential energy int e^{n w/(n-1)} mu_n^{n/(n-1)} dx; finite on
/// the whole weighted space.
inline FunctionalValue energy_exp_interior(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  const double q = static_cast<double>(n) / (n - 1.0);
  auto f = [n, q, &w](const Vec& x) {
    const HalfSpacePoint hp = HalfSpacePoint::from_vec(x);
    return std::exp(q * w.value(x)) * std::pow(weight_mu(n, hp), q);
  };
  bool tail_ok = w.traits.bounded_above ||
                 (w.traits.log_slope && *w.traits.log_slope > -1.0);
  return func_detail::from_quad(integrate_half_space(n, f, spec), tail_ok);
}

/// Finite-mass pair for the u-picture: (int e^{n u/(n-1)} dx, int e^u dx').
struct MassReport {
  FunctionalValue interior, boundary;
};

inline MassReport finite_mass(const ScalarField& u, const QuadratureSpec& spec) {
  const int n = u.dim;
  const double q = static_cast<double>(n) / (n - 1.0);
  MassReport out;
  auto fi = [q, &u](const Vec& x) { return std::exp(q * u.value(x)); };
  out.interior = func_detail::from_quad(
      integrate_half_space(n, fi, spec),
      u.traits.log_slope && *u.traits.log_slope > n - 1.0);
  auto fb = [&u](const Vec& xp) { return std::exp(u.value(func_detail::embed_boundary(xp))); };
  out.boundary = func_detail::from_quad(
      integrate_boundary_plane(n, fb, spec),
      u.traits.log_slope && *u.traits.log_slope > n - 1.0);
  return out;
}

// --------------------------------------------------------------------------
// Full-space inequality
// --------------------------------------------------------------------------

/// log(int e^w dnu_n) - int w dnu_n over R^n.
inline FunctionalValue fullspace_lhs(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  auto fe = [n, &w](const Vec& x) { return std::exp(w.value(x)) * weight_nu(n, x); };
  auto fm = [n, &w](const Vec& x) { return w.value(x) * weight_nu(n, x); };
  QuadratureResult e = integrate_full_space(n, fe, spec);
  QuadratureResult m = integrate_full_space(n, fm, spec);
  if (!(e.value > 0.0)) throw std::domain_error("fullspace_lhs: divergent exponential mass");
  FunctionalValue out;
  out.value = std::log(e.value) - m.value;
  out.quad_error = e.error_estimate / e.value + m.error_estimate;
  out.n_evals = e.n_evals + m.n_evals;
  out.converged = e.converged && m.converged;
  out.tail_verified = func_detail::boundary_exp_tail_ok(w) && func_detail::boundary_mean_tail_ok(w);
  return out;
}

/// int H_n(x, grad w) dx over R^n. The drift prefactor is merely Holder at the
/// origin; polar coordinates put the kink at a cell corner of measure zero.
inline FunctionalValue hn_energy(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  auto f = [n, &w](const Vec& x) { return fullspace_kernel(n, x, w.grad(x)); };
  const bool tail_ok = w.traits.grad_decay && *w.traits.grad_decay > 1.0;
  return func_detail::from_quad(integrate_full_space(n, f, spec), tail_ok);
}

inline DeficitReport fullspace_deficit(const ScalarField& w, const QuadratureSpec& spec) {
  const int n = w.dim;
  FunctionalValue lhs = fullspace_lhs(w, spec);
  FunctionalValue energy = hn_energy(w, spec);
  DeficitReport r;
  r.lhs = lhs.value;
  r.rhs = fullspace_beta_n(n) * energy.value;
  r.deficit = r.rhs - r.lhs;
  r.lhs_error = lhs.quad_error;
  r.rhs_error = fullspace_beta_n(n) * energy.quad_error;
  r.n_evals = lhs.n_evals + energy.n_evals;
  r.converged = lhs.converged && energy.converged;
  r.tail_verified = lhs.tail_verified && energy.tail_verified;
  return r;
}

}  // namespace onofri
