#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "onofri/fields.hpp"
#include "onofri/functionals.hpp"
#include "onofri/kernels.hpp"
#include "onofri/quadrature.hpp"
#include "onofri/special.hpp"

namespace onofri {

/// Convergence table of the limit constants C_{0,p} -> |S^{n-1}|/2 and
/// C_{1,p} -> n^{n-1}|S^{n-1}|/2 as p -> n.
struct LimitTable {
  int n = 0;
  std::vector<double> p_values;
  std::vector<double> c0p, c1p, gap0, gap1, delta;

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "p,C0p,C1p,gap0,gap1,delta\n";
    for (std::size_t i = 0; i < p_values.size(); ++i)
      os << p_values[i] << ',' << c0p[i] << ',' << c1p[i] << ',' << gap0[i] << ',' << gap1[i]
         << ',' << delta[i] << '\n';
    return os.str();
  }
};

inline LimitTable constants_limit(int n, const std::vector<double>& p_sequence) {
  require_dimension(n);
  LimitTable t;
  t.n = n;
  const double c0_lim = 0.5 * sphere_area(n);
  const double c1_lim = 0.5 * std::pow(static_cast<double>(n), n - 1) * sphere_area(n);
  double prev = 1.0;
  for (double p : p_sequence) {
    if (!(p > prev) && !t.p_values.empty())
      throw std::invalid_argument("constants_limit: p sequence must increase toward n");
    prev = p;
    t.p_values.push_back(p);
    t.c0p.push_back(limit_c0p(n, p));
    t.c1p.push_back(limit_c1p(n, p));
    t.gap0.push_back(std::fabs(t.c0p.back() - c0_lim));
    t.gap1.push_back(std::fabs(t.c1p.back() - c1_lim));
    t.delta.push_back(limit_delta(n, p));
  }
  return t;
}

/// Default approach sequence p = n - 10^{-k}, k = 1..k_max. Closer approach
/// hits the delta^{1/delta} cancellation floor of double precision.
inline std::vector<double> default_p_sequence(int n, int k_max = 5) {
  std::vector<double> ps;
  for (int k = 1; k <= k_max; ++k) ps.push_back(n - std::pow(10.0, -k));
  return ps;
}

/// Homogeneity limit of the remainder: delta^{-p} R_p(X_delta, Y_delta)
/// evaluated as R_p(X_delta/delta, Y_delta/delta), converging to
/// K_n(x, grad w) as p -> n. Returns one value per p.
inline std::vector<double> rp_homogeneity_limit(int n, const HalfSpacePoint& x,
                                                const Vec& w_grad,
                                                const std::vector<double>& p_sequence,
                                                double w_value = 0.0) {
  require_dimension(n);
  ScalarField w = constant_field(n, w_value);
  const Vec grad = w_grad;
  w.grad = [grad](const Vec&) { return grad; };
  std::vector<double> out;
  out.reserve(p_sequence.size());
  const Vec xv = x.to_vec();
  for (double p : p_sequence) {
    Vec xd, yd;
    h_decomposition_scaled(n, p, w, xv, &xd, &yd);
    out.push_back(convexity_remainder(xd, yd, p));
  }
  return out;
}

/// Interior quotient of the limiting derivation, computed without the
/// delta^{p} underflow: with E = integral of the unit-scaled integrand
///   |grad u_*/delta|^p expm1(p log1p(delta w)) + p|X|^{p-2}X.Y + R_p(X,Y)
/// over the support of w, the quotient is
///   (1/p) log( int|grad h|^p / int|grad u_*|^p )^{1/delta}
///     = 1/(p delta) log1p( delta E / C_{1,p} ).
/// Requires w smooth with (numerically) compact support.
inline FunctionalValue sobolev_quotient_log(int n, double p, const ScalarField& w,
                                            const QuadratureSpec& spec) {
  require_p_range(n, p);
  if (!w.traits.support)
    throw std::invalid_argument("sobolev_quotient_log: w must declare a compact support box");
  const double delta = limit_delta(n, p);
  const double m = (n - p) / (2.0 * (p - 1.0));
  const double cpow = p * (n - 1.0) / (p - 1.0);

  auto integrand = [&](const Vec& x) {
    const double g1 = detail::quad_g1(x);
    const double wx = w.value(x);
    // |grad u_*/delta|^p = (p(n-1)/(p-1))^p G1^{-p(m+1)} * G1^{p/2}... direct:
    const double gu_norm = cpow * std::pow(g1, -m - 1.0) * std::sqrt(g1);
    const double t1 = std::pow(gu_norm, p) * std::expm1(p * std::log1p(delta * wx));
    Vec xd, yd;
    h_decomposition_scaled(n, p, w, x, &xd, &yd);
    const double nx = norm(xd);
    const double t2 = p * std::pow(nx, p - 2.0) * dot(xd, yd);
    const double t3 = convexity_remainder(xd, yd, p);
    return t1 + t2 + t3;
  };

  Vec lo = w.traits.support->first;
  Vec hi = w.traits.support->second;
  lo[n - 1] = std::max(lo[n - 1], 0.0);
  QuadratureResult E = integrate_box(integrand, lo, hi, spec);

  const double c1 = limit_c1p(n, p);
  FunctionalValue out;
  out.value = std::log1p(delta * E.value / c1) / (p * delta);
  out.quad_error = E.error_estimate / c1 / p;  // d/dE of the log1p at leading order
  out.n_evals = E.n_evals;
  out.converged = E.converged;
  out.tail_verified = true;  // compact support by precondition
  return out;
}

/// Limit target of the quotient: int w dmu_n + alpha_n int K_n(x, grad w) dx.
inline FunctionalValue sobolev_quotient_target(int n, const ScalarField& w,
                                               const QuadratureSpec& spec) {
  FunctionalValue mean = boundary_mean(w, spec);
  FunctionalValue energy = kn_energy(w, spec);
  FunctionalValue out;
  out.value = mean.value + alpha_n(n) * energy.value;
  out.quad_error = mean.quad_error + alpha_n(n) * energy.quad_error;
  out.n_evals = mean.n_evals + energy.n_evals;
  out.converged = mean.converged && energy.converged;
  out.tail_verified = mean.tail_verified && energy.tail_verified;
  return out;
}

/// Sharp trace deficit at exponent p:
///   (1/S(n,p)) ||grad u||_{L^p} - ||u||_{L^{p(n-1)/(n-p)}(boundary)};
/// nonnegative, zero exactly on the trace extremal family.
inline FunctionalValue sobolev_trace_deficit(int n, double p, const ScalarField& u,
                                             const QuadratureSpec& spec) {
  require_p_range(n, p);
  const double q_bdry = p * (n - 1.0) / (n - p);
  auto f_bdry = [&](const Vec& xp) {
    return std::pow(std::fabs(u.value(func_detail::embed_boundary(xp))), q_bdry);
  };
  QuadratureResult bdry = integrate_boundary_plane(n, f_bdry, spec);
  auto f_grad = [&](const Vec& x) { return std::pow(norm(u.grad(x)), p); };
  QuadratureResult grad = integrate_half_space(n, f_grad, spec);

  const double S = sobolev_trace_S(n, p);
  const double lhs = std::pow(bdry.value, 1.0 / q_bdry);
  const double rhs = std::pow(grad.value, 1.0 / p) / S;
  FunctionalValue out;
  out.value = rhs - lhs;
  out.quad_error =
      (bdry.value > 0 ? lhs * bdry.error_estimate / (q_bdry * bdry.value) : 0.0) +
      (grad.value > 0 ? rhs * grad.error_estimate / (p * grad.value) : 0.0);
  out.n_evals = bdry.n_evals + grad.n_evals;
  out.converged = bdry.converged && grad.converged;
  out.tail_verified = u.traits.grad_decay && *u.traits.grad_decay * p > n &&
                      u.traits.bounded;
  return out;
}

}  // namespace onofri
