#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "onofri/core.hpp"
#include "onofri/special.hpp"

namespace onofri {

/// Controls for the adaptive integrators. rule_order = 0 picks a
/// dimension-dependent default; the embedded pair uses orders k and 2k.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  long max_evals = 10'000'000;
  int rule_order = 0;
  int threads = 1;
  double r0 = 4.0;  // radius splitting the compact core from the compactified tail

  QuadratureSpec with_tols(double rel, double abs) const {
    QuadratureSpec s = *this;
    s.rel_tol = rel;
    s.abs_tol = abs;
    return s;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long n_evals = 0;
  bool converged = false;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    n_evals += o.n_evals;
    converged = converged && o.converged;
    return *this;
  }
};

/// Relaxed defaults for n in {4,5}, per desk-scale runtime targets.
inline QuadratureSpec default_spec_for_dim(int n) {
  QuadratureSpec s;
  if (n >= 4) {
    s.rel_tol = 1e-6;
    s.abs_tol = 1e-8;
    s.max_evals = 100'000'000;
  }
  return s;
}

namespace quad_detail {

/// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_k.
/// Cached per order; the cache is guarded for concurrent use.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int k) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  std::vector<double> x(k), w(k);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < k; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = k * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[k - 1 - i] = z;
    w[i] = w[k - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return cache.emplace(k, std::make_pair(std::move(x), std::move(w))).first->second;
}

inline int default_order(int d) {
  switch (d) {
    case 1: return 8;
    case 2: return 7;
    case 3: return 6;
    case 4: return 5;
    default: return 4;
  }
}

/// Tensor-product Gauss-Legendre of order k over a box; plain odometer loop.
template <class F>
double tensor_rule(const F& f, const Vec& lo, const Vec& hi, int k) {
  const int d = lo.size();
  const auto& [nodes, weights] = gauss_legendre(k);
  std::array<int, kMaxDim> idx{};
  Vec mid(d), half(d);
  for (int i = 0; i < d; ++i) {
    mid[i] = 0.5 * (lo[i] + hi[i]);
    half[i] = 0.5 * (hi[i] - lo[i]);
  }
  double sum = 0.0;
  Vec x(d);
  while (true) {
    double wgt = 1.0;
    for (int i = 0; i < d; ++i) {
      x[i] = mid[i] + half[i] * nodes[idx[i]];
      wgt *= weights[idx[i]] * half[i];
    }
    sum += wgt * f(x);
    int c = 0;
    while (c < d && ++idx[c] == k) idx[c++] = 0;
    if (c == d) break;
  }
  return sum;
}

struct Region {
  Vec lo, hi;
  double value = 0.0;  // fine-rule estimate
  double error = 0.0;  // |fine - coarse|
  int split_axis = 0;  // axis of largest second-difference variation
  long id = 0;
};

/// Axis whose central second difference is largest: splitting there attacks
/// the variation instead of the merely widest side (radial integrands in
/// polar boxes are nearly angle-flat, so width is a poor guide).
template <class F>
int pick_split_axis(const F& f, const Vec& lo, const Vec& hi) {
  const int d = lo.size();
  Vec c(d);
  for (int i = 0; i < d; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  const double fc = f(c);
  int axis = 0;
  double best = -1.0;
  for (int i = 0; i < d; ++i) {
    const double h = 0.25 * (hi[i] - lo[i]);
    Vec xp = c, xm = c;
    xp[i] += h;
    xm[i] -= h;
    const double D = std::fabs(f(xp) + f(xm) - 2.0 * fc);
    if (D > best) {
      best = D;
      axis = i;
    }
  }
  if (best <= 0.0) {
    double wmax = -1.0;
    for (int i = 0; i < d; ++i)
      if (hi[i] - lo[i] > wmax) {
        wmax = hi[i] - lo[i];
        axis = i;
      }
  }
  return axis;
}

struct RegionWorse {
  bool operator()(const Region& a, const Region& b) const {
    if (a.error != b.error) return a.error < b.error;  // max-heap on error
    return a.id > b.id;                                // deterministic tie-break
  }
};

/// Deterministic work-sharing: items are assigned to threads by contiguous
/// index ranges and results land in preallocated slots, so the outcome is
/// bit-identical for any thread count. Integrand exceptions are captured in
/// the workers and rethrown here (first item index wins, deterministically).
template <class Work>
void parallel_for(int n_items, int threads, const Work& work) {
  if (threads <= 1 || n_items <= 1) {
    for (int i = 0; i < n_items; ++i) work(i);
    return;
  }
  const int nt = std::min(threads, n_items);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n_items);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    const int begin = static_cast<int>(static_cast<long>(n_items) * t / nt);
    const int end = static_cast<int>(static_cast<long>(n_items) * (t + 1) / nt);
    pool.emplace_back([&work, &errors, begin, end] {
      for (int i = begin; i < end; ++i) {
        try {
          work(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline void kahan_add(double x, double& sum, double& comp) {
  double y = x - comp;
  double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace quad_detail

/// Adaptive integration over an axis-aligned box: recursive bisection driven
/// by an embedded pair of tensor Gauss-Legendre rules (orders k and 2k).
/// Subdivision order and the final reduction are fixed, so results are
/// reproducible across thread counts. Non-convergence within max_evals is
/// reported through the converged flag, never as a silent value.
template <class F>
QuadratureResult integrate_box(const F& f, const Vec& lo, const Vec& hi,
                               const QuadratureSpec& spec) {
  using namespace quad_detail;
  const int d = lo.size();
  if (hi.size() != d || d < 1) throw std::invalid_argument("integrate_box: bad bounds");
  const int k = spec.rule_order > 0 ? spec.rule_order : default_order(d);
  const long evals_per_region = static_cast<long>(std::pow(static_cast<double>(k), d)) +
                                static_cast<long>(std::pow(2.0 * k, d)) + 2L * d + 1L;
  if (spec.max_evals < evals_per_region)
    throw std::invalid_argument("integrate_box: max_evals below a single rule pair");

  long next_id = 0;
  long evals = 0;
  auto make_region = [&](Vec rlo, Vec rhi, long id) {
    Region r;
    r.lo = std::move(rlo);
    r.hi = std::move(rhi);
    r.id = id;
    const double coarse = tensor_rule(f, r.lo, r.hi, k);
    r.value = tensor_rule(f, r.lo, r.hi, 2 * k);
    r.error = std::fabs(r.value - coarse);
    r.split_axis = pick_split_axis(f, r.lo, r.hi);
    return r;
  };

  // Initial 2^d split decorrelates symmetric integrands from the error gauge.
  std::vector<Region> heap;
  {
    std::vector<std::pair<Vec, Vec>> cells{{lo, hi}};
    for (int axis = 0; axis < d; ++axis) {
      std::vector<std::pair<Vec, Vec>> split;
      split.reserve(cells.size() * 2);
      for (auto& c : cells) {
        const double mid = 0.5 * (c.first[axis] + c.second[axis]);
        auto a = c, b = c;
        a.second[axis] = mid;
        b.first[axis] = mid;
        split.push_back(a);
        split.push_back(b);
      }
      cells = std::move(split);
    }
    heap.resize(cells.size());
    parallel_for(static_cast<int>(cells.size()), spec.threads, [&](int i) {
      heap[i] = make_region(cells[i].first, cells[i].second, i);
    });
    next_id = static_cast<long>(cells.size());
    evals = static_cast<long>(cells.size()) * evals_per_region;
    std::make_heap(heap.begin(), heap.end(), RegionWorse{});
  }

  constexpr int kBatch = 16;  // fixed batch size keeps subdivision order thread-independent
  auto totals = [&heap] {
    double v = 0, vc = 0, e = 0, ec = 0;
    for (const auto& r : heap) {
      kahan_add(r.value, v, vc);
      kahan_add(r.error, e, ec);
    }
    return std::make_pair(v, e);
  };

  auto [value, err] = totals();
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(value))) {
    const int batch = std::min<int>(kBatch, static_cast<int>(heap.size()));
    if (evals + 2L * batch * evals_per_region > spec.max_evals) {
      QuadratureResult out;
      out.value = value;
      out.error_estimate = err;
      out.n_evals = evals;
      out.converged = false;
      return out;
    }
    std::vector<Region> parents(batch);
    for (int b = 0; b < batch; ++b) {
      std::pop_heap(heap.begin(), heap.end(), RegionWorse{});
      parents[b] = std::move(heap.back());
      heap.pop_back();
    }
    std::vector<Region> children(2 * batch);
    parallel_for(2 * batch, spec.threads, [&](int i) {
      const Region& p = parents[i / 2];
      const int axis = p.split_axis;
      const double mid = 0.5 * (p.lo[axis] + p.hi[axis]);
      Vec clo = p.lo, chi = p.hi;
      if (i % 2 == 0)
        chi[axis] = mid;
      else
        clo[axis] = mid;
      // ids are assigned deterministically below; evaluate into the slot
      children[i] = Region{};
      children[i].lo = clo;
      children[i].hi = chi;
      const double coarse = tensor_rule(f, children[i].lo, children[i].hi, k);
      children[i].value = tensor_rule(f, children[i].lo, children[i].hi, 2 * k);
      children[i].error = std::fabs(children[i].value - coarse);
      children[i].split_axis = pick_split_axis(f, children[i].lo, children[i].hi);
    });
    for (auto& c : children) {
      c.id = next_id++;
      heap.push_back(std::move(c));
      std::push_heap(heap.begin(), heap.end(), RegionWorse{});
    }
    evals += 2L * batch * evals_per_region;
    std::tie(value, err) = totals();
  }

  // Canonical reduction in creation order.
  std::sort(heap.begin(), heap.end(),
            [](const Region& a, const Region& b) { return a.id < b.id; });
  double v = 0, vc = 0, e = 0, ec = 0;
  for (const auto& r : heap) {
    quad_detail::kahan_add(r.value, v, vc);
    quad_detail::kahan_add(r.error, e, ec);
  }
  QuadratureResult out;
  out.value = v;
  out.error_estimate = e;
  out.n_evals = evals;
  out.converged = true;
  return out;
}

// --------------------------------------------------------------------------
// Spherical coordinates
// --------------------------------------------------------------------------

namespace quad_detail {

/// Direction on S^{d-1} from d-1 angles; the first angle is measured from the
/// pole e_d, so restricting it to [0, pi/2] gives the upper hemisphere.
/// Returns the angular Jacobian prod_j sin^{d-1-j}(theta_j).
inline double sphere_direction(int d, const double* ang, Vec* dir) {
  Vec& x = *dir;
  x = Vec::zero(d);
  if (d == 2) {
    x[1] = std::cos(ang[0]);
    x[0] = std::sin(ang[0]);
    return 1.0;
  }
  double jac = 1.0, sprod = 1.0;
  for (int j = 0; j < d - 2; ++j) {
    const double th = ang[j];
    x[d - 1 - j] = sprod * std::cos(th);
    jac *= std::pow(std::sin(th), d - 2 - j);
    sprod *= std::sin(th);
  }
  x[1] = sprod * std::cos(ang[d - 2]);
  x[0] = sprod * std::sin(ang[d - 2]);
  return jac;
}

/// Angle box for S^{d-1}; hemisphere restricts the polar angle.
inline void sphere_angle_box(int d, bool hemisphere, Vec* lo, Vec* hi) {
  *lo = Vec::zero(d - 1);
  *hi = Vec::zero(d - 1);
  if (d == 2) {
    (*lo)[0] = hemisphere ? -0.5 * kPi : -kPi;
    (*hi)[0] = hemisphere ? 0.5 * kPi : kPi;
    return;
  }
  (*lo)[0] = 0.0;
  (*hi)[0] = hemisphere ? 0.5 * kPi : kPi;
  for (int j = 1; j < d - 2; ++j) {
    (*lo)[j] = 0.0;
    (*hi)[j] = kPi;
  }
  (*lo)[d - 2] = 0.0;
  (*hi)[d - 2] = 2.0 * kPi;
}

}  // namespace quad_detail

// --------------------------------------------------------------------------
// Domain-specific integrators
// --------------------------------------------------------------------------

/// Integral over the half-ball B_R^+ = {|x| <= R, t >= 0} in dimension n.
/// Polar map (r, angles); the integrand sees Cartesian points.
template <class F>
QuadratureResult integrate_half_ball(int n, const F& f, double R, const QuadratureSpec& spec) {
  require_dimension(n);
  if (!(R > 0.0)) throw std::invalid_argument("integrate_half_ball: R must be > 0");
  Vec alo, ahi;
  quad_detail::sphere_angle_box(n, /*hemisphere=*/true, &alo, &ahi);
  Vec lo(n), hi(n);
  lo[0] = 0.0;
  hi[0] = R;
  for (int i = 0; i < n - 1; ++i) {
    lo[i + 1] = alo[i];
    hi[i + 1] = ahi[i];
  }
  auto g = [n, &f](const Vec& q) {
    Vec dir(n);
    const double jac = quad_detail::sphere_direction(n, q.data() + 1, &dir);
    const double r = q[0];
    return f(r * dir) * std::pow(r, n - 1) * jac;
  };
  return integrate_box(g, lo, hi, spec);
}

/// Integral over the half-shell {R1 <= |x| <= R2, t >= 0}.
template <class F>
QuadratureResult integrate_half_shell(int n, const F& f, double R1, double R2,
                                      const QuadratureSpec& spec) {
  require_dimension(n);
  if (!(0.0 <= R1 && R1 < R2)) throw std::invalid_argument("integrate_half_shell: bad radii");
  Vec alo, ahi;
  quad_detail::sphere_angle_box(n, /*hemisphere=*/true, &alo, &ahi);
  Vec lo(n), hi(n);
  lo[0] = R1;
  hi[0] = R2;
  for (int i = 0; i < n - 1; ++i) {
    lo[i + 1] = alo[i];
    hi[i + 1] = ahi[i];
  }
  auto g = [n, &f](const Vec& q) {
    Vec dir(n);
    const double jac = quad_detail::sphere_direction(n, q.data() + 1, &dir);
    return f(q[0] * dir) * std::pow(q[0], n - 1) * jac;
  };
  return integrate_box(g, lo, hi, spec);
}

namespace quad_detail {

/// Radial compactification r(q) = r0 (q/(1-q))^2 on q in [0,1): q = 1/2 maps
/// to r0, and polynomially decaying integrands with expansions in 1/r become
/// smooth up to q = 1 (the squared map also flattens half-integer decay
/// exponents, which a linear-fractional map would leave with a cusp).
inline double radial_map(double q, double r0, double* drdq) {
  const double om = 1.0 - q;
  const double u = q / om;
  *drdq = 2.0 * r0 * u / (om * om);
  return r0 * u * u;
}

/// Whole Euclidean d-space (or half-space) in one adaptive problem, so the
/// global tolerance applies to core and tail together.
template <class F>
QuadratureResult integrate_radial_compactified(int d, const F& f, double r0, bool hemisphere,
                                               const QuadratureSpec& spec) {
  Vec alo, ahi;
  sphere_angle_box(d, hemisphere, &alo, &ahi);
  Vec lo(d), hi(d);
  lo[0] = 0.0;
  hi[0] = 1.0;
  for (int i = 0; i < d - 1; ++i) {
    lo[i + 1] = alo[i];
    hi[i + 1] = ahi[i];
  }
  auto g = [d, r0, &f](const Vec& q) {
    if (q[0] >= 1.0) return 0.0;
    double drdq;
    const double r = radial_map(q[0], r0, &drdq);
    Vec dir(d);
    const double jac = sphere_direction(d, q.data() + 1, &dir);
    return f(r * dir) * std::pow(r, d - 1) * jac * drdq;
  };
  return integrate_box(g, lo, hi, spec);
}

template <class F>
QuadratureResult integrate_interval_1d(const F& f, double a, double b,
                                       const QuadratureSpec& spec) {
  Vec lo(1), hi(1);
  lo[0] = a;
  hi[0] = b;
  auto g = [&f](const Vec& q) { return f(q[0]); };
  return integrate_box(g, lo, hi, spec);
}

}  // namespace quad_detail

/// Integral over the unbounded half-space R_+^n.
template <class F>
QuadratureResult integrate_half_space(int n, const F& f, const QuadratureSpec& spec) {
  require_dimension(n);
  return quad_detail::integrate_radial_compactified(n, f, spec.r0, true, spec);
}

/// Integral over all of R^n.
template <class F>
QuadratureResult integrate_full_space(int n, const F& f, const QuadratureSpec& spec) {
  require_dimension(n);
  return quad_detail::integrate_radial_compactified(n, f, spec.r0, false, spec);
}

/// Integral over the bounded boundary patch Sigma_R = {|x'| <= R} in R^{n-1}.
/// The integrand receives the (n-1)-dimensional tangential coordinates.
template <class F>
QuadratureResult integrate_boundary_disk(int n, const F& f, double R,
                                         const QuadratureSpec& spec) {
  require_dimension(n);
  const int d = n - 1;
  if (d == 1) {
    auto g = [&f](double s) {
      Vec x(1);
      x[0] = s;
      return f(x);
    };
    return quad_detail::integrate_interval_1d(g, -R, R, spec);
  }
  Vec alo, ahi;
  quad_detail::sphere_angle_box(d, false, &alo, &ahi);
  Vec lo(d), hi(d);
  lo[0] = 0.0;
  hi[0] = R;
  for (int i = 0; i < d - 1; ++i) {
    lo[i + 1] = alo[i];
    hi[i + 1] = ahi[i];
  }
  auto g = [d, &f](const Vec& q) {
    Vec dir(d);
    const double jac = quad_detail::sphere_direction(d, q.data() + 1, &dir);
    return f(q[0] * dir) * std::pow(q[0], d - 1) * jac;
  };
  return integrate_box(g, lo, hi, spec);
}

/// Integral over the whole boundary hyperplane R^{n-1}, radius compactified.
template <class F>
QuadratureResult integrate_boundary_plane(int n, const F& f, const QuadratureSpec& spec) {
  require_dimension(n);
  const int d = n - 1;
  if (d == 1) {
    const double r0 = spec.r0;
    auto g = [&f, r0](double q) {
      if (q >= 1.0) return 0.0;
      double drdq;
      const double r = quad_detail::radial_map(q, r0, &drdq);
      Vec xp(1), xm(1);
      xp[0] = r;
      xm[0] = -r;
      return (f(xp) + f(xm)) * drdq;
    };
    return quad_detail::integrate_interval_1d(g, 0.0, 1.0, spec);
  }
  return quad_detail::integrate_radial_compactified(d, f, spec.r0, false, spec);
}

/// Surface integral over the hemisphere dB_R^+ = {|x| = R, t > 0}: spherical
/// product rule (Gauss-Legendre in the polar angles, trapezoid in the
/// periodic azimuth), doubled until the embedded estimate meets tolerance.
template <class F>
QuadratureResult integrate_hemisphere(int n, const F& f, double R, const QuadratureSpec& spec) {
  require_dimension(n);
  if (!(R > 0.0)) throw std::invalid_argument("integrate_hemisphere: R must be > 0");

  auto product_rule = [n, R, &f](int m, long* evals) -> double {
    const auto& [nodes, weights] = quad_detail::gauss_legendre(m);
    const int n_polar = (n == 2) ? 1 : n - 2;
    std::array<int, kMaxDim> idx{};
    double sum = 0.0;
    Vec ang(n - 1);
    Vec dir(n);
    while (true) {
      double wgt = 1.0;
      for (int j = 0; j < n_polar; ++j) {
        double a, b;
        if (n == 2) {
          a = -0.5 * kPi;
          b = 0.5 * kPi;
        } else {
          a = 0.0;
          b = (j == 0) ? 0.5 * kPi : kPi;
        }
        ang[j] = 0.5 * (a + b) + 0.5 * (b - a) * nodes[idx[j]];
        wgt *= 0.5 * (b - a) * weights[idx[j]];
      }
      if (n > 2) {
        // periodic azimuth: trapezoid = uniform points, spectrally accurate
        ang[n - 2] = 2.0 * kPi * idx[n_polar] / m;
        wgt *= 2.0 * kPi / m;
      }
      const double jac = quad_detail::sphere_direction(n, ang.data(), &dir);
      sum += wgt * jac * f(R * dir);
      ++*evals;
      int c = 0;
      const int dims = (n == 2) ? 1 : n - 1;
      while (c < dims && ++idx[c] == m) idx[c++] = 0;
      if (c == dims) break;
    }
    return sum * std::pow(R, n - 1);
  };

  QuadratureResult out;
  int m = 8;
  double coarse = product_rule(m, &out.n_evals);
  while (true) {
    const double fine = product_rule(2 * m, &out.n_evals);
    out.value = fine;
    out.error_estimate = std::fabs(fine - coarse);
    if (out.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(fine))) {
      out.converged = true;
      return out;
    }
    const int dims = (n == 2) ? 1 : n - 1;
    if (out.n_evals + 2 * std::pow(4.0 * m, dims) > static_cast<double>(spec.max_evals)) {
      out.converged = false;
      return out;
    }
    coarse = fine;
    m *= 2;
  }
}

// --------------------------------------------------------------------------
// Analytic tail bounds
// --------------------------------------------------------------------------

enum class TailRegion { interior, boundary };

/// Bound on a discarded tail integral of prefactor * |x|^{-decay_exponent}:
///   interior:  over {|x| > R} in the half-space,
///   boundary:  over {|x'| > R} in the boundary hyperplane.
inline double tail_bound(double decay_exponent, double prefactor, double R, int n,
                         TailRegion region) {
  require_dimension(n);
  if (!(R > 0.0)) throw std::invalid_argument("tail_bound: R must be > 0");
  if (region == TailRegion::interior) {
    if (!(decay_exponent > n))
      throw std::invalid_argument("tail_bound: non-integrable interior exponent");
    return prefactor * 0.5 * sphere_area(n) * std::pow(R, n - decay_exponent) /
           (decay_exponent - n);
  }
  const int d = n - 1;
  if (!(decay_exponent > d))
    throw std::invalid_argument("tail_bound: non-integrable boundary exponent");
  return prefactor * sphere_area(d) * std::pow(R, d - decay_exponent) / (decay_exponent - d);
}

}  // namespace onofri
