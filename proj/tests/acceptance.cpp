// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code 0 only if all pass.
//
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "onofri/asymptotics.hpp"
#include "onofri/expr.hpp"
#include "onofri/functionals.hpp"
#include "onofri/limit_study.hpp"
#include "onofri/pde_checks.hpp"
#include "onofri/report.hpp"
#include "onofri/test_fields.hpp"

using namespace onofri;

namespace {

int g_failures = 0;

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void line(int id, const char* name, bool pass, const std::string& detail, double secs) {
  std::printf("[%s] %02d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

QuadratureSpec spec_for(double r0, double rel = 1e-8, double abs = 1e-10) {
  QuadratureSpec s;
  s.rel_tol = rel;
  s.abs_tol = abs;
  s.max_evals = 40'000'000;
  s.r0 = r0;
  return s;
}

// 1. sharp constant in dimension two
void c01() {
  const double t0 = now();
  const double got = alpha_n(2);
  const double want = 1.0 / (4.0 * kPi);
  const bool ok = std::fabs(got - want) <= 1e-14;
  line(1, "sharp-constant-alpha2", ok,
       fmt("alpha_2=%.16g ref=%.16g tol=1e-14", got, want), now() - t0);
}

// 2. equality of the trace inequality on the extremal family
void c02() {
  const double t0 = now();
  double worst = 0.0;
  bool ok = true;
  for (int n : {2, 3})
    for (double lambda : {0.5, 1.0, 2.0})
      for (int shift : {0, 1})
        for (int ct_case : {0, 1}) {
          Vec x0 = Vec::zero(n - 1);
          if (shift) x0[0] = 0.7;
          const double ct = ct_case ? matching_c_tilde(n) : 0.0;
          DeficitReport d = deficit(onofri_extremal_w(n, {lambda, x0, ct}),
                                    spec_for(4.0 * (1.0 + lambda)));
          ok = ok && d.converged && std::fabs(d.deficit) < 1e-6;
          worst = std::max(worst, std::fabs(d.deficit));
        }
  line(2, "extremal-equality", ok, fmt("24 cases, worst |deficit|=%.2e tol=1e-06", worst),
       now() - t0);
}

// 3. inequality direction on the seeded admissible suite
void c03() {
  const double t0 = now();
  double worst = 1e300;
  bool ok = true;
  int cases = 0;
  for (int n : {2, 3}) {
    for (const auto& w : seeded_field_suite(n, 10)) {
      DeficitReport d = deficit(w, spec_for(12.0));
      ok = ok && d.converged && d.deficit >= -1e-8;
      worst = std::min(worst, d.deficit);
      ++cases;
    }
  }
  line(3, "inequality-direction", ok,
       fmt("%d seeded fields, min deficit=%.3e floor=-1e-08", cases, worst), now() - t0);
}

// 4. best constant through the quotient
void c04() {
  const double t0 = now();
  bool ok = true;
  double worst = 0.0;
  struct Case {
    int n;
    double lambda;
    double shift;
  };
  for (const Case& c : {Case{2, 2.0, 0.0}, Case{2, 1.0, 0.7}, Case{3, 0.5, 0.0},
                        Case{3, 1.0, 0.5}}) {
    Vec x0 = Vec::zero(c.n - 1);
    x0[0] = c.shift;
    QuotientResult q = quotient_Q(onofri_extremal_w(c.n, {c.lambda, x0, 0.0}),
                                  spec_for(4.0 * (1.0 + c.lambda), 1e-9, 1e-11));
    const double ref = 0.5 * std::pow(double(c.n), c.n) * sphere_area(c.n);
    const double rel = std::fabs(q.value - ref) / ref;
    ok = ok && q.defined && rel < 1e-4;
    worst = std::max(worst, rel);
  }
  line(4, "best-constant-quotient", ok, fmt("4 cases, worst rel gap=%.2e tol=1e-04", worst),
       now() - t0);
}

// 5. boundary mass and recovered decay exponent
void c05() {
  const double t0 = now();
  bool ok = true;
  double worst_mass = 0.0, worst_beta = 0.0;
  for (int n : {2, 3}) {
    MassReport m = finite_mass(liouville_solution_u(n, {1.0, Vec::zero(n - 1)}),
                               spec_for(8.0, 1e-9, 1e-11));
    const double ref = boundary_mass_reference(n);
    const double rel = std::fabs(m.boundary.value - ref) / ref;
    const double beta_gap = std::fabs(beta_from_mass(m.boundary.value, n) - n);
    ok = ok && m.boundary.converged && rel < 1e-6 && beta_gap < 1e-6;
    worst_mass = std::max(worst_mass, rel);
    worst_beta = std::max(worst_beta, beta_gap);
  }
  line(5, "boundary-mass-beta", ok,
       fmt("mass rel=%.2e beta gap=%.2e tol=1e-06", worst_mass, worst_beta), now() - t0);
}

// 6. pointwise residuals, finite-difference second opinion, negative controls
void c06() {
  const double t0 = now();
  bool ok = true;
  double worst = 0.0;
  Rng rng(42);
  for (int n : {2, 3, 4}) {
    const LiouvilleSolution prm{1.0, Vec::zero(n - 1)};
    std::vector<HalfSpacePoint> pts;
    std::vector<Vec> bpts;
    for (int i = 0; i < 1000; ++i) {
      pts.push_back(rng.interior_point(n, 10.0));
      bpts.push_back(rng.vector(n - 1, -10.0, 10.0));
    }
    const double ri = interior_residual_closed(n, prm, pts).max_abs;
    const double rb = neumann_residual(n, prm, bpts).max_abs;
    ok = ok && ri < 1e-12 && rb < 1e-12;
    worst = std::max({worst, ri, rb});

    // FD second opinion scales like h^2
    std::vector<HalfSpacePoint> fd_pts(pts.begin(), pts.begin() + 50);
    const double fd1 = interior_residual_fd(n, prm, fd_pts, 2e-4).max_abs;
    const double fd2 = interior_residual_fd(n, prm, fd_pts, 1e-4).max_abs;
    const double ratio = fd1 / std::max(fd2, 1e-300);
    ok = ok && ratio > 2.0 && ratio < 8.0;

    // negative control: the shifted field fails the boundary condition
    ScalarField u = liouville_solution_u(n, prm);
    const Vec x = HalfSpacePoint::boundary(bpts[0]).to_vec();
    const double broken =
        std::fabs(liouville_flux(n, prm, x)[n - 1] + std::exp(u.value(x) + 0.3));
    ok = ok && broken > 1e-6;
  }
  line(6, "pde-residuals", ok,
       fmt("n=2,3,4 worst residual=%.2e tol=1e-12, FD O(h^2), controls fire", worst),
       now() - t0);
}

// 7. Pohozaev identity over the case grid
void c07() {
  const double t0 = now();
  bool ok = true;
  double worst = 0.0;
  int cases = 0;
  for (int n : {2, 3})
    for (double lambda : {0.5, 1.0, 2.0})
      for (int variant : {0, 1}) {
        const double R = variant ? 2.5 : 5.0;
        Vec y = Vec::zero(n);
        if (variant) y[0] = 1.0;
        PohozaevReport p = pohozaev_check(n, {lambda, Vec::zero(n - 1)}, R, y,
                                          spec_for(4.0 * (1.0 + lambda), 1e-9, 1e-11));
        ok = ok && p.converged && std::fabs(p.gap) < 1e-5;
        worst = std::max(worst, std::fabs(p.gap));
        ++cases;
      }
  line(7, "pohozaev-identity", ok, fmt("%d cases, worst |gap|=%.2e tol=1e-05", cases, worst),
       now() - t0);
}

// 8. stress tensor vanishes on the classified family
void c08() {
  const double t0 = now();
  bool ok = true;
  double worst = 0.0;
  Rng rng(43);
  for (int n : {2, 3, 4}) {
    const LiouvilleSolution prm{1.0, Vec::zero(n - 1)};
    for (int i = 0; i < 100; ++i) {
      const double e = stress_tensor_E(n, prm, rng.interior_point(n, 8.0)).max_abs();
      worst = std::max(worst, e);
      ok = ok && e < 1e-10;
    }
  }
  line(8, "stress-tensor", ok, fmt("300 points, max |E_ij|=%.2e tol=1e-10", worst),
       now() - t0);
}

// 9. sharp asymptotic profile and gradient decay rates
void c09() {
  const double t0 = now();
  bool ok = true;
  const std::vector<double> radii{1e2, 1e3, 1e4, 1e5};
  double worst_scaled = 0.0;
  for (int n : {2, 3}) {
    const LiouvilleSolution prm{1.0, Vec::zero(n - 1)};
    ProfileReport prof = sharp_profile(n, prm, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double scaled = prof.sup_deviation[i] * radii[i];
      worst_scaled = std::max(worst_scaled, scaled);
      ok = ok && scaled < 10.0 * n;
    }
    ProfileReport grad = gradient_decay(n, prm, radii);
    for (std::size_t i = 1; i < radii.size(); ++i) {
      const double ratio = grad.grad_decay[i - 1] / grad.grad_decay[i];
      ok = ok && ratio > 5.0 && ratio < 20.0;  // one decade: 10 within factor 2
    }
  }
  line(9, "sharp-asymptotics", ok,
       fmt("deviation*R bounded (max %.2f), gradient scales as 1/R", worst_scaled),
       now() - t0);
}

// 10. radial barrier: ODE residual, sandwich, sign checks and controls
void c10() {
  const double t0 = now();
  bool ok = true;
  double worst_ode = 0.0;
  for (int n : {2, 3}) {
    auto sp = default_supersolution(n);
    bool sandwich = true;
    for (int i = 0; i < 50; ++i) {
      const double r = sp.R1 * std::pow(1.1, i + 1);
      worst_ode = std::max(worst_ode, std::fabs(phi_ode_residual(r, sp)));
      sandwich = sandwich && phi_sandwich_holds(r, sp);
    }
    ok = ok && worst_ode < 1e-6 && sandwich;

    auto samples = shell_samples(n, sp.R1, 2000);
    auto rep = supersolution_checks(sp, 0.9 * supersolution_c0_capacity(sp), samples);
    ok = ok && rep.boundary_ok && rep.interior_ok;

    // negative controls: halved a_eps violates admissibility; doubled C0
    // defeats the boundary chain
    auto bad = sp;
    bad.a_eps *= 0.5;
    bool raised = false;
    try {
      supersolution_checks(bad, 1.0, samples);
    } catch (const std::invalid_argument&) {
      raised = true;
    }
    auto inflated = supersolution_checks(sp, 2.0 * supersolution_c0_capacity(sp), samples);
    ok = ok && raised && !inflated.boundary_ok;
  }
  line(10, "radial-barrier", ok,
       fmt("ODE residual max=%.2e tol=1e-06, sandwich+signs hold, controls fire", worst_ode),
       now() - t0);
}

// 11. p -> n limit study
void c11() {
  const double t0 = now();
  bool ok = true;
  double worst_c = 0.0;
  for (int n : {3, 4}) {
    const double p = n - 1e-6;
    const double g0 = std::fabs(limit_c0p(n, p) - 0.5 * sphere_area(n));
    const double g1 =
        std::fabs(limit_c1p(n, p) - 0.5 * std::pow(double(n), n - 1) * sphere_area(n));
    ok = ok && g0 < 1e-3 && g1 < 1e-3;
    worst_c = std::max({worst_c, g0, g1});
  }

  Rng rng(44);
  double worst_rp = 0.0;
  for (int n : {2, 3}) {
    const HalfSpacePoint x = rng.interior_point(n, 3.0);
    const Vec g = rng.vector(n, -2, 2);
    const auto seq = rp_homogeneity_limit(n, x, g, default_p_sequence(n, 5));
    const double gap = std::fabs(seq.back() - halfspace_kernel(n, x, g));
    worst_rp = std::max(worst_rp, gap);
    ok = ok && gap < 1e-3;
  }

  const int n = 3;
  ScalarField w = gaussian_bump(n, 0.8, Vec{0.3, -0.2, 0.5}, 1.2);
  const auto s = spec_for(8.0, 1e-9, 1e-11);
  FunctionalValue target = sobolev_quotient_target(n, w, s);
  FunctionalValue q = sobolev_quotient_log(n, n - 1e-4, w, s);
  const double qgap = std::fabs(q.value - target.value);
  ok = ok && target.converged && q.converged && qgap < 1e-2;
  line(11, "limit-study", ok,
       fmt("constant gaps<=%.1e (1e-03), rp gap<=%.1e (1e-03), quotient gap=%.1e (1e-02)",
           worst_c, worst_rp, qgap),
       now() - t0);
}

// 12. equality of the Sobolev trace inequality at (n,p) = (3,2)
void c12() {
  const double t0 = now();
  FunctionalValue d = sobolev_trace_deficit(
      3, 2.0, sobolev_extremal_u(3, {2.0, 1.0, Vec::zero(2)}), spec_for(8.0, 1e-9, 1e-11));
  const bool ok = d.converged && std::fabs(d.value) < 1e-6;
  line(12, "sobolev-trace-equality", ok, fmt("|deficit|=%.2e tol=1e-06", std::fabs(d.value)),
       now() - t0);
}

// 13. byte-identical reports across thread counts
void c13() {
  const double t0 = now();
  auto run = [](int threads) {
    Report rep;
    QuadratureSpec s = spec_for(12.0);
    s.threads = threads;
    DeficitReport d = deficit(onofri_extremal_w(2, {2.0, Vec{0.7}, 0.0}), s);
    rep.check_abs("extremal_deficit", d.deficit, 0.0, RefSource::closed_form, 1e-6,
                  d.total_error());
    QuadratureSpec s3 = spec_for(8.0);
    s3.threads = threads;
    MassReport m = finite_mass(liouville_solution_u(3, {1.0, Vec::zero(2)}), s3);
    rep.check_rel("boundary_mass", m.boundary.value, boundary_mass_reference(3),
                  RefSource::closed_form, 1e-6, m.boundary.quad_error);
    PohozaevReport p = pohozaev_check(2, {1.0, Vec::zero(1)}, 5.0, Vec::zero(2), s);
    rep.check_abs("pohozaev_gap", p.gap, 0.0, RefSource::closed_form, 1e-5, p.quad_error);
    return to_json(rep);
  };
  const std::string r1 = run(1);
  const std::string r4 = run(4);
  const std::string r8 = run(8);
  const bool ok = (r1 == r4) && (r1 == r8);
  line(13, "thread-determinism", ok,
       fmt("%zu-byte JSON identical across 1/4/8 threads", r1.size()), now() - t0);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  auto want = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };

  if (want(1)) c01();
  if (want(2)) c02();
  if (want(3)) c03();
  if (want(4)) c04();
  if (want(5)) c05();
  if (want(6)) c06();
  if (want(7)) c07();
  if (want(8)) c08();
  if (want(9)) c09();
  if (want(10)) c10();
  if (want(11)) c11();
  if (want(12)) c12();
  if (want(13)) c13();

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
