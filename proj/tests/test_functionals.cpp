#include <catch2/catch.hpp>

#include <fstream>
#include <sstream>

#include "onofri/functionals.hpp"
#include "onofri/pde_checks.hpp"
#include "onofri/test_fields.hpp"

using namespace onofri;

namespace {

QuadratureSpec tight_spec(double r0 = 4.0) {
  QuadratureSpec s;
  s.rel_tol = 1e-9;
  s.abs_tol = 1e-11;
  s.r0 = r0;
  return s;
}

// Pinned regression values, loaded from the versioned fixtures file.
double fixture(const std::string& key) {
  std::ifstream in("fixtures/pinned.txt");
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    k.erase(0, k.find_first_not_of(" \t"));
    k.erase(k.find_last_not_of(" \t") + 1);
    if (k == key) return std::stod(line.substr(eq + 1));
  }
  FAIL("missing fixture key: " + key);
  return 0.0;
}

}  // namespace

TEST_CASE("left side at constants", "[functionals]") {
  for (int n : {2, 3}) {
    auto spec = tight_spec();
    FunctionalValue z = onofri_lhs(constant_field(n, 0.0), spec);
    REQUIRE(z.converged);
    CHECK(std::fabs(z.value) < 1e-9);
    FunctionalValue c = onofri_lhs(constant_field(n, 2.7), spec);
    CHECK(std::fabs(c.value) < 1e-8);
    CHECK(c.tail_verified);
  }
}

TEST_CASE("left side of the extremal with matching constant", "[functionals]") {
  // log int e^w dmu = log(n^{n-1} sigma_{n-1}/2) at the matching C~
  for (int n : {2, 3}) {
    ScalarField w = onofri_extremal_w(n, {1.7, Vec::zero(n - 1), matching_c_tilde(n)});
    auto spec = tight_spec(4.0 * 2.7);
    FunctionalValue e = boundary_exp_mass(w, spec);
    REQUIRE(e.converged);
    CHECK(std::log(e.value) == Approx(matching_c_tilde(n)).epsilon(1e-8));
  }
}

TEST_CASE("kernel energy basics", "[functionals]") {
  auto spec = tight_spec();
  // constants carry zero energy
  FunctionalValue z = kn_energy(constant_field(2, 5.0), spec);
  REQUIRE(z.converged);
  CHECK(std::fabs(z.value) < 1e-10);

  // scaled extremal has strictly positive energy
  FunctionalValue e = kn_energy(onofri_extremal_w(2, {2.0, Vec::zero(1), 0.0}), tight_spec(12.0));
  REQUIRE(e.converged);
  CHECK(e.value > 1e-2);

  // Monte Carlo cross-check on the Gaussian bump (seeded, 3 sigma)
  ScalarField w = gaussian_bump(2);
  FunctionalValue q = kn_energy(w, spec);
  REQUIRE(q.converged);
  Rng rng(90210);
  const double L = 7.0;
  const long N = 10'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < N; ++i) {
    Vec x(2);
    x[0] = rng.uniform(-L, L);
    x[1] = rng.uniform(0.0, L);
    const double v = halfspace_kernel(2, HalfSpacePoint::from_vec(x), w.grad(x));
    sum += v;
    sum2 += v * v;
  }
  const double vol = 2.0 * L * L;
  const double mean = sum / N;
  const double sd = std::sqrt((sum2 / N - mean * mean) / N);
  CHECK(std::fabs(q.value - vol * mean) <= 3.0 * vol * sd);
}

TEST_CASE("deficit vanishes on the extremal family", "[functionals]") {
  for (int n : {2, 3}) {
    for (double lambda : {0.5, 2.0}) {
      for (double ct : {0.0, matching_c_tilde(n)}) {
        Vec x0 = Vec::zero(n - 1);
        x0[0] = 0.7;
        auto spec = tight_spec(4.0 * (1.0 + lambda));
        DeficitReport d = deficit(onofri_extremal_w(n, {lambda, x0, ct}), spec);
        REQUIRE(d.converged);
        REQUIRE(d.tail_verified);
        CHECK(std::fabs(d.deficit) < 1e-6);
      }
    }
  }
}

TEST_CASE("deficit is shift invariant", "[functionals][prop]") {
  auto spec = tight_spec();
  ScalarField w = gaussian_bump(2, 0.9, Vec{0.4, 0.3}, 1.1);
  const DeficitReport base = deficit(w, spec);
  for (double c : {-3.0, 1.5}) {
    const DeficitReport shifted = deficit(shift_field(w, c), spec);
    CHECK(shifted.deficit == Approx(base.deficit).margin(1e-8));
  }
}

TEST_CASE("deficit nonnegative on the seeded suite", "[functionals][prop][slow]") {
  for (int n : {2, 3}) {
    auto fields = seeded_field_suite(n, 10);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      QuadratureSpec spec;
      spec.rel_tol = 1e-8;
      spec.abs_tol = 1e-10;
      spec.r0 = 12.0;
      DeficitReport d = deficit(fields[i], spec);
      INFO("field " << i << " in dimension " << n);
      REQUIRE(d.converged);
      REQUIRE(d.deficit >= -1e-8);
    }
  }
}

TEST_CASE("pinned regression deficits", "[functionals]") {
  // values first computed by the adaptive quadrature at rel_tol 1e-9 and
  // frozen; drift beyond 10x the recorded error budget is a regression
  auto spec = tight_spec();
  DeficitReport d2 = deficit(gaussian_bump(2), spec);
  REQUIRE(d2.converged);
  CHECK(d2.deficit == Approx(fixture("deficit.gauss.n2")).margin(1e-8));
  DeficitReport d3 = deficit(gaussian_bump(3), spec);
  REQUIRE(d3.converged);
  CHECK(d3.deficit == Approx(fixture("deficit.gauss.n3")).margin(1e-8));
}

TEST_CASE("quotient equals the inverse sharp constant off the fixed point", "[functionals]") {
  // lambda != 1 or shifted center: Q = n^n sigma_{n-1}/2
  {
    QuotientResult q = quotient_Q(onofri_extremal_w(2, {2.0, Vec::zero(1), 0.0}),
                                  tight_spec(12.0));
    REQUIRE(q.defined);
    CHECK(q.value == Approx(4.0 * kPi).epsilon(1e-6));
  }
  {
    QuotientResult q = quotient_Q(onofri_extremal_w(3, {0.5, Vec::zero(2), 0.0}),
                                  tight_spec(6.0));
    REQUIRE(q.defined);
    CHECK(q.value == Approx(54.0 * kPi).epsilon(1e-6));
  }
  // constants: undefined, signalled
  QuotientResult qc = quotient_Q(constant_field(2, 5.0), tight_spec());
  CHECK_FALSE(qc.defined);
}

TEST_CASE("weighted norm components", "[functionals]") {
  auto spec = tight_spec();
  // zero field
  WeightedNorm z = weighted_norm(constant_field(2, 0.0), spec);
  CHECK(std::fabs(z.b1.value) < 1e-10);
  CHECK(std::fabs(z.gn.value) < 1e-10);
  CHECK(std::fabs(z.cross.value) < 1e-10);

  // extremal members: all three finite over a seeded grid
  Rng rng(77);
  for (int n : {2, 3}) {
    for (int i = 0; i < 3; ++i) {
      OnofriTraceExtremal prm{rng.uniform(0.5, 2.0), rng.vector(n - 1, -1, 1),
                              rng.uniform(-1.0, 1.0)};
      WeightedNorm nm = weighted_norm(onofri_extremal_w(n, prm),
                                      tight_spec(4.0 * (1.0 + prm.lambda)));
      REQUIRE(nm.b1.converged);
      REQUIRE(nm.gn.converged);
      REQUIRE(nm.cross.converged);
      CHECK(nm.b1.value < 50.0);
      CHECK(nm.gn.value < 50.0);
      CHECK(nm.cross.value < 50.0);
      CHECK(nm.b1.tail_verified);
      CHECK(nm.gn.tail_verified);
      CHECK(nm.cross.tail_verified);
    }
  }

  // n=2: the cross term carries exponent zero, so it is the plain Dirichlet norm
  ScalarField w = gaussian_bump(2, 0.8, Vec{0.2, 0.5}, 1.3);
  WeightedNorm nm = weighted_norm(w, spec);
  auto dir = [&w](const Vec& x) { return norm2(w.grad(x)); };
  QuadratureResult d = integrate_half_space(2, dir, spec);
  CHECK(nm.cross.value == Approx(std::sqrt(d.value)).epsilon(1e-8));
}

TEST_CASE("interior exponential energy", "[functionals]") {
  auto spec = tight_spec();
  // w == 0, n=2: int mu_2^2 dx, cross-checked by iterated 1-D quadrature
  FunctionalValue e = energy_exp_interior(constant_field(2, 0.0), spec);
  REQUIRE(e.converged);
  // oracle: (1/pi^2) int_0^inf int_R ((1+t)^2+s^2)^{-2} ds dt
  //       = (1/pi^2) int_0^inf (pi/2) (1+t)^{-3} dt = 1/(4 pi)
  CHECK(e.value == Approx(1.0 / (4.0 * kPi)).epsilon(1e-8));

  // extremal: finite
  FunctionalValue ee = energy_exp_interior(onofri_extremal_w(2, {1.0, Vec::zero(1), 0.0}),
                                           spec);
  CHECK(ee.value == Approx(1.0 / (4.0 * kPi)).epsilon(1e-8));

  // linear growth diverges: flagged as tail-unverified
  ScalarField lin;
  lin.dim = 2;
  lin.value = [](const Vec& x) { return norm(x); };
  lin.grad = [](const Vec& x) {
    const double r = std::max(norm(x), 1e-12);
    return (1.0 / r) * x;
  };
  FunctionalValue bad = energy_exp_interior(lin, spec);
  CHECK_FALSE(bad.tail_verified);
}

TEST_CASE("interior energy matches the transformed interior mass", "[functionals]") {
  // e^{n w/(n-1)} mu^{n/(n-1)} = e^{n u/(n-1)} under u = log mu + w, so the
  // interior energy of the matched extremal equals the interior mass of the
  // classified solution (pi for n = 2, lambda = 1)
  for (int n : {2, 3}) {
    const double lambda = 1.3;
    Vec x0 = Vec::zero(n - 1);
    x0[0] = 0.4;
    ScalarField w = onofri_extremal_w(n, {lambda, x0, matching_c_tilde(n)});
    auto spec = tight_spec(4.0 * (1.0 + lambda));
    FunctionalValue e = energy_exp_interior(w, spec);
    MassReport m = finite_mass(liouville_solution_u(n, {lambda, x0}), spec);
    REQUIRE(e.converged);
    REQUIRE(m.interior.converged);
    CHECK(e.value == Approx(m.interior.value).epsilon(1e-7));
  }
  ScalarField w1 = onofri_extremal_w(2, {1.0, Vec::zero(1), matching_c_tilde(2)});
  FunctionalValue e1 = energy_exp_interior(w1, tight_spec(8.0));
  CHECK(e1.value == Approx(kPi).epsilon(1e-8));
}

TEST_CASE("finite mass of the classified solution", "[functionals]") {
  // boundary mass n^n omega_n / 2; interior mass pi for n=2, lambda=1
  {
    auto spec = tight_spec(8.0);
    MassReport m = finite_mass(liouville_solution_u(2, {1.0, Vec::zero(1)}), spec);
    REQUIRE(m.boundary.converged);
    REQUIRE(m.interior.converged);
    CHECK(m.boundary.value == Approx(2.0 * kPi).margin(1e-8));
    CHECK(m.interior.value == Approx(kPi).epsilon(1e-8));
    CHECK(m.boundary.tail_verified);
  }
  {
    auto spec = tight_spec(8.0);
    MassReport m = finite_mass(liouville_solution_u(3, {1.0, Vec::zero(2)}), spec);
    REQUIRE(m.boundary.converged);
    CHECK(m.boundary.value == Approx(18.0 * kPi).epsilon(1e-6));
  }
}

TEST_CASE("full-space inequality", "[functionals]") {
  // probability normalization of nu_n
  for (int n : {2, 3}) {
    auto spec = tight_spec();
    auto f = [n](const Vec& x) { return weight_nu(n, x); };
    QuadratureResult q = integrate_full_space(n, f, spec);
    REQUIRE(q.converged);
    CHECK(q.value == Approx(1.0).margin(1e-8));
  }

  auto spec = tight_spec();
  // both sides vanish at constants
  DeficitReport z = fullspace_deficit(constant_field(2, 0.7), spec);
  REQUIRE(z.converged);
  CHECK(std::fabs(z.lhs) < 1e-8);
  CHECK(std::fabs(z.rhs) < 1e-10);

  // Gaussian bump: positive deficit
  DeficitReport d = fullspace_deficit(gaussian_bump(2), spec);
  REQUIRE(d.converged);
  CHECK(d.deficit >= 0.0);
  CHECK(d.deficit > 1e-4);

  // n=2 closed form: H_2 energy is the Dirichlet integral over 4
  ScalarField w = gaussian_bump(2, 0.6, Vec{0.1, -0.2}, 0.9);
  FunctionalValue h = hn_energy(w, spec);
  auto dir = [&w](const Vec& x) { return 0.25 * norm2(w.grad(x)); };
  QuadratureResult dq = integrate_full_space(2, dir, spec);
  CHECK(h.value == Approx(dq.value).epsilon(1e-8));
}

TEST_CASE("deficit converges with the error estimate on extremals", "[functionals][prop]") {
  // refinement shrinks |deficit| consistently with the reported error
  ScalarField w = onofri_extremal_w(2, {2.0, Vec{0.7}, 0.0});
  for (double rel : {1e-5, 1e-7, 1e-9}) {
    QuadratureSpec spec;
    spec.rel_tol = rel;
    spec.abs_tol = rel * 1e-2;
    spec.r0 = 12.0;
    DeficitReport d = deficit(w, spec);
    REQUIRE(d.converged);
    CHECK(std::fabs(d.deficit) <= 10.0 * (d.total_error() + 1e-14));
  }
}
