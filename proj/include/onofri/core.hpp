#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace onofri {

/// Maximum ambient dimension supported by the fixed-capacity vector type.
/// The toolkit targets n <= 5; a little headroom is kept for derived quantities.
inline constexpr int kMaxDim = 8;

/// Fixed-capacity Euclidean vector. Dimension is a runtime value so the same
/// code paths serve n = 2..5 without templates leaking into every signature.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int n, double fill = 0.0) : n_(n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
    for (int i = 0; i < n_; ++i) v_[i] = fill;
  }
  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    if (n_ > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
    int i = 0;
    for (double x : xs) v_[i++] = x;
  }

  static Vec zero(int n) { return Vec(n, 0.0); }
  static Vec unit(int n, int axis) {
    Vec e(n, 0.0);
    e[axis] = 1.0;
    return e;
  }

  int size() const { return n_; }
  double& operator[](int i) { return v_[i]; }
  double operator[](int i) const { return v_[i]; }
  const double* data() const { return v_.data(); }
  double* data() { return v_.data(); }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n_; ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) v_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

 private:
  std::array<double, kMaxDim> v_{};
  int n_ = 0;
};

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * a[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

/// Small dense square matrix, same capacity policy as Vec.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n, double fill = 0.0) : n_(n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("Mat: dimension out of range");
    for (int i = 0; i < n_ * n_; ++i) m_[i] = fill;
  }
  int size() const { return n_; }
  double& operator()(int i, int j) { return m_[i * n_ + j]; }
  double operator()(int i, int j) const { return m_[i * n_ + j]; }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }
  double max_abs() const {
    double s = 0.0;
    for (int i = 0; i < n_ * n_; ++i) s = std::max(s, std::fabs(m_[i]));
    return s;
  }

 private:
  std::array<double, kMaxDim * kMaxDim> m_{};
  int n_ = 0;
};

/// Point (x', t) in the closed upper half-space, t >= 0.
/// Boundary points carry t == 0 exactly.
struct HalfSpacePoint {
  Vec x_prime;  // n-1 tangential coordinates
  double t = 0.0;

  HalfSpacePoint() = default;
  HalfSpacePoint(Vec xp, double tt) : x_prime(std::move(xp)), t(tt) {
    if (!(t >= 0.0)) throw std::invalid_argument("HalfSpacePoint: t must be >= 0");
  }

  int dim() const { return x_prime.size() + 1; }

  Vec to_vec() const {
    Vec x(dim());
    for (int i = 0; i < x_prime.size(); ++i) x[i] = x_prime[i];
    x[dim() - 1] = t;
    return x;
  }

  static HalfSpacePoint from_vec(const Vec& x) {
    Vec xp(x.size() - 1);
    for (int i = 0; i < xp.size(); ++i) xp[i] = x[i];
    return HalfSpacePoint(xp, x[x.size() - 1]);
  }

  static HalfSpacePoint boundary(Vec xp) { return HalfSpacePoint(std::move(xp), 0.0); }
};

inline void require_dimension(int n) {
  if (n < 2) throw std::invalid_argument("dimension must satisfy n >= 2");
  if (n > kMaxDim - 1) throw std::invalid_argument("dimension exceeds supported range");
}

/// splitmix64: tiny deterministic generator, identical output on every
/// platform. All sampling in the library and tests routes through this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller on splitmix output.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  Vec vector(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Random point in the open half-space with |x'| <= box, 0 < t <= box.
  HalfSpacePoint interior_point(int n, double box) {
    Vec xp = vector(n - 1, -box, box);
    double t = uniform(1e-3, box);
    return HalfSpacePoint(std::move(xp), t);
  }

  HalfSpacePoint boundary_point(int n, double box) {
    return HalfSpacePoint::boundary(vector(n - 1, -box, box));
  }

 private:
  std::uint64_t state_;
};

}  // namespace onofri
