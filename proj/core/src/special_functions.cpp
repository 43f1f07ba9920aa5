#include "channel/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "channel/errors.hpp"

namespace chan {

OddDimension OddDimension::make(int d) {
  if (d < 1 || d % 2 == 0) throw InvalidArgument("dimension must be an odd integer >= 1");
  OddDimension o;
  o.d = d;
  o.n = (d - 3) / 2;
  o.nu = (d - 2) / 2.0;
  o.mu = (d - 1) / 2;
  o.tau = (d - 1) * std::numbers::pi / 4.0;
  o.k = d / 4;
  o.k_tilde = (d + 2) / 4;
  return o;
}

namespace {

template <class T>
T series_reduced(int n, T z) {
  // j_n(z) / z^n = 1/(2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
  T pref = 1;
  for (int i = 1; i <= n; ++i) pref /= T(2 * i + 1);
  const T q = -z * z / 2;
  T term = 1, sum = 1;
  for (int k = 1; k < 500; ++k) {
    term *= q / (T(k) * T(2 * n + 2 * k + 1));
    sum += term;
    if (std::abs(term) <= std::numeric_limits<T>::epsilon() * std::abs(sum) * T(0.25)) break;
  }
  return pref * sum;
}

template <class T>
T series_jn(int n, T z) {
  T pref = 1;
  for (int i = 1; i <= n; ++i) pref *= z / T(2 * i + 1);
  if (pref == T(0)) return T(0);
  const T q = -z * z / 2;
  T term = 1, sum = 1;
  for (int k = 1; k < 500; ++k) {
    term *= q / (T(k) * T(2 * n + 2 * k + 1));
    sum += term;
    if (std::abs(term) <= std::numeric_limits<T>::epsilon() * std::abs(sum) * T(0.25)) break;
  }
  return pref * sum;
}

template <class T>
void exact_j01(T z, T& j0, T& j1) {
  const T s = std::sin(z), c = std::cos(z);
  j0 = s / z;
  j1 = s / (z * z) - c / z;
}

// Miller's algorithm: recur downward from a start index well above n and
// normalize against the exact j_0 or j_1, whichever is larger.
template <class T>
T miller_jn(int n, T z, T* next = nullptr) {
  const int start = n + 40 + static_cast<int>(z);
  T jp1 = 0, jk = std::numeric_limits<T>::min() * T(1e10);
  T at_n = 0, at_n1 = 0, at0 = 0, at1 = 0;
  for (int k = start; k >= 0; --k) {
    if (k == n) at_n = jk;
    if (k == n + 1) at_n1 = jk;
    if (k == 1) at1 = jk;
    if (k == 0) {
      at0 = jk;
      break;
    }
    const T jm1 = T(2 * k + 1) / z * jk - jp1;
    jp1 = jk;
    jk = jm1;
    if (std::abs(jk) > T(1e200)) {
      const T s = T(1e-200);
      jk *= s;
      jp1 *= s;
      at_n *= s;
      at_n1 *= s;
      at1 *= s;
    }
  }
  T e0, e1;
  exact_j01(z, e0, e1);
  const T scale = std::abs(e0) >= std::abs(e1) ? e0 / at0 : e1 / at1;
  if (next) *next = at_n1 * scale;
  return at_n * scale;
}

template <class T>
T upward_jn(int n, T z, T* next = nullptr) {
  T a, b;
  exact_j01(z, a, b);
  if (n == 0) {
    if (next) *next = b;
    return a;
  }
  for (int k = 1; k < n; ++k) {
    const T c = T(2 * k + 1) / z * b - a;
    a = b;
    b = c;
  }
  if (next) *next = T(2 * n + 1) / z * b - a;
  return b;
}

template <class T>
T jn_positive(int n, T z) {
  if (z < std::max(T(1), T(n) / 2)) return series_jn(n, z);
  if (z >= T(n)) return upward_jn(n, z);
  return miller_jn(n, z);
}

template <class T>
T jn_any(int n, T z) {
  if (n < 0) throw InvalidArgument("spherical Bessel order must be >= 0");
  if (!std::isfinite(static_cast<double>(z))) throw InvalidArgument("spherical Bessel argument must be finite");
  if (z == T(0)) return n == 0 ? T(1) : T(0);
  if (z < 0) {
    const T v = jn_positive(n, -z);
    return (n % 2 == 0) ? v : -v;
  }
  return jn_positive(n, z);
}

}  // namespace

double spherical_bessel(int n, double z) { return jn_any<double>(n, z); }

long double spherical_bessel_ld(int n, long double z) { return jn_any<long double>(n, z); }

void spherical_bessel_pair(int n, double z, double& jn, double& jn1) {
  if (n < 0) throw InvalidArgument("spherical Bessel order must be >= 0");
  if (z > 0 && z >= n + 1) {
    jn = upward_jn(n, z, &jn1);
    return;
  }
  if (z > 0 && z >= std::max(1.0, (n + 1) / 2.0)) {
    jn = miller_jn(n, z, &jn1);
    return;
  }
  jn = spherical_bessel(n, z);
  jn1 = spherical_bessel(n + 1, z);
}

std::pair<double, double> phi_psi(int n, double z) {
  const double j = spherical_bessel(n, z);
  return {z * j, z * z * j};
}

void reduced_bessel_pair(int n, double x, double& K, double& dK) {
  if (n < 0) throw InvalidArgument("spherical Bessel order must be >= 0");
  const double ax = std::abs(x);
  if (ax < std::max(1.0, n / 2.0)) {
    K = series_reduced(n, x);
    dK = -x * series_reduced(n + 1, x);
    return;
  }
  double jn, jn1;
  spherical_bessel_pair(n, ax, jn, jn1);
  const double xn = std::pow(ax, n);
  K = jn / xn;
  dK = -jn1 / xn;
  if (x < 0) dK = -dK;  // K is even in x
}

namespace {

// a_k(n) = (n+k)! / (2^k k! (n-k)!)
std::vector<double> hankel_coefficients(int n) {
  std::vector<double> a(n + 1);
  a[0] = 1;
  for (int k = 1; k <= n; ++k) a[k] = a[k - 1] * (double(n + k) * double(n - k + 1)) / (2.0 * k);
  return a;
}

}  // namespace

double spherical_bessel_closed(int n, double z) {
  if (n < 0) throw InvalidArgument("spherical Bessel order must be >= 0");
  if (z == 0) throw InvalidArgument("closed form is singular at z = 0");
  const auto a = hankel_coefficients(n);
  double S = 0, C = 0, zp = 1;
  for (int k = 0; k <= n; ++k) {
    const double t = a[k] / zp;
    if (k % 2 == 0)
      S += ((k / 2) % 2 == 0 ? t : -t);
    else
      C += (((k - 1) / 2) % 2 == 0 ? t : -t);
    zp *= z;
  }
  const double ph = z - n * std::numbers::pi / 2;
  return (std::sin(ph) * S + std::cos(ph) * C) / z;
}

namespace {

int half_integer_index(double nu) {
  const double m = nu - 0.5;
  if (!(std::abs(m - std::round(m)) < 1e-12) || m < -1)
    throw InvalidArgument("order must be a half-integer >= -1/2");
  return static_cast<int>(std::lround(m));
}

}  // namespace

long double bessel_j_half(double nu, long double x) {
  const int m = half_integer_index(nu);
  if (m == -1) return std::sqrt(2.0L / (std::numbers::pi_v<long double> * x)) * std::cos(x);
  return std::sqrt(2.0L * x / std::numbers::pi_v<long double>) * spherical_bessel_ld(m, x);
}

double bessel_ode_residual(double nu, double x, double h) {
  if (!(x > 0)) throw InvalidArgument("Bessel residual requires x > 0");
  if (!(h > 0) || h >= x) throw InvalidArgument("finite-difference step must satisfy 0 < h < x");
  const long double X = x, H = h;
  const long double jm = bessel_j_half(nu, X - H);
  const long double j0 = bessel_j_half(nu, X);
  const long double jp = bessel_j_half(nu, X + H);
  const long double d2 = (jp - 2 * j0 + jm) / (H * H);
  const long double d1 = (jp - jm) / (2 * H);
  const long double nu2 = static_cast<long double>(nu) * nu;
  return static_cast<double>(X * X * d2 + X * d1 + (X * X - nu2) * j0);
}

double asymptotic_threshold(double nu) { return std::max(1.0, nu * nu); }

double asymptotic_constant(double nu) {
  // Sum of the neglected terms of the finite Hankel expansion of J_{m+1/2},
  // each bounded at the threshold x0: |J - approx| <= sqrt(2/pi) x^{-3/2} sum_k a_k x0^{1-k}.
  const int m = half_integer_index(nu);
  if (m <= 0) return 0.0;
  const auto a = hankel_coefficients(m);
  const double x0 = asymptotic_threshold(nu);
  double s = 0, p = 1;
  for (int k = 1; k <= m; ++k) {
    s += a[k] / p;
    p *= x0;
  }
  return std::sqrt(2.0 / std::numbers::pi) * s;
}

AsymptoticJ asymptotic_jnu(double nu, double x) {
  if (!(x >= 1.0)) throw OutOfRange("asymptotic expansion requires x >= 1");
  const double tau = (2 * nu + 1) * std::numbers::pi / 4;
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  AsymptoticJ r;
  r.approx = amp * std::cos(x - tau);
  // Rounding floor: the phase x - tau carries an absolute error of order eps * x.
  const double floor = 8 * std::numeric_limits<double>::epsilon() * (1 + x + tau) * amp;
  r.bound = asymptotic_constant(nu) * std::pow(x, -1.5) + floor;
  return r;
}

std::vector<double> descent_coefficients(int m) {
  if (m < 0) throw InvalidArgument("descent order must be non-negative");
  std::vector<double> c{1.0};
  // D(H^{(k)} r^p) = H^{(k+1)} r^{p-1} + p H^{(k)} r^{p-2}
  for (int j = 0; j < m; ++j) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double p = static_cast<double>(k) - 1 - 2 * j;
      next[k + 1] += c[k];
      next[k] += p * c[k];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace chan
