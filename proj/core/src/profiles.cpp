#include "channel/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include "channel/errors.hpp"

namespace chan {

std::string family_name(Family f) {
  switch (f) {
    case Family::Bump: return "bump";
    case Family::PolyBump: return "poly_bump";
    case Family::GaussPoly: return "gauss_poly";
    case Family::Power: return "power";
    case Family::ConstantExtendedPower: return "constant_extended_power";
    case Family::Zero: return "zero";
  }
  return "zero";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::Bump, Family::PolyBump, Family::GaussPoly, Family::Power, Family::ConstantExtendedPower,
                   Family::Zero})
    if (family_name(f) == s) return f;
  throw InvalidArgument("unknown profile family: " + s);
}

RadialProfile RadialProfile::zero() { return {}; }

RadialProfile RadialProfile::bump(double a, double b, double amplitude) {
  if (!(a < b) || a < 0) throw InvalidArgument("bump support must satisfy 0 <= a < b");
  RadialProfile p;
  p.family = Family::Bump;
  p.a = a;
  p.b = b;
  p.coeffs = {amplitude};
  return p;
}

RadialProfile RadialProfile::poly_bump(double a, double b, std::vector<double> poly) {
  RadialProfile p = bump(a, b);
  p.family = Family::PolyBump;
  p.coeffs = std::move(poly);
  return p;
}

RadialProfile RadialProfile::gauss_poly(double center, double width, std::vector<double> poly) {
  if (!(width > 0)) throw InvalidArgument("gauss_poly width must be positive");
  RadialProfile p;
  p.family = Family::GaussPoly;
  p.a = center;
  p.b = width;
  p.coeffs = poly.empty() ? std::vector<double>{1.0} : std::move(poly);
  p.max_derivative_order = 60;
  return p;
}

RadialProfile RadialProfile::power(double pw, double amplitude) {
  RadialProfile p;
  p.family = Family::Power;
  p.p = pw;
  p.coeffs = {amplitude};
  p.max_derivative_order = 60;
  return p;
}

RadialProfile RadialProfile::constant_extended_power(double pw, double R, double amplitude) {
  if (!(R > 0)) throw InvalidArgument("constant extension radius must be positive");
  RadialProfile p = power(pw, amplitude);
  p.family = Family::ConstantExtendedPower;
  p.a = R;
  return p;
}

namespace {

double amplitude(const RadialProfile& p) { return p.coeffs.empty() ? 1.0 : p.coeffs[0]; }

// Polynomials P_k(s) with d^k/ds^k exp(-1/(1-s^2)) = P_k(s) / (1-s^2)^{2k} * exp(-1/(1-s^2)).
const std::vector<double>& bump_poly(int k) {
  static std::mutex mtx;
  static std::vector<std::vector<double>> table{{1.0}};
  std::lock_guard<std::mutex> lock(mtx);
  while (static_cast<int>(table.size()) <= k) {
    const auto& P = table.back();
    const int kk = static_cast<int>(table.size()) - 1;
    // P_{k+1} = P_k' (1-s^2)^2 + 4 k s P_k (1-s^2) - 2 s P_k
    std::vector<double> out(P.size() + 4, 0.0);
    for (std::size_t i = 1; i < P.size(); ++i) {
      const double c = i * P[i];  // coefficient of s^{i-1} in P'
      out[i - 1] += c;
      out[i + 1] -= 2 * c;
      out[i + 3] += c;
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
      out[i + 1] += 4.0 * kk * P[i];
      out[i + 3] -= 4.0 * kk * P[i];
      out[i + 1] -= 2 * P[i];
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    table.push_back(out);
  }
  return table[k];
}

double horner(const std::vector<double>& c, double x) {
  double s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

// k-th derivative of the standard bump on (a, b) at r.
double bump_derivative(double a, double b, double r, int k) {
  if (r <= a || r >= b) return 0.0;
  const double s = (2 * r - a - b) / (b - a);
  const double q = (1 - s) * (1 + s);
  const double e = std::exp(-1 / q);
  if (e == 0) return 0.0;
  if (k == 0) return e;
  const double val = horner(bump_poly(k), s) * e / std::pow(q, 2 * k);
  return val * std::pow(2 / (b - a), k);
}

// k-th derivative of sum c_i x^i.
double poly_derivative(const std::vector<double>& c, double x, int k) {
  double s = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= k; --i) {
    double f = 1;
    for (int j = 0; j < k; ++j) f *= (i - j);
    s = s * x + c[i] * f;
  }
  return s;
}

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// d^m/dx^m exp(-(x/sigma)^2) via the physicists' Hermite recurrence.
double gauss_derivative(double x, double sigma, int m) {
  const double y = x / sigma;
  const double g = std::exp(-y * y);
  if (g == 0) return 0.0;
  double h0 = 1, h1 = 2 * y;
  double hm = m == 0 ? h0 : h1;
  for (int j = 1; j < m; ++j) {
    const double h2 = 2 * y * h1 - 2 * j * h0;
    h0 = h1;
    h1 = h2;
    hm = h2;
  }
  return ((m % 2) ? -1.0 : 1.0) * hm * g / std::pow(sigma, m);
}

double falling(double p, int k) {
  double f = 1;
  for (int j = 0; j < k; ++j) f *= (p - j);
  return f;
}

}  // namespace

double RadialProfile::support_lo(double tail_tol) const {
  switch (family) {
    case Family::Bump:
    case Family::PolyBump: return a;
    case Family::GaussPoly: {
      const double w = b * std::sqrt(std::max(1.0, -std::log(tail_tol)) + 2.0 * max_derivative_order / 10.0) * 1.25;
      return std::max(0.0, a - w);
    }
    default: return 0.0;
  }
}

double RadialProfile::support_hi(double tail_tol) const {
  switch (family) {
    case Family::Bump:
    case Family::PolyBump: return b;
    case Family::GaussPoly: {
      const double w = b * std::sqrt(std::max(1.0, -std::log(tail_tol)) + 2.0 * max_derivative_order / 10.0) * 1.25;
      return a + w;
    }
    case Family::Zero: return 0.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

double eval_profile(const RadialProfile& p, double r, int order) {
  if (order < 0) throw InvalidArgument("derivative order must be non-negative");
  if (order > p.max_derivative_order)
    throw Unsupported("profile " + family_name(p.family) + " provides derivatives up to order " +
                      std::to_string(p.max_derivative_order));
  switch (p.family) {
    case Family::Zero: return 0.0;
    case Family::Bump: return amplitude(p) * bump_derivative(p.a, p.b, r, order);
    case Family::PolyBump: {
      if (r <= p.a || r >= p.b) return 0.0;
      double s = 0;
      const int deg = static_cast<int>(p.coeffs.size()) - 1;
      for (int j = 0; j <= std::min(order, deg); ++j)
        s += binomial(order, j) * poly_derivative(p.coeffs, r, j) * bump_derivative(p.a, p.b, r, order - j);
      return s;
    }
    case Family::GaussPoly: {
      const double x = r - p.a;
      double s = 0;
      const int deg = static_cast<int>(p.coeffs.size()) - 1;
      for (int j = 0; j <= std::min(order, deg); ++j)
        s += binomial(order, j) * poly_derivative(p.coeffs, x, j) * gauss_derivative(x, p.b, order - j);
      return s;
    }
    case Family::Power: return amplitude(p) * falling(p.p, order) * std::pow(r, p.p - order);
    case Family::ConstantExtendedPower:
      if (r < p.a) return order == 0 ? amplitude(p) * std::pow(p.a, p.p) : 0.0;
      return amplitude(p) * falling(p.p, order) * std::pow(r, p.p - order);
  }
  return 0.0;
}

double RadialFn::deriv(double r, int k) const {
  if (!eval) return 0.0;
  if (k > max_order) throw Unsupported("radial function provides derivatives up to order " + std::to_string(max_order));
  if (r < lo || r > hi) return 0.0;
  return eval(r, k);
}

RadialFn zero_fn() {
  RadialFn z;
  z.eval = [](double, int) { return 0.0; };
  z.lo = 0;
  z.hi = 0;
  z.max_order = 1000;
  return z;
}

RadialFn to_fn(const RadialProfile& p, double tail_tol) {
  if (p.family == Family::Zero) return zero_fn();
  RadialFn f;
  f.eval = [p](double r, int k) { return eval_profile(p, r, k); };
  f.lo = p.support_lo(tail_tol);
  f.hi = p.support_hi(tail_tol);
  f.max_order = p.max_derivative_order;
  if (p.family == Family::Power || p.family == Family::ConstantExtendedPower) {
    f.tail_power = p.p;
    f.is_power = true;
    f.power_amp = amplitude(p);
    f.power_exp = p.p;
    f.power_from = p.family == Family::Power ? 0.0 : p.a;
    if (p.family == Family::ConstantExtendedPower) f.breakpoints.push_back(p.a);
  }
  return f;
}

double integrate_weighted(const std::function<double(double)>& f, double lo, double hi, double tail_power,
                          const QuadratureSpec& spec, const std::vector<double>& breaks) {
  if (!(hi > lo)) return 0.0;
  if (std::isinf(hi) && !std::isnan(tail_power) && tail_power >= -1.0)
    throw Divergence("integrand decays like r^" + std::to_string(tail_power) + " and is not integrable at infinity");
  QuadratureSpec s = spec;
  if (s.abs_tol == 0) s.abs_tol = 1e-300;
  return quad(f, lo, hi, s, breaks);
}

namespace {

// Closed form of int_R^inf A r^q dr.
double power_tail(double A, double q, double R) {
  if (q >= -1.0) throw Divergence("power-law integrand r^" + std::to_string(q) + " is not integrable at infinity");
  return -A * std::pow(R, q + 1) / (q + 1);
}

double combined_tail(double t1, double t2, double extra) {
  if (std::isnan(t1) || std::isnan(t2)) return std::numeric_limits<double>::quiet_NaN();
  return t1 + t2 + extra;
}

std::vector<double> merged_breaks(const RadialFn& a, const RadialFn& b) {
  std::vector<double> v = a.breakpoints;
  v.insert(v.end(), b.breakpoints.begin(), b.breakpoints.end());
  for (double x : {a.lo, a.hi, b.lo, b.hi})
    if (std::isfinite(x)) v.push_back(x);
  return v;
}

double product_integral(const RadialFn& u, int ku, const RadialFn& v, int kv, double weight_power, double R,
                        const QuadratureSpec& spec) {
  if (u.is_zero() || v.is_zero()) return 0.0;
  const double lo = std::max({R, u.lo, v.lo});
  const double hi = std::min(u.hi, v.hi);
  if (!(hi > lo)) return 0.0;
  if (u.is_power && v.is_power && R >= u.power_from && R >= v.power_from) {
    const double A = u.power_amp * falling(u.power_exp, ku) * v.power_amp * falling(v.power_exp, kv);
    if (A == 0) return 0.0;
    return power_tail(A, u.power_exp - ku + v.power_exp - kv + weight_power, R);
  }
  const double tail = combined_tail(u.tail_power - ku, v.tail_power - kv, weight_power);
  auto f = [&](double r) { return u.deriv(r, ku) * v.deriv(r, kv) * std::pow(r, weight_power); };
  return integrate_weighted(f, lo, hi, tail, spec, merged_breaks(u, v));
}

double single_integral(const RadialFn& u, int ku, double weight_power, double R, const QuadratureSpec& spec) {
  if (u.is_zero()) return 0.0;
  const double lo = std::max(R, u.lo);
  const double hi = u.hi;
  if (!(hi > lo)) return 0.0;
  if (u.is_power && R >= u.power_from) {
    const double A = u.power_amp * falling(u.power_exp, ku);
    if (A == 0) return 0.0;
    return power_tail(A, u.power_exp - ku + weight_power, R);
  }
  const double tail = std::isnan(u.tail_power) ? u.tail_power : u.tail_power - ku + weight_power;
  auto f = [&](double r) { return u.deriv(r, ku) * std::pow(r, weight_power); };
  std::vector<double> br = u.breakpoints;
  for (double x : {u.lo, u.hi})
    if (std::isfinite(x)) br.push_back(x);
  return integrate_weighted(f, lo, hi, tail, spec, br);
}

}  // namespace

double inner_L2(const RadialFn& g1, const RadialFn& g2, int d, double R, const QuadratureSpec& spec) {
  return product_integral(g1, 0, g2, 0, d - 1, R, spec);
}

double inner_H1(const RadialFn& f1, const RadialFn& f2, int d, double R, const QuadratureSpec& spec) {
  return product_integral(f1, 1, f2, 1, d - 1, R, spec);
}

double moment(const RadialFn& g, int j, double R, const QuadratureSpec& spec) {
  return single_integral(g, 0, 2 * j - 1, R, spec);
}

double moment_H1(const RadialFn& f, int j, double R, const QuadratureSpec& spec) {
  return single_integral(f, 1, 2 * j - 2, R, spec);
}

}  // namespace chan
