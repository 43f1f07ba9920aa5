#include "channel/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "channel/errors.hpp"

namespace chan {

WaveState dalembert_3d(const RadialFn& f, const RadialFn& g, double t, double r, const QuadratureSpec& spec) {
  if (!(r > 0)) throw InvalidArgument("d'Alembert evaluation needs r > 0");
  // v(s) = s f(|s|) is odd, v'(s) = f(|s|) + |s| f'(|s|) is even.
  auto fv = [&](double s, int k) { return f.is_zero() ? 0.0 : f.deriv(s, k); };
  auto v = [&](double s) { return s * fv(std::abs(s), 0); };
  auto dv = [&](double s) {
    const double a = std::abs(s);
    return fv(a, 0) + a * fv(a, 1);
  };
  auto w = [&](double s) { return g.is_zero() ? 0.0 : s * g(std::abs(s)); };

  const double p = r + t, m = r - t;
  // int_m^p s g(|s|) ds = G(|p|) - G(|m|) with G(x) = int_0^x s g(s) ds.
  double W = 0;
  if (!g.is_zero()) {
    const double lo = std::abs(m), hi = std::abs(p);
    const double sign = hi >= lo ? 1.0 : -1.0;
    const double a = std::max(std::min(lo, hi), g.lo), b = std::min(std::max(lo, hi), g.hi);
    if (b > a) {
      std::vector<double> br;
      for (double x : g.breakpoints)
        if (x > a && x < b) br.push_back(x);
      QuadratureSpec q = spec;
      if (q.abs_tol == 0) q.abs_tol = 1e-300;
      W = sign * quad([&](double s) { return s * g(s); }, a, b, q, br);
    }
  }
  const double ru = 0.5 * (v(p) + v(m)) + 0.5 * W;
  const double rut = 0.5 * (dv(p) - dv(m)) + 0.5 * (w(p) + w(m));
  const double rur = 0.5 * (dv(p) + dv(m)) + 0.5 * (w(p) - w(m));
  WaveState s;
  s.u = ru / r;
  s.u_t = rut / r;
  s.u_r = (rur - s.u) / r;
  return s;
}


WaveState descent_solution(const RadialProfile& F, int m, double t, double r) {
  if (m < 0) throw InvalidArgument("descent order must be non-negative");
  if (F.max_derivative_order < m + 1)
    throw Unsupported("descent of order " + std::to_string(m) + " needs profile derivatives up to order " +
                      std::to_string(m + 1));
  if (!(r > 0)) throw InvalidArgument("descent evaluation needs r > 0");
  auto Fd = [&](double x, int k) { return eval_profile(F, x, k); };
  // H^{(k)} = d^k/dr^k [F(t + r) - F(t - r)] and its t-derivative.
  auto H = [&](int k) { return Fd(t + r, k) - (k % 2 ? -1.0 : 1.0) * Fd(t - r, k); };
  auto Ht = [&](int k) { return Fd(t + r, k + 1) - (k % 2 ? -1.0 : 1.0) * Fd(t - r, k + 1); };

  const double taylor_radius = 0.05 * std::max(1.0, F.b);
  if (r < taylor_radius && F.max_derivative_order >= 2 * m + 24) {
    // H / r = sum_q a_q r^{2q}, a_q = 2 F^{(2q+1)}(t) / (2q+1)!; D r^{2q} = 2q r^{2q-2}.
    WaveState s;
    const int qmax = (F.max_derivative_order - 2) / 2;
    double fact = 1;  // (2q+1)!
    for (int q = 0; q <= qmax; ++q) {
      if (q > 0) fact *= (2.0 * q) * (2.0 * q + 1);
      if (q < m) continue;
      double fall = 1;
      for (int l = 0; l < m; ++l) fall *= 2.0 * (q - l);
      const int e = 2 * (q - m);
      const double rp = std::pow(r, e);
      const double a = 2 * Fd(t, 2 * q + 1) / fact * fall;
      const double at = 2 * Fd(t, 2 * q + 2) / fact * fall;
      const double du = a * rp, dut = at * rp;
      s.u += du;
      s.u_t += dut;
      if (e > 0) s.u_r += a * e * std::pow(r, e - 1);
      if (q > m + 4 && std::abs(du) <= 1e-17 * std::abs(s.u) && std::abs(dut) <= 1e-17 * std::abs(s.u_t)) break;
    }
    return s;
  }

  const auto c = descent_coefficients(m);
  WaveState s;
  for (int k = 0; k <= m; ++k) {
    const int p = k - 1 - 2 * m;
    const double rp = std::pow(r, p);
    const double hk = H(k);
    s.u += c[k] * hk * rp;
    s.u_t += c[k] * Ht(k) * rp;
    s.u_r += c[k] * (H(k + 1) * rp + p * hk * rp / r);
  }
  return s;
}

DescentData descent_initial_data(const RadialProfile& F, int m, double tail_tol) {
  const double lo = std::max(0.0, F.support_lo(tail_tol));
  const double hi = F.support_hi(tail_tol);
  if (!std::isfinite(hi)) throw Unsupported("descent data need a profile with (numerically) compact support");
  DescentData out;
  out.f.lo = out.g.lo = lo;
  out.f.hi = out.g.hi = hi;
  out.f.max_order = 1;
  out.g.max_order = 0;
  out.f.eval = [F, m](double r, int k) {
    const WaveState s = descent_solution(F, m, 0.0, r);
    return k == 0 ? s.u : s.u_r;
  };
  out.g.eval = [F, m](double r, int) { return descent_solution(F, m, 0.0, r).u_t; };
  return out;
}

WaveSolution dalembert_handle(const RadialFn& f, const RadialFn& g, double radius_hi) {
  WaveSolution h;
  h.d = 3;
  h.outer_radius = [radius_hi](double t) { return std::abs(t) + radius_hi; };
  h.at_time = [f, g, radius_hi](double t) {
    return std::function<WaveState(double)>([f, g, t, radius_hi](double r) {
      if (r > std::abs(t) + radius_hi) return WaveState{};
      return dalembert_3d(f, g, t, r);
    });
  };
  return h;
}

}  // namespace chan
