#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "channel/quadrature.hpp"

namespace chan {

enum class Family { Bump, PolyBump, GaussPoly, Power, ConstantExtendedPower, Zero };

std::string family_name(Family f);
Family parse_family(const std::string& s);

// Closed-form radial data.
//   bump:                    A * B(r) with B the standard bump on (a, b); coeffs = {A} (default 1)
//   poly_bump:               P(r) * B(r), P(r) = sum coeffs[i] r^i
//   gauss_poly:              P(r - a) * exp(-((r - a)/b)^2), P from coeffs
//   power:                   A * r^p
//   constant_extended_power: A * r^p for r >= a, A * a^p for r < a
//   zero:                    0
struct RadialProfile {
  Family family = Family::Zero;
  double a = 0;
  double b = 0;
  std::vector<double> coeffs;
  double p = 0;
  int max_derivative_order = 8;

  static RadialProfile zero();
  static RadialProfile bump(double a, double b, double amplitude = 1.0);
  static RadialProfile poly_bump(double a, double b, std::vector<double> poly);
  static RadialProfile gauss_poly(double center, double width, std::vector<double> poly);
  static RadialProfile power(double p, double amplitude = 1.0);
  static RadialProfile constant_extended_power(double p, double R, double amplitude = 1.0);

  // Support [lo, hi]; hi may be infinite. gauss_poly reports the interval
  // outside of which the value and all tracked derivatives fall below tail_tol.
  double support_lo(double tail_tol = 1e-14) const;
  double support_hi(double tail_tol = 1e-14) const;
};

// order-th derivative at r > 0.
double eval_profile(const RadialProfile& p, double r, int order);

// Generic radial function used by projections, pairings and the propagator.
// eval(r, k) returns the k-th derivative; the function vanishes outside [lo, hi].
struct RadialFn {
  std::function<double(double, int)> eval;
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
  int max_order = 0;
  std::vector<double> breakpoints;
  // Power-law tail: |f^{(k)}(r)| ~ r^{tail_power - k} for large r, used to
  // decide convergence of half-line integrals. NaN for compact or rapidly decaying data.
  double tail_power = std::numeric_limits<double>::quiet_NaN();
  // Set when f(r) = power_amp * r^power_exp exactly for r >= power_from;
  // enables closed-form integrals.
  bool is_power = false;
  double power_amp = 0;
  double power_exp = 0;
  double power_from = 0;

  double operator()(double r) const { return r < lo || r > hi ? 0.0 : eval(r, 0); }
  double deriv(double r, int k) const;
  bool is_zero() const { return !eval || !(hi > lo); }
};

RadialFn to_fn(const RadialProfile& p, double tail_tol = 1e-14);
RadialFn zero_fn();

// Integrals over r >= R with weight r^{d-1}.
double inner_L2(const RadialFn& g1, const RadialFn& g2, int d, double R, const QuadratureSpec& spec = {});
double inner_H1(const RadialFn& f1, const RadialFn& f2, int d, double R, const QuadratureSpec& spec = {});
// int_R^inf g r^{2j-1} dr
double moment(const RadialFn& g, int j, double R, const QuadratureSpec& spec = {});
// int_R^inf f' r^{2j-2} dr
double moment_H1(const RadialFn& f, int j, double R, const QuadratureSpec& spec = {});

// int_lo^hi f(r) dr over the part of [lo, hi] where f may be non-zero,
// with the tail convergence check for power-law data.
double integrate_weighted(const std::function<double(double)>& f, double lo, double hi, double tail_power,
                          const QuadratureSpec& spec, const std::vector<double>& breaks = {});

}  // namespace chan
