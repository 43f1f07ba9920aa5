#include "channel/pairing.hpp"

#include <cmath>
#include <numbers>

#include "channel/errors.hpp"

namespace chan {

namespace {

enum class Kind { Chi, Del, DelP };

struct Component {
  Kind kind;
  int index;  // polynomial degree for Chi, a in {0, 1} for the point masses at (-1)^a
  GaussianRational coef;
  std::string label() const {
    const std::string at = index == 0 ? "(1)" : "(-1)";
    switch (kind) {
      case Kind::Chi: return index == 0 ? "chi" : (index == 1 ? "xi chi" : "xi^" + std::to_string(index) + " chi");
      case Kind::Del: return "delta" + at;
      case Kind::DelP: return "delta'" + at;
    }
    return "";
  }
};

std::vector<Component> components(const BoundaryDistribution& D) {
  std::vector<Component> out;
  for (std::size_t m = 0; m < D.poly.size(); ++m)
    if (!D.poly[m].is_zero()) out.push_back({Kind::Chi, static_cast<int>(m), D.poly[m]});
  if (!D.delta_plus.is_zero()) out.push_back({Kind::Del, 0, D.delta_plus});
  if (!D.delta_minus.is_zero()) out.push_back({Kind::Del, 1, D.delta_minus});
  if (!D.dprime_plus.is_zero()) out.push_back({Kind::DelP, 0, D.dprime_plus});
  if (!D.dprime_minus.is_zero()) out.push_back({Kind::DelP, 1, D.dprime_minus});
  return out;
}

double sign_pow(int a, int i) { return (a == 1 && i % 2 == 1) ? -1.0 : 1.0; }

class Rules {
 public:
  Rules(double R, const QuadratureSpec& spec) : R_(R), spec_(spec), inner_spec_(spec) {
    if (spec_.abs_tol == 0) spec_.abs_tol = 1e-300;
    // Inner moments feed an outer quadrature; their error must sit well below its tolerance.
    inner_spec_.tol = std::max(spec_.tol * 1e-2, 4e-16);
    inner_spec_.abs_tol = spec_.abs_tol * 1e-2;
  }

  // int over [lo, hi] clipped to the support of u. A positive floor replaces
  // the absolute tolerance and marks an inner integral.
  double clip_int(const RadialFn& u, double lo, double hi, const std::function<double(double)>& f,
                  double tail_power, double floor = -1) const {
    lo = std::max(lo, u.lo);
    hi = std::min(hi, u.hi);
    if (!(hi > lo)) return 0.0;
    std::vector<double> br = u.breakpoints;
    if (R_ > lo && R_ < hi) br.push_back(R_);
    if (floor < 0) return integrate_weighted(f, lo, hi, tail_power, spec_, br);
    QuadratureSpec q = inner_spec_;
    q.abs_tol = std::max(q.abs_tol, floor);
    return integrate_weighted(f, lo, hi, tail_power, q, br);
  }

  // Absolute error floor for inner moments of f over the part of the support
  // that the outer integral can reach. Without it, moments cut near a smooth
  // support edge would be refined to full relative accuracy at tiny magnitude.
  double inner_floor(const RadialFn& u, const std::function<double(double)>& f) const {
    const double lo = std::max(u.lo, 1e-3 * R_);
    const double hi = std::min(u.hi, 2 * R_);
    if (!(hi > lo)) return inner_spec_.abs_tol;
    double peak = 0;
    constexpr int kSamples = 256;
    for (int i = 0; i <= kSamples; ++i) peak = std::max(peak, std::abs(f(lo + (hi - lo) * i / kSamples)));
    return std::max(inner_spec_.abs_tol, inner_spec_.tol * peak * (hi - lo));
  }

  static double tail(const RadialFn& u, double extra) {
    return std::isnan(u.tail_power) ? u.tail_power : u.tail_power + extra;
  }

  // (r^2 b)' = 2 r b + r^2 b'
  static double r2_deriv(const RadialFn& b, double r) { return 2 * r * b(r) + r * r * b.deriv(r, 1); }

  // int_0^m r^p b(r) dr
  double lower_moment(const RadialFn& b, int p, double m, double floor) const {
    return clip_int(b, 0.0, m, [&](double r) { return std::pow(r, p) * b(r); }, tail(b, p), floor);
  }
  // int_0^m r^p (r^2 b)' dr
  double lower_moment_dp(const RadialFn& b, int p, double m, double floor) const {
    return clip_int(b, 0.0, m, [&](double r) { return std::pow(r, p) * r2_deriv(b, r); }, tail(b, p + 1), floor);
  }
  // int_m^inf r^p b(r) dr
  double upper_moment(const RadialFn& b, int p, double m, double floor) const {
    return clip_int(b, m, std::numeric_limits<double>::infinity(), [&](double r) { return std::pow(r, p) * b(r); },
                    tail(b, p), floor);
  }
  double moment_floor(const RadialFn& b, int p) const {
    return inner_floor(b, [&](double r) { return std::pow(r, p) * b(r); });
  }
  double moment_dp_floor(const RadialFn& b, int p) const {
    return inner_floor(b, [&](double r) { return std::pow(r, p) * r2_deriv(b, r); });
  }

  // Outer integral int_0^inf a(r1) r1^{-i} I(min(r1, R)) dr1, split at R.
  double outer(const RadialFn& a, int i, const std::function<double(double)>& I) const {
    const double below =
        clip_int(a, 0.0, R_, [&](double r1) { return a(r1) * std::pow(r1, -i) * I(r1); }, tail(a, -i));
    double above = 0.0;
    if (a.hi > R_) {
      const double tail_part =
          clip_int(a, R_, std::numeric_limits<double>::infinity(), [&](double r1) { return a(r1) * std::pow(r1, -i); },
                   tail(a, -i));
      if (tail_part != 0.0) above = I(R_) * tail_part;
    }
    return below + above;
  }

  double chi_chi(int i, int j, const SeparableKernel& k) const {
    if ((i + j) % 2 == 1) return 0.0;
    const double fac = 2.0 / (i + j + 1);
    const double fl = moment_floor(k.b, i + 1), fu = moment_floor(k.b, -j);
    auto I = [&](double m) {
      const double lower = lower_moment(k.b, i + 1, m, fl);
      const double upper = upper_moment(k.b, -j, m, fu);
      return lower + std::pow(m, i + j + 1) * upper;
    };
    return fac * k.scale * outer(k.a, i, I);
  }

  double del_del(int a, int b, const SeparableKernel& k) const {
    if (a != b) return 0.0;
    return k.scale * clip_int(k.a, 0.0, std::min(R_, k.b.hi), [&](double x) { return x * x * k.a(x) * k.b(x); },
                              tail(k.a, 2));
  }

  double delp_delp(int a, int b, const SeparableKernel& k) const {
    if (a != b) return 0.0;
    require_derivative(k);
    return k.scale * clip_int(k.a, 0.0, std::min(R_, k.b.hi),
                              [&](double x) { return r2_deriv(k.a, x) * r2_deriv(k.b, x); }, tail(k.a, 2));
  }

  double chi_del(int i, int a, const SeparableKernel& k) const {
    const double c = sign_pow(a, i);
    const double fl = moment_floor(k.b, i + 1);
    auto J = [&](double m) { return lower_moment(k.b, i + 1, m, fl); };
    return c * k.scale * outer(k.a, i, J);
  }

  double chi_delp(int i, int a, const SeparableKernel& k) const {
    require_derivative(k);
    const double c = (a == 1 ? -1.0 : 1.0) * sign_pow(a, i);
    const double fl = moment_dp_floor(k.b, i);
    auto J = [&](double m) { return lower_moment_dp(k.b, i, m, fl); };
    return c * k.scale * outer(k.a, i, J);
  }

  double del_delp(int a, int b, const SeparableKernel& k) const {
    if (a != b) return 0.0;
    require_derivative(k);
    const double c = a == 1 ? -1.0 : 1.0;
    return c * k.scale * clip_int(k.a, 0.0, std::min(R_, k.b.hi),
                                  [&](double x) { return x * k.a(x) * r2_deriv(k.b, x); }, tail(k.a, 2));
  }

 private:
  static void require_derivative(const SeparableKernel& k) {
    if (k.a.max_order < 1 || k.b.max_order < 1)
      throw Unsupported("delta' limit rules need the first derivative of the kernel profile");
  }

  double R_;
  QuadratureSpec spec_;
  QuadratureSpec inner_spec_;
};

}  // namespace

PairingRuleResult kernel_pairing(const BoundaryDistribution& D1, const BoundaryDistribution& D2, double R,
                                 const SeparableKernel& phi, const QuadratureSpec& spec) {
  if (!(R > 0)) throw InvalidArgument("pairing radius must be positive");
  PairingRuleResult res;
  if (phi.a.is_zero() || phi.b.is_zero()) {
    res.value = 0;
    return res;
  }
  const Rules rules(R, spec);
  const SeparableKernel phiT = phi.transposed();
  std::complex<double> total = 0;
  for (const auto& p : components(D1)) {
    for (const auto& q : components(D2)) {
      double v = 0;
      std::string id;
      if (p.kind == Kind::Chi && q.kind == Kind::Chi) {
        id = "chi-chi";
        v = rules.chi_chi(p.index, q.index, phi);
      } else if (p.kind == Kind::Del && q.kind == Kind::Del) {
        id = "del-del";
        v = rules.del_del(p.index, q.index, phi);
      } else if (p.kind == Kind::DelP && q.kind == Kind::DelP) {
        id = "delP-delP";
        v = rules.delp_delp(p.index, q.index, phi);
      } else if (p.kind == Kind::Chi && q.kind == Kind::Del) {
        id = "chi-del";
        v = rules.chi_del(p.index, q.index, phi);
      } else if (p.kind == Kind::Del && q.kind == Kind::Chi) {
        id = "chi-del";
        v = rules.chi_del(q.index, p.index, phiT);
      } else if (p.kind == Kind::Chi && q.kind == Kind::DelP) {
        id = "chi-delP";
        v = rules.chi_delp(p.index, q.index, phi);
      } else if (p.kind == Kind::DelP && q.kind == Kind::Chi) {
        id = "chi-delP";
        v = rules.chi_delp(q.index, p.index, phiT);
      } else if (p.kind == Kind::Del && q.kind == Kind::DelP) {
        id = "del-delP";
        v = rules.del_delp(p.index, q.index, phi);
      } else {
        id = "del-delP";
        v = rules.del_delp(q.index, p.index, phiT);
      }
      const std::complex<double> w = p.coef.to_complex() * std::conj(q.coef.to_complex());
      const std::complex<double> c = w * v;
      total += c;
      res.trace.push_back({p.label(), q.label(), id, c});
    }
  }
  res.value = total;
  return res;
}

double asymptotic_energy_pairing(int d, double R, const RadialFn& data, DataKind kind, const QuadratureSpec& spec) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("asymptotic energy needs an odd dimension d >= 3");
  if (!(R > 0)) throw InvalidArgument("asymptotic energy pairing needs R > 0");
  if (data.is_zero()) return 0.0;
  const int n = (d - 3) / 2;
  const double pref = std::pow(2.0, d - 1) * std::pow(std::numbers::pi, d);
  if (kind == DataKind::F && data.max_order < 1)
    throw Unsupported("f data needs a first derivative for the asymptotic energy");

  const double p = kind == DataKind::G ? (d - 3) / 2.0 : (d - 5) / 2.0;
  RadialFn h;
  h.lo = data.lo;
  h.hi = data.hi;
  h.max_order = std::min(1, data.max_order);
  h.breakpoints = data.breakpoints;
  h.tail_power = std::isnan(data.tail_power) ? data.tail_power : data.tail_power + p;
  h.eval = [data, p](double r, int k) {
    const double v = data.deriv(r, 0);
    if (k == 0) return v * std::pow(r, p);
    return data.deriv(r, 1) * std::pow(r, p) + p * v * std::pow(r, p - 1);
  };

  double norm;
  BoundaryDistribution D;
  if (kind == DataKind::G) {
    norm = inner_L2(data, data, d, 0.0, spec);
    D = closed_ft_phi(n);
  } else {
    norm = inner_H1(data, data, d, 0.0, spec);
    D = closed_ft_psi(n);
  }
  const SeparableKernel K{0.5, h, h};
  const auto pr = kernel_pairing(D, D, R, K, spec);
  return pref * (norm - pr.value.real());
}

}  // namespace chan
