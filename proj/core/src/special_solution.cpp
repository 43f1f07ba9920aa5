#include "channel/special_solution.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "channel/errors.hpp"

namespace chan {

SpecialSolution special_solution(int d, int i, SpecialKind kind) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("special solutions need an odd dimension d >= 3");
  const int imax = kind == SpecialKind::G ? d / 4 : (d + 2) / 4;
  if (i < 1 || i > imax)
    throw InvalidArgument("index i = " + std::to_string(i) + " out of range 1.." + std::to_string(imax) +
                          " (data would not have finite energy)");
  SpecialSolution s;
  s.d = d;
  s.i = i;
  s.kind = kind;
  const int shift = kind == SpecialKind::G ? 1 : 0;
  s.terms.resize(i);
  for (int j = 1; j <= i; ++j) {
    s.terms[j - 1].t_exp = 2 * i - 2 * j + shift;
    s.terms[j - 1].r_exp = 2 * j - d;
  }
  s.terms[i - 1].coef = 1;
  // u_tt of term j-1 must cancel the radial Laplacian of term j:
  // a_{j-1} p (p - 1) = a_j q (q + d - 2).
  for (int j = i; j >= 2; --j) {
    const int q = s.terms[j - 1].r_exp;
    const int p = s.terms[j - 2].t_exp;
    s.terms[j - 2].coef = s.terms[j - 1].coef * Rational(q * (q + d - 2)) / Rational(p * (p - 1));
  }
  return s;
}

WaveState SpecialSolution::eval(double t, double r) const {
  WaveState w;
  for (const auto& m : terms) {
    const double c = to_double(m.coef);
    w.u += c * std::pow(t, m.t_exp) * std::pow(r, m.r_exp);
    if (m.t_exp > 0) w.u_t += c * m.t_exp * std::pow(t, m.t_exp - 1) * std::pow(r, m.r_exp);
    w.u_r += c * m.r_exp * std::pow(t, m.t_exp) * std::pow(r, m.r_exp - 1);
  }
  return w;
}

std::vector<Monomial> SpecialSolution::residual() const {
  std::map<std::pair<int, int>, Rational> acc;
  for (const auto& m : terms) {
    if (m.t_exp >= 2) acc[{m.t_exp - 2, m.r_exp}] += m.coef * (m.t_exp * (m.t_exp - 1));
    acc[{m.t_exp, m.r_exp - 2}] -= m.coef * (m.r_exp * (m.r_exp + d - 2));
  }
  std::vector<Monomial> out;
  for (const auto& [k, v] : acc)
    if (v != 0) out.push_back({v, k.first, k.second});
  return out;
}

std::string SpecialSolution::to_text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& m : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << chan::to_string(m.coef) << ")";
    if (m.t_exp) os << "*t^" << m.t_exp;
    os << "*r^" << m.r_exp;
  }
  return os.str();
}

namespace {

RadialFn power_data(double amp, int p, double R) {
  RadialFn u;
  if (amp == 0) return zero_fn();
  u.lo = R;
  u.hi = std::numeric_limits<double>::infinity();
  u.max_order = 60;
  u.tail_power = p;
  u.is_power = true;
  u.power_amp = amp;
  u.power_exp = p;
  u.power_from = R;
  u.eval = [amp, p](double r, int k) {
    double c = amp;
    for (int l = 0; l < k; ++l) c *= (p - l);
    return c * std::pow(r, p - k);
  };
  return u;
}

}  // namespace

RadialFn SpecialSolution::initial_f(double R) const {
  double amp = 0;
  int p = 0;
  for (const auto& m : terms)
    if (m.t_exp == 0) {
      amp = to_double(m.coef);
      p = m.r_exp;
    }
  return power_data(amp, p, R);
}

RadialFn SpecialSolution::initial_g(double R) const {
  double amp = 0;
  int p = 0;
  for (const auto& m : terms)
    if (m.t_exp == 1) {
      amp = to_double(m.coef);
      p = m.r_exp;
    }
  return power_data(amp, p, R);
}

double SpecialSolution::exterior_energy(double R, double t) const {
  // Collect (u_r^2 + u_t^2) r^{d-1} as exact monomials c t^a r^b.
  std::map<std::pair<int, int>, Rational> dens;
  std::vector<Monomial> ur, ut;
  for (const auto& m : terms) {
    ur.push_back({m.coef * m.r_exp, m.t_exp, m.r_exp - 1});
    if (m.t_exp > 0) ut.push_back({m.coef * m.t_exp, m.t_exp - 1, m.r_exp});
  }
  for (const auto* v : {&ur, &ut})
    for (const auto& a : *v)
      for (const auto& b : *v) dens[{a.t_exp + b.t_exp, a.r_exp + b.r_exp + d - 1}] += a.coef * b.coef;
  const double rho = std::abs(t) + R;
  if (!(rho > 0)) throw Divergence("exterior energy of a special solution diverges at r = 0");
  double e = 0;
  for (const auto& [k, c] : dens) {
    if (c == 0) continue;
    if (k.second >= -1) throw Divergence("exterior energy of the special solution diverges at infinity");
    e += to_double(c) * std::pow(t, k.first) * std::pow(rho, k.second + 1) / -(k.second + 1.0);
  }
  return e;
}

WaveSolution SpecialSolution::handle() const {
  WaveSolution h;
  h.d = d;
  h.outer_radius = [](double) { return std::numeric_limits<double>::infinity(); };
  const SpecialSolution self = *this;
  h.at_time = [self](double t) {
    return std::function<WaveState(double)>([self, t](double r) { return self.eval(t, r); });
  };
  return h;
}

}  // namespace chan
