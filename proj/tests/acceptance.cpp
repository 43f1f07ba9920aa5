// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "channel/channel.hpp"
#include "channel/coefficients.hpp"
#include "channel/distribution.hpp"
#include "channel/oracles.hpp"
#include "channel/projection.hpp"
#include "channel/special_functions.hpp"
#include "channel/special_solution.hpp"
#include "channel/spectral.hpp"

using namespace chan;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

double integral(const std::function<double(double)>& f, double lo, double hi) {
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  return quad(f, lo, hi, q);
}

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0.0 : std::abs(a - b) / s;
}

RadialFn random_bump(std::mt19937_64& rng, double lo_min, double hi_max) {
  std::uniform_real_distribution<double> u(0, 1);
  const double a = lo_min + (hi_max - lo_min) * 0.5 * u(rng);
  const double b = a + 0.5 + (hi_max - a - 0.5) * u(rng);
  return to_fn(RadialProfile::poly_bump(a, b, {u(rng) - 0.5, 2 * u(rng) - 1, u(rng) - 0.5}));
}

void criterion1(Outcome& o) {
  int checked = 0;
  for (int d = 3; d <= 41; d += 2) {
    const auto rep = verify_identities(d);
    if (!rep.ok) o.fail("identities d=" + std::to_string(d) + ": " + rep.failure);
    if (d / 4 > 0 && !(gram_L2(d) * gram_inverse_L2(d)).is_identity()) o.fail("L2 inverse d=" + std::to_string(d));
    if (!(gram_H1(d) * gram_inverse_H1(d)).is_identity()) o.fail("H1 inverse d=" + std::to_string(d));
    ++checked;
  }
  o.detail << checked << " dimensions";
}

void criterion2(Outcome& o) {
  const auto rec = recurse_ft(20);
  for (int n = 0; n <= 20; ++n) {
    if (!dist_equal(rec[n], closed_ft_phi(n))) o.fail("phi n=" + std::to_string(n));
    if (!dist_equal(derivative_ft(closed_ft_phi(n)), closed_ft_psi(n))) o.fail("psi n=" + std::to_string(n));
  }
  // F phi_0 = pi i (delta_{-1} - delta_1), F phi_1 = pi (chi - delta_{-1} - delta_1), stored divided by pi.
  BoundaryDistribution b0, b1;
  b0.delta_minus = GaussianRational::i();
  b0.delta_plus = -GaussianRational::i();
  b1.poly = {GaussianRational(1)};
  b1.delta_minus = -1;
  b1.delta_plus = -1;
  if (!dist_equal(base_ft(0), b0)) o.fail("base n=0");
  if (!dist_equal(base_ft(1), b1)) o.fail("base n=1");
  o.detail << "n <= 20";
}

void criterion3(Outcome& o) {
  double worst = 0;
  for (int n = 0; n <= 10; ++n) {
    const auto D = closed_ft_phi(n);
    for (int i = 0; i < 200; ++i) {
      const double z = 0.1 * std::pow(500.0, i / 199.0);
      const auto v = eval_inverse_ft(D, z);
      worst = std::max(worst, std::abs(v - std::complex<double>(z * spherical_bessel(n, z), 0.0)));
    }
  }
  if (worst > 1e-9) o.fail("max error " + std::to_string(worst));
  o.detail << "max |error| = " << worst;
}

void criterion4(Outcome& o) {
  const double R = 1.0;
  // d = 3 against d'Alembert.
  {
    const auto f = to_fn(RadialProfile::bump(1, 3));
    const auto g = to_fn(RadialProfile::poly_bump(0.5, 2.5, {1.0, -0.4}));
    const auto src = physical_source(f, g, 3);
    const auto S = spectral_data(src, 22.0);
    double worst = 0;
    for (int it = 0; it <= 20; ++it) {
      const double t = 0.5 * it;
      const TimeSlice slice(S, t);
      for (int ir = 0; ir <= 44; ++ir) {
        const double r = R + 0.25 * ir;
        const auto a = slice.at(r), b = dalembert_3d(f, g, t, r);
        worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.u_t - b.u_t), std::abs(a.u_r - b.u_r)});
      }
    }
    if (worst > 1e-8) o.fail("d=3 d'Alembert error " + std::to_string(worst));
    o.detail << "d=3 sup err " << worst << "; ";
  }
  // d = 5, 7, 9 against descent solutions.
  {
    const auto F = RadialProfile::gauss_poly(2.0, 0.5, {1.0, 0.3});
    double worst = 0;
    for (int m : {1, 2, 3}) {
      const int d = 2 * m + 3;
      const auto data = descent_initial_data(F, m);
      const auto S = spectral_data(physical_source(data.f, data.g, d), 22.0);
      for (double t : {0.0, 1.0, 2.5, 5.0, 10.0}) {
        const TimeSlice slice(S, t);
        for (int ir = 0; ir <= 22; ++ir) {
          const double r = R + 0.5 * ir;
          const auto a = slice.at(r), b = descent_solution(F, m, t, r);
          worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.u_t - b.u_t), std::abs(a.u_r - b.u_r)});
        }
      }
    }
    if (worst > 1e-6) o.fail("descent error " + std::to_string(worst));
    o.detail << "d=5,7,9 sup err " << worst << "; ";
  }
  // Energy drift.
  {
    double worst = 0;
    for (int d : {3, 5, 7}) {
      SpectralSolution sol(physical_source(to_fn(RadialProfile::bump(1, 3)),
                                           to_fn(RadialProfile::poly_bump(0.5, 2.5, {1.0, -0.4})), d));
      const auto h = sol.handle();
      const double e0 = total_energy(h, 0.0);
      for (double t = 2.5; t <= 20.0; t += 2.5) worst = std::max(worst, rel(total_energy(h, t), e0));
    }
    if (worst > 1e-8) o.fail("energy drift " + std::to_string(worst));
    o.detail << "energy drift " << worst;
  }
}

void criterion5(Outcome& o) {
  std::mt19937_64 rng(5);
  double worst = 0;
  int cases = 0;
  for (int d = 3; d <= 11; d += 2)
    for (double R : {0.5, 1.0, 2.0})
      for (int trial = 0; trial < 10; ++trial) {
        RadialFn p = random_bump(rng, 0.2, 4.0);
        while (!(p.hi > R + 0.25)) p = random_bump(rng, 0.2, 4.0);
        const double cl = proj_norm_L2(p, d, R), gl = gram_schmidt_oracle(p, d, R, Space::L2);
        const double ch = proj_norm_H1(p, d, R), gh = gram_schmidt_oracle(p, d, R, Space::H1);
        worst = std::max({worst, rel(cl, gl), rel(ch, gh)});
        ++cases;
      }
  if (worst > 1e-10) o.fail("Gram-Schmidt mismatch " + std::to_string(worst));
  o.detail << cases << " cases, max rel " << worst << "; ";

  // Golden formulas.
  double gworst = 0;
  const auto u = to_fn(RadialProfile::poly_bump(0.5, 3.0, {1.0, 0.3, -0.2}));
  for (double R : {0.7, 1.6}) {
    const double uR = u(R);
    auto I = [&](const std::function<double(double)>& h) { return integral(h, R, 3.0); };
    const double f3 = I([&](double r) { return std::pow(r * u.deriv(r, 1), 2); }) - uR * uR * R;
    gworst = std::max(gworst, rel(proj_norm_H1(u, 3, R), f3));
    const double g5n = I([&](double r) { return u(r) * u(r) * std::pow(r, 4); });
    const double g5m = I([&](double r) { return u(r) * r; });
    // <g, r^{-3}> = int g r dr, <r^{-3}, r^{-3}> = 1/R
    gworst = std::max(gworst, rel(proj_norm_L2(u, 5, R), g5n - g5m * g5m * R));
    const double f5 = I([&](double r) { return std::pow(u.deriv(r, 1), 2) * std::pow(r, 4); }) - 3 * std::pow(R, 3) * uR * uR;
    gworst = std::max(gworst, rel(proj_norm_H1(u, 5, R), f5));
    const double g7 = I([&](double r) { return u(r) * u(r) * std::pow(r, 6); }) - 3 * std::pow(R, 3) * g5m * g5m;
    gworst = std::max(gworst, rel(proj_norm_L2(u, 7, R), g7));
    const double f7 = I([&](double r) { return std::pow(u.deriv(r, 1), 2) * std::pow(r, 6); }) - 5 * uR * uR * std::pow(R, 5) -
                      R * std::pow(3 * g5m - uR * R * R, 2);
    gworst = std::max(gworst, rel(proj_norm_H1(u, 7, R), f7));
  }
  if (gworst > 1e-10) o.fail("golden formula mismatch " + std::to_string(gworst));
  o.detail << "golden max rel " << gworst;
}

void criterion6(Outcome& o) {
  const double R = 1.5;
  double worst_as = 0, worst_lim = 0, slowest = 0;
  for (int d : {3, 5, 7, 9})
    for (bool pure_f : {false, true}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto data = to_fn(RadialProfile::poly_bump(1, 3, {0.5, 0.25}));
      const auto src = pure_f ? physical_source(data, zero_fn(), d) : physical_source(zero_fn(), data, d);
      const std::string tag = std::string(pure_f ? "f" : "g") + " d=" + std::to_string(d);
      const double half = 0.5 * (pure_f ? proj_norm_H1(data, d, R) : proj_norm_L2(data, d, R));
      const auto as = asymptotic_energy_spectral(src, R);
      const double a = (pure_f ? as.as_f : as.as_g) / std::pow(2 * kPi, d);
      worst_as = std::max(worst_as, rel(a, half));
      if (rel(a, half) > 1e-6) o.fail("spectral vs projection " + tag);
      const auto rep = channel_verify(spectral_problem(src, R), {});
      if (!rep.monotone) o.fail("not monotone " + tag);
      if (!rep.limit_plus.converged || !rep.limit_minus.converged) o.fail("limit not settled " + tag);
      const double e = std::max(rel(rep.limit_plus.value, half), rel(rep.limit_minus.value, half));
      worst_lim = std::max(worst_lim, e);
      if (e > 0.01) o.fail("time-domain limit " + tag);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      slowest = std::max(slowest, secs);
      if (secs > 60) o.fail("runtime " + tag);
    }
  o.detail << "spectral max rel " << worst_as << ", limit max rel " << worst_lim << ", slowest case " << slowest << " s";
}

void criterion7(Outcome& o) {
  const double R = 1.0;
  int gens = 0, slow = 0;
  double worst_bound = 0, worst_ratio = 0;
  std::string slow_list;
  for (int d = 3; d <= 11; d += 2)
    for (SpecialKind kind : {SpecialKind::G, SpecialKind::F}) {
      const int imax = kind == SpecialKind::G ? d / 4 : (d + 2) / 4;
      for (int i = 1; i <= imax; ++i) {
        const auto s = special_solution(d, i, kind);
        const auto rep = proj_norm_pair(s.initial_f(R), s.initial_g(R), d, R);
        const double scale = rep.f_norm + rep.g_norm;
        worst_bound = std::max(worst_bound, 0.5 * std::abs(rep.total) / scale);
        if (0.5 * std::abs(rep.total) > 1e-10 * scale) o.fail("bound " + s.to_text());
        const double ratio = s.exterior_energy(R, 100 * R) / s.exterior_energy(R, 0.0);
        worst_ratio = std::max(worst_ratio, ratio);
        if (!(ratio < 0.05)) {
          ++slow;
          std::ostringstream os;
          os << (slow > 1 ? ", " : "") << "d=" << d << " " << s.to_text() << " ratio " << ratio;
          slow_list += os.str();
          o.fail("E(100R)/E(0) >= 5%");
        }
        ++gens;
      }
    }
  const auto s5 = special_solution(5, 1, SpecialKind::G);
  for (double t : {0.0, 1.0, 100.0}) {
    const double ref = 1 / (t + R) + 3 * t * t / std::pow(t + R, 3);
    if (rel(s5.exterior_energy(R, t), ref) > 1e-14) o.fail("d=5 closed form at t=" + std::to_string(t));
  }
  o.detail << gens << " generators, max bound/scale " << worst_bound << ", max E(100R)/E(0) " << worst_ratio;
  if (slow) o.detail << "; " << slow << " generators at or above 5%: " << slow_list;
}

void criterion8(Outcome& o) {
  int runs = 0, counter = 0, unsettled = 0;
  double margin = INFINITY;
  for (int d : {3, 5, 7}) {
    std::mt19937_64 rng(800 + d);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_bump(rng, 0.1, 3.0);
      const auto g = random_bump(rng, 0.1, 3.0);
      const double R = 0.5 + 1.5 * u(rng);
      const auto rep = channel_verify(spectral_problem(physical_source(f, g, d), R), {});
      ++runs;
      if (!rep.complete) {
        o.fail("run incomplete d=" + std::to_string(d) + ": " + rep.failure);
        continue;
      }
      if (!rep.limit_plus.converged || !rep.limit_minus.converged) ++unsettled;
      const double best = std::max(rep.limit_plus.value, rep.limit_minus.value);
      margin = std::min(margin, (best - rep.bound) / rep.scale);
      if (!rep.inequality_holds) {
        ++counter;
        o.fail("counterexample d=" + std::to_string(d) + " trial " + std::to_string(trial));
      }
    }
  }
  if (unsettled) o.fail(std::to_string(unsettled) + " limits did not settle");
  o.detail << runs << " runs, " << counter << " counterexamples, min (limit - bound)/scale " << margin;
}

void criterion9(Outcome& o) {
  int runs = 0;
  double margin = INFINITY;
  for (int d : {3, 5}) {
    std::mt19937_64 rng(900 + d);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_bump(rng, 0.1, 3.0);
      const auto g = random_bump(rng, 0.1, 3.0);
      const auto rep = channel_verify(spectral_problem(physical_source(f, g, d), 0.0), {});
      ++runs;
      if (!rep.complete) {
        o.fail("run incomplete: " + rep.failure);
        continue;
      }
      const double half = 0.5 * (rep.projection.f_norm + rep.projection.g_norm);
      // Each direction: every sampled exterior energy and the limit.
      bool plus_ok = rep.limit_plus.value >= half - 1e-6 * rep.scale;
      bool minus_ok = rep.limit_minus.value >= half - 1e-6 * rep.scale;
      for (const auto& s : rep.energy_curve) {
        if (s.t >= 0 && s.energy < half - 1e-6 * rep.scale) plus_ok = false;
        if (s.t <= 0 && s.energy < half - 1e-6 * rep.scale) minus_ok = false;
      }
      margin = std::min(margin, (std::max(rep.limit_plus.value, rep.limit_minus.value) - half) / rep.scale);
      if (!plus_ok && !minus_ok) o.fail("no direction retains half the energy d=" + std::to_string(d));
    }
  }
  o.detail << runs << " runs, min (limit - E/2)/E " << margin;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    void (*run)(Outcome&);
  };
  const Item items[] = {
      {1, "exact coefficient suite", criterion1},     {2, "distribution suite", criterion2},
      {3, "inverse transform pointwise", criterion3}, {4, "propagator oracles", criterion4},
      {5, "projection consistency", criterion5},      {6, "energy triangle", criterion6},
      {7, "forbidden subspace", criterion7},          {8, "inequality harness", criterion8},
      {9, "zero radius", criterion9},
  };
  const double limits[] = {5, 2, 0, 0, 0, 0, 0, 0, 0};
  bool all = true;
  for (const auto& it : items) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[it.id - 1] > 0 && secs > limits[it.id - 1]) o.fail("runtime " + std::to_string(secs) + " s");
    all = all && o.pass;
    std::printf("criterion %d (%s): %s [%.2f s] %s\n", it.id, it.name, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
