#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "channel/channel.hpp"
#include "channel/errors.hpp"
#include "channel/oracles.hpp"
#include "channel/projection.hpp"
#include "channel/special_solution.hpp"
#include "channel/spectral.hpp"

using namespace chan;
constexpr double kPi = std::numbers::pi;

namespace {

double integral(const std::function<double(double)>& f, double lo, double hi) {
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  return quad(f, lo, hi, q);
}

// Physical sources are costly to build; share them across tests.
const WaveSource& source(int d, bool with_f, bool with_g) {
  static std::map<std::tuple<int, bool, bool>, std::unique_ptr<WaveSource>> cache;
  auto& slot = cache[{d, with_f, with_g}];
  if (!slot) {
    const RadialFn f = with_f ? to_fn(RadialProfile::bump(1, 3)) : zero_fn();
    const RadialFn g = with_g ? to_fn(RadialProfile::poly_bump(1, 3, {0.5, 0.25})) : zero_fn();
    slot = std::make_unique<WaveSource>(physical_source(f, g, d));
  }
  return *slot;
}

}  // namespace

TEST(Hankel, ZeroData) {
  const auto v = hankel_forward(zero_fn(), 5, {0.5, 1.0, 7.0});
  for (double x : v) EXPECT_EQ(x, 0.0);
}

TEST(Hankel, ThreeDimensionalSineTransform) {
  const auto g = to_fn(RadialProfile::bump(1, 2));
  const std::vector<double> rho = {0.1, 0.7, 3.0, 11.0, 40.0};
  const auto v = hankel_forward(g, 3, rho);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double p = rho[i];
    const double ref = 4 * kPi / p * integral([&](double r) { return g(r) * std::sin(r * p) * r; }, 1, 2);
    EXPECT_NEAR(v[i], ref, 1e-12 * std::max(1.0, std::abs(ref))) << "rho=" << p;
  }
}

TEST(Hankel, PlancherelThreeDimensions) {
  const auto g = to_fn(RadialProfile::bump(1, 2));
  const auto src = physical_source(zero_fn(), g, 3);
  const auto S = spectral_data(src, 0.0);
  const double phys = integral([&](double r) { return g(r) * g(r) * r * r; }, 1, 2);
  EXPECT_NEAR(spectral_norm_g(S) / phys, std::pow(2 * kPi, 3), 1e-8 * std::pow(2 * kPi, 3));
  EXPECT_THROW(hankel_forward(g, 1, {1.0}), Unsupported);
}

TEST(Evolve, ReproducesDataAtTimeZero) {
  for (int d : {3, 5, 7}) {
    const auto& src = source(d, true, true);
    const auto S = spectral_data(src, 4.0);
    for (double r : {0.3, 1.2, 2.0, 2.7}) {
      const auto w = evolve(S, 0.0, r);
      EXPECT_NEAR(w.u, src.f(r), 1e-9) << "d=" << d << " r=" << r;
      EXPECT_NEAR(w.u_t, src.g(r), 1e-9) << "d=" << d << " r=" << r;
      EXPECT_NEAR(w.u_r, src.f.deriv(r, 1), 1e-9) << "d=" << d << " r=" << r;
    }
  }
}

TEST(Evolve, MatchesDalembertInThreeDimensions) {
  const auto& src = source(3, true, true);
  const auto S = spectral_data(src, 6.0);
  const auto w = evolve(S, 2.0, 3.5);
  const auto ref = dalembert_3d(src.f, src.g, 2.0, 3.5);
  EXPECT_NEAR(w.u, ref.u, 1e-8);
  EXPECT_NEAR(w.u_t, ref.u_t, 1e-8);
  EXPECT_NEAR(w.u_r, ref.u_r, 1e-8);
}

TEST(Evolve, FinitePropagationSpeed) {
  const auto& src = source(5, true, true);
  const auto S = spectral_data(src, 10.0);
  for (double r : {5.2, 6.0, 7.5}) EXPECT_LE(std::abs(evolve(S, 2.0, r).u), 1e-8) << r;
  EXPECT_THROW(evolve(S, 20.0, 5.0), AccuracyFailure);
}

TEST(Evolve, TravelingProfilesMatchDirectSlices) {
  for (int d : {3, 5, 9}) {
    const auto& src = source(d, true, true);
    SpectralSolution sol(src);
    const auto& prof = sol.profiles();
    const double t = 4.0;
    const TimeSlice slice(sol.grid_for(t + 8.0), t);
    for (double r : {0.6, 1.5, 3.0, 5.5}) {
      const auto a = prof.at(t, r), b = slice.at(r);
      EXPECT_NEAR(a.u, b.u, 1e-9) << "d=" << d << " r=" << r;
      EXPECT_NEAR(a.u_t, b.u_t, 1e-9) << "d=" << d << " r=" << r;
      EXPECT_NEAR(a.u_r, b.u_r, 1e-9) << "d=" << d << " r=" << r;
    }
  }
}

TEST(Evolve, TotalEnergyConserved) {
  for (int d : {3, 5, 7}) {
    SpectralSolution sol(source(d, true, true));
    const auto h = sol.handle();
    const double e0 = total_energy(h, 0.0);
    for (double t : {1.0, 5.0, 20.0}) EXPECT_NEAR(total_energy(h, t) / e0, 1.0, 1e-8) << "d=" << d << " t=" << t;
  }
}

TEST(BandSource, RealTransformAndPlancherel) {
  const auto src = band_source({}, {{1.0, 3.0, 0.4}}, 5);
  EXPECT_TRUE(src.f_zero);
  EXPECT_FALSE(src.g_zero);
  EXPECT_EQ(src.mode, SpectralMode::SpectralBand);
  const auto S = spectral_data(src, 0.0);
  const double phys = integral([&](double r) { return src.g(r) * src.g(r) * std::pow(r, 4); }, 0, src.radius_hi);
  EXPECT_NEAR(spectral_norm_g(S) / phys, std::pow(2 * kPi, 5), 1e-8 * std::pow(2 * kPi, 5));
  EXPECT_THROW(band_source({}, {{1.0, 1.0, 0.4}}, 5), InvalidArgument);
}

TEST(Dalembert, IdentityAtTimeZeroAndSupport) {
  const auto f = to_fn(RadialProfile::bump(1, 2));
  const auto g = to_fn(RadialProfile::bump(0.5, 2.5));
  for (double r : {0.4, 1.3, 1.8}) {
    const auto w = dalembert_3d(f, g, 0.0, r);
    EXPECT_NEAR(w.u, f(r), 1e-14);
    EXPECT_NEAR(w.u_t, g(r), 1e-14);
    EXPECT_NEAR(w.u_r, f.deriv(r, 1), 1e-12);
  }
  for (double r : {5.6, 7.0}) EXPECT_EQ(dalembert_3d(zero_fn(), g, 3.0, r).u, 0.0);
  EXPECT_THROW(dalembert_3d(f, g, 1.0, 0.0), InvalidArgument);
}

TEST(Dalembert, EnergyConserved) {
  const auto f = to_fn(RadialProfile::bump(1, 2));
  const auto g = to_fn(RadialProfile::bump(0.5, 2.5));
  const auto h = dalembert_handle(f, g, 2.5);
  const double e0 = total_energy(h, 0.0);
  for (double t : {0.5, 1.7, 4.0, 9.0}) EXPECT_NEAR(total_energy(h, t) / e0, 1.0, 1e-10) << t;
}

TEST(Descent, OrderZeroIsTheOddOneDimensionalWave) {
  const auto F = RadialProfile::gauss_poly(2.0, 0.5, {1.0});
  for (double t : {0.0, 0.7, 3.0})
    for (double r : {0.5, 1.9}) {
      const double ref = (eval_profile(F, r + t, 0) - eval_profile(F, t - r, 0)) / r;
      EXPECT_NEAR(descent_solution(F, 0, t, r).u, ref, 1e-14);
    }
}

TEST(Descent, FiniteDifferenceResidual) {
  const auto F = RadialProfile::gauss_poly(2.0, 0.6, {1.0, 0.3});
  for (int m : {1, 2}) {
    const int d = 2 * m + 3;
    // Fourth-order stencils keep the truncation error below the residual tolerance.
    const double h = 1e-2;
    auto d1 = [h](const std::function<double(double)>& f, double x) {
      return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
    };
    auto d2 = [h](const std::function<double(double)>& f, double x) {
      return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
    };
    for (double t : {0.5, 1.5, 3.0})
      for (double r : {0.4, 1.2, 2.5, 4.0}) {
        const std::function<double(double)> in_t = [&](double tt) { return descent_solution(F, m, tt, r).u; };
        const std::function<double(double)> in_r = [&](double rr) { return descent_solution(F, m, t, rr).u; };
        const double utt = d2(in_t, t), urr = d2(in_r, r), ur = d1(in_r, r);
        const double scale = std::max({std::abs(utt), std::abs(urr), std::abs((d - 1) / r * ur), 1.0});
        EXPECT_LE(std::abs(utt - urr - (d - 1) / r * ur), 1e-6 * scale) << "m=" << m << " t=" << t << " r=" << r;
        const auto w = descent_solution(F, m, t, r);
        EXPECT_NEAR(w.u_r, ur, 1e-6 * scale) << "m=" << m << " t=" << t << " r=" << r;
        EXPECT_NEAR(w.u_t, d1(in_t, t), 1e-6 * scale) << "m=" << m << " t=" << t << " r=" << r;
      }
  }
}

TEST(Descent, NeedsEnoughDerivatives) {
  auto F = RadialProfile::gauss_poly(2.0, 0.5, {1.0});
  F.max_derivative_order = 2;
  EXPECT_THROW(descent_solution(F, 2, 1.0, 1.0), Unsupported);
}

TEST(Descent, SpectralEvolutionReproducesDescentSolution) {
  const auto F = RadialProfile::gauss_poly(2.0, 0.5, {1.0});
  for (int m : {1, 2}) {
    const auto data = descent_initial_data(F, m);
    const auto src = physical_source(data.f, data.g, 2 * m + 3);
    const auto S = spectral_data(src, 10.0);
    for (double r : {0.5, 1.5, 4.0, 5.5}) {
      const auto a = evolve(S, 3.0, r), b = descent_solution(F, m, 3.0, r);
      EXPECT_NEAR(a.u, b.u, 1e-6) << "m=" << m << " r=" << r;
      EXPECT_NEAR(a.u_t, b.u_t, 1e-6) << "m=" << m << " r=" << r;
    }
  }
}

TEST(SpecialSolution, Examples) {
  const auto g5 = special_solution(5, 1, SpecialKind::G);
  ASSERT_EQ(g5.terms.size(), 1u);
  EXPECT_EQ(g5.terms[0].coef, Rational(1));
  EXPECT_EQ(g5.terms[0].t_exp, 1);
  EXPECT_EQ(g5.terms[0].r_exp, -3);
  const auto f7 = special_solution(7, 2, SpecialKind::F);
  ASSERT_EQ(f7.terms.size(), 2u);
  EXPECT_EQ(f7.terms[0].coef, Rational(-3));
  EXPECT_EQ(f7.terms[0].t_exp, 2);
  EXPECT_EQ(f7.terms[0].r_exp, -5);
  EXPECT_EQ(f7.terms[1].coef, Rational(1));
  EXPECT_EQ(f7.terms[1].t_exp, 0);
  EXPECT_EQ(f7.terms[1].r_exp, -3);
  const auto f3 = special_solution(3, 1, SpecialKind::F);
  ASSERT_EQ(f3.terms.size(), 1u);
  EXPECT_EQ(f3.terms[0].r_exp, -1);
  EXPECT_EQ(f3.terms[0].t_exp, 0);
}

TEST(SpecialSolution, ExactResidualVanishesForEveryGenerator) {
  for (int d = 3; d <= 21; d += 2) {
    for (int i = 1; i <= d / 4; ++i) EXPECT_TRUE(special_solution(d, i, SpecialKind::G).residual().empty()) << d;
    for (int i = 1; i <= (d + 2) / 4; ++i) EXPECT_TRUE(special_solution(d, i, SpecialKind::F).residual().empty()) << d;
  }
}

TEST(SpecialSolution, NumericResidual) {
  const auto s = special_solution(11, 3, SpecialKind::F);
  const double h = 1e-3, t = 0.8, r = 1.7;
  auto u = [&](double tt, double rr) { return s.eval(tt, rr).u; };
  const double res = (u(t + h, r) - 2 * u(t, r) + u(t - h, r)) / (h * h) - (u(t, r + h) - 2 * u(t, r) + u(t, r - h)) / (h * h) -
                     10 / r * (u(t, r + h) - u(t, r - h)) / (2 * h);
  EXPECT_LE(std::abs(res), 1e-4 * std::max(1.0, std::abs(u(t, r))));
}

TEST(SpecialSolution, IndexRange) {
  EXPECT_THROW(special_solution(5, 2, SpecialKind::G), InvalidArgument);
  EXPECT_THROW(special_solution(3, 1, SpecialKind::G), InvalidArgument);
  EXPECT_THROW(special_solution(5, 2, SpecialKind::F), InvalidArgument);
  EXPECT_THROW(special_solution(4, 1, SpecialKind::F), InvalidArgument);
  EXPECT_NO_THROW(special_solution(7, 2, SpecialKind::F));
}

TEST(ExteriorEnergy, FiveDimensionalSpecialSolution) {
  const auto s = special_solution(5, 1, SpecialKind::G);
  const double R = 1.3;
  EXPECT_NEAR(s.exterior_energy(R, 0.0), 1 / R, 1e-15);
  for (double t : {0.5, 3.0, 100 * R}) {
    const double ref = 1 / (t + R) + 3 * t * t / std::pow(t + R, 3);
    EXPECT_NEAR(s.exterior_energy(R, t), ref, 1e-14 * ref) << t;
    EXPECT_NEAR(exterior_energy(s.handle(), R, t), ref, 1e-9 * ref) << t;
  }
}

TEST(ExteriorEnergy, CompactDataAtTimeZero) {
  SpectralSolution sol(source(5, true, true));
  const auto& src = sol.source();
  const double R = 1.4;
  const double ref = integral([&](double r) { return (std::pow(src.f.deriv(r, 1), 2) + std::pow(src.g(r), 2)) * std::pow(r, 4); },
                              R, 3.0);
  EXPECT_NEAR(exterior_energy(sol.handle(), R, 0.0), ref, 1e-9 * ref);
}

TEST(AsymptoticSpectral, ZeroRadiusGivesHalfNorms) {
  const auto& src = source(5, true, true);
  const auto S = spectral_data(src, 0.0);
  const auto as = asymptotic_energy_spectral(S, 0.0);
  EXPECT_NEAR(as.as_f, 0.5 * spectral_norm_f(S), 1e-12 * spectral_norm_f(S));
  EXPECT_NEAR(as.as_g, 0.5 * spectral_norm_g(S), 1e-12 * spectral_norm_g(S));
}

TEST(AsymptoticSpectral, MatchesProjection) {
  const double R = 1.5;
  for (int d : {3, 5, 7}) {
    const auto& sg = source(d, false, true);
    const double cg = std::pow(2 * kPi, d);
    EXPECT_NEAR(asymptotic_energy_spectral(sg, R).as_g / cg, 0.5 * proj_norm_L2(sg.g, d, R),
                1e-6 * 0.5 * proj_norm_L2(sg.g, d, R))
        << "d=" << d;
    const auto& sf = source(d, true, false);
    EXPECT_NEAR(asymptotic_energy_spectral(sf, R).as_f / cg, 0.5 * proj_norm_H1(sf.f, d, R),
                1e-6 * 0.5 * proj_norm_H1(sf.f, d, R))
        << "d=" << d;
  }
}

TEST(AsymptoticSpectral, ThreeDimensionalFGolden) {
  const auto& sf = source(3, true, false);
  const double R = 1.5;
  const double ref = 0.5 * (integral([&](double r) { return std::pow(r * sf.f.deriv(r, 1), 2); }, R, 3) - R * sf.f(R) * sf.f(R));
  EXPECT_NEAR(asymptotic_energy_spectral(sf, R).as_f / std::pow(2 * kPi, 3), ref, 1e-6 * ref);
}

TEST(Extrapolation, NevilleIsExactOnPolynomials) {
  const std::vector<double> h = {0.5, 0.25, 0.125, 0.0625};
  std::vector<double> y;
  for (double x : h) y.push_back(2 - 3 * x + 0.5 * x * x * x);
  EXPECT_NEAR(neville_at_zero(h, y), 2.0, 1e-13);
}

TEST(Extrapolation, LimitOfRationalDecay) {
  std::vector<double> t, e;
  for (int j = 0; j < 6; ++j) {
    t.push_back(4 * std::pow(2.0, j));
    e.push_back(0.7 + 1 / (t.back() + 1));
  }
  const auto est = extrapolate_limit(t, e, 4, 0.005, 1e-12);
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.value, 0.7, 1e-3);
}

TEST(Channel, PureGEqualityFiveDimensions) {
  const auto& src = source(5, false, true);
  const auto rep = channel_verify(spectral_problem(src, 1.0), {});
  EXPECT_TRUE(rep.pure_data);
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.equality_case) << rep.limit_plus.value << " " << rep.limit_minus.value << " " << rep.bound;
  EXPECT_TRUE(rep.all_verdicts()) << rep.failure;
  EXPECT_NEAR(rep.limit_plus.value / rep.bound, 1.0, 0.01);
  EXPECT_NEAR(rep.limit_minus.value / rep.bound, 1.0, 0.01);
}

TEST(Channel, ForbiddenSubspaceSevenDimensions) {
  for (int i = 1; i <= 2; ++i) {
    const auto s = special_solution(7, i, SpecialKind::F);
    const auto rep = channel_verify(special_problem(s, 1.0), {});
    EXPECT_NEAR(rep.bound, 0.0, 1e-10 * rep.scale);
    EXPECT_TRUE(rep.monotone);
    EXPECT_LT(s.exterior_energy(1.0, 100.0), 0.05 * s.exterior_energy(1.0, 0.0));
    EXPECT_TRUE(rep.inequality_holds);
  }
}

TEST(Channel, ZeroRadiusMixedData) {
  const auto& src = source(3, true, true);
  const auto rep = channel_verify(spectral_problem(src, 0.0), {});
  EXPECT_NEAR(rep.bound, 0.5 * (rep.projection.f_norm + rep.projection.g_norm), 1e-12 * rep.scale);
  EXPECT_TRUE(rep.inequality_holds);
  EXPECT_GE(std::max(rep.limit_plus.value, rep.limit_minus.value), rep.bound - 1e-6 * rep.scale);
}

TEST(Channel, RejectsBadSchedules) {
  const auto s = special_solution(5, 1, SpecialKind::G);
  ChannelOptions o;
  o.t_schedule = {2.0, 1.0};
  EXPECT_THROW(channel_verify(special_problem(s, 1.0), o), InvalidArgument);
}
