#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "channel/errors.hpp"
#include "channel/pairing.hpp"
#include "channel/projection.hpp"
#include "channel/quadrature.hpp"

using namespace chan;
constexpr double kPi = std::numbers::pi;

namespace {

RadialFn power_fn(double p, double lo = 0) {
  RadialFn u;
  u.lo = lo;
  u.hi = 10;
  u.max_order = 2;
  u.eval = [p](double r, int k) {
    double c = 1;
    for (int l = 0; l < k; ++l) c *= p - l;
    return c * std::pow(r, p - k);
  };
  return u;
}

// Direct evaluation of
//   int_{-R}^{R} [int (k_e * D1)(xi/r) a(r) dr] conj[int (k_e * D2)(xi/r) b(r) dr] dxi
// with the standard bump mollifier of width eps, for real-coefficient D.
// The inner integral is taken in x = xi/r on a fixed grid that resolves the
// mollified jumps at x = +-1.
class MollifiedOracle {
 public:
  explicit MollifiedOracle(double eps) : eps_(eps) {
    norm_ = quad([](double s) { return bump(s); }, -1, 1);
    const double e = eps_;
    for (double sgn : {-1.0, 1.0}) {
      std::vector<double> x, w;
      composite_rule(1e-9, 1 - e, 400, 16, x, w);
      composite_rule(1 - e, 1 + e, 16, 16, x, w);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x_.push_back(sgn * x[i]);
        w_.push_back(w[i]);
      }
    }
  }

  double kappa(double x, int deriv) const {
    const double s = x / eps_;
    if (std::abs(s) >= 1) return 0.0;
    const double b = bump(s) / (norm_ * eps_);
    if (deriv == 0) return b;
    return b * (-2 * s / ((1 - s * s) * (1 - s * s))) / eps_;
  }

  double convolved(const BoundaryDistribution& D, double x) const {
    double v = 0;
    const double lo = std::max(-1.0, x - eps_), hi = std::min(1.0, x + eps_);
    if (hi > lo) {
      std::vector<double> y, w;
      composite_rule(lo, hi, 4, 16, y, w);
      for (std::size_t m = 0; m < D.poly.size(); ++m) {
        const double c = D.poly[m].to_complex().real();
        if (c == 0) continue;
        double s = 0;
        for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * std::pow(y[i], m) * kappa(x - y[i], 0);
        v += c * s;
      }
    }
    v += D.delta_plus.to_complex().real() * kappa(x - 1, 0);
    v += D.delta_minus.to_complex().real() * kappa(x + 1, 0);
    v += D.dprime_plus.to_complex().real() * kappa(x - 1, 1);
    v += D.dprime_minus.to_complex().real() * kappa(x + 1, 1);
    return v;
  }

  std::vector<double> profile(const BoundaryDistribution& D, const RadialFn& a, const std::vector<double>& xi) const {
    std::vector<double> kd(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) kd[i] = convolved(D, x_[i]);
    std::vector<double> out(xi.size(), 0.0);
    for (std::size_t j = 0; j < xi.size(); ++j) {
      double s = 0;
      for (std::size_t i = 0; i < x_.size(); ++i) {
        if (kd[i] == 0 || (x_[i] > 0) != (xi[j] > 0)) continue;
        const double r = xi[j] / x_[i];
        s += w_[i] * kd[i] * a(r) * std::abs(xi[j]) / (x_[i] * x_[i]);
      }
      out[j] = s;
    }
    return out;
  }

  double pairing(const BoundaryDistribution& D1, const BoundaryDistribution& D2, double R, const RadialFn& a,
                 const RadialFn& b) const {
    std::vector<double> xi, w;
    composite_rule(-R, 0, 100, 16, xi, w);
    composite_rule(0, R, 100, 16, xi, w);
    const auto A = profile(D1, a, xi), B = profile(D2, b, xi);
    double s = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) s += w[i] * A[i] * B[i];
    return s;
  }

 private:
  static double bump(double s) { return std::abs(s) < 1 ? std::exp(-1 / (1 - s * s)) : 0.0; }
  double eps_;
  double norm_ = 1;
  std::vector<double> x_, w_;
};

BoundaryDistribution chi(int m) {
  BoundaryDistribution D;
  D.poly.assign(m + 1, GaussianRational{});
  D.poly[m] = 1;
  return D;
}
BoundaryDistribution delta(bool plus, bool prime) {
  BoundaryDistribution D;
  (prime ? (plus ? D.dprime_plus : D.dprime_minus) : (plus ? D.delta_plus : D.delta_minus)) = 1;
  return D;
}

}  // namespace

TEST(KernelPairing, DelDelExample) {
  const auto r = power_fn(1.0);
  const SeparableKernel K{1.0, r, r};
  const auto res = kernel_pairing(delta(true, false), delta(true, false), 1.0, K);
  EXPECT_NEAR(res.value.real(), 0.2, 1e-13);
  ASSERT_EQ(res.trace.size(), 1u);
  EXPECT_EQ(res.trace[0].rule, "del-del");
  EXPECT_EQ(kernel_pairing(delta(true, false), delta(false, false), 1.0, K).value, std::complex<double>(0.0));
}

TEST(KernelPairing, ChiChiOutsideRadius) {
  const double R = 0.8;
  const RadialFn g = to_fn(RadialProfile::bump(R + 1, R + 2));
  const SeparableKernel K{1.0, g, g};
  const double ig = quad([&](double r) { return g(r); }, R + 1, R + 2);
  EXPECT_NEAR(kernel_pairing(chi(0), chi(0), R, K).value.real(), 2 * R * ig * ig, 1e-12);
}

TEST(KernelPairing, ConjugateSymmetry) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(-4, 4);
  auto rnd = [&] {
    BoundaryDistribution D;
    for (int m = 0; m < 3; ++m) D.poly.push_back(GaussianRational(small(rng), small(rng)));
    D.delta_plus = GaussianRational(small(rng), small(rng));
    D.delta_minus = GaussianRational(small(rng), small(rng));
    D.dprime_plus = GaussianRational(small(rng), small(rng));
    D.dprime_minus = GaussianRational(small(rng), small(rng));
    return D;
  };
  const RadialFn a = to_fn(RadialProfile::bump(0.4, 2.2));
  const RadialFn b = to_fn(RadialProfile::poly_bump(0.7, 1.9, {1.0, -0.5, 0.3}));
  const SeparableKernel K{0.7, a, b};
  for (int trial = 0; trial < 5; ++trial) {
    const auto D1 = rnd(), D2 = rnd();
    const auto x = kernel_pairing(D1, D2, 1.1, K).value;
    const auto y = kernel_pairing(D2, D1, 1.1, K.transposed()).value;
    EXPECT_LE(std::abs(x - std::conj(y)), 1e-10 * std::max(1.0, std::abs(x)));
  }
}

TEST(KernelPairing, TraceCoversEveryComponentPair) {
  const auto D = closed_ft_psi(2);
  const RadialFn a = to_fn(RadialProfile::bump(0.5, 2.5));
  const auto res = kernel_pairing(D, D, 1.0, SeparableKernel{1.0, a, a});
  std::size_t comps = 0;
  for (const auto& c : D.poly) comps += !c.is_zero();
  for (const auto* c : {&D.delta_plus, &D.delta_minus, &D.dprime_plus, &D.dprime_minus}) comps += !c->is_zero();
  EXPECT_EQ(res.trace.size(), comps * comps);
  std::complex<double> s = 0;
  for (const auto& t : res.trace) s += t.contribution;
  EXPECT_LE(std::abs(s - res.value), 1e-12 * std::abs(res.value));
}

TEST(KernelPairing, NeedsDerivativeForDeltaPrime) {
  RadialFn a = to_fn(RadialProfile::bump(0.5, 2.5));
  a.max_order = 0;
  EXPECT_THROW(kernel_pairing(delta(true, true), delta(true, true), 1.0, SeparableKernel{1.0, a, a}), Unsupported);
  EXPECT_THROW(kernel_pairing(chi(0), chi(0), 0.0, SeparableKernel{1.0, a, a}), InvalidArgument);
}

struct RuleCase {
  const char* name;
  BoundaryDistribution D1, D2;
};

TEST(KernelPairing, LimitRulesMatchMollifiedIntegrals) {
  // Supports straddle R so every region of each rule contributes.
  const double R = 1.0;
  const RadialFn a = to_fn(RadialProfile::poly_bump(0.4, 1.8, {1.0, 0.5}));
  const RadialFn b = to_fn(RadialProfile::bump(0.6, 2.0));
  const SeparableKernel K{1.0, a, b};
  const std::vector<RuleCase> cases = {
      {"chi-chi", chi(0), chi(0)},
      {"chi-chi xi^2 / 1", chi(2), chi(0)},
      {"chi-chi odd", chi(2), chi(1)},
      {"del-del", delta(true, false), delta(true, false)},
      {"del-del minus", delta(false, false), delta(false, false)},
      {"delP-delP", delta(true, true), delta(true, true)},
      {"chi-del", chi(1), delta(false, false)},
      {"del-chi", delta(true, false), chi(2)},
      {"chi-delP", chi(1), delta(true, true)},
      {"delP-chi", delta(false, true), chi(0)},
      {"del-delP", delta(true, false), delta(true, true)},
      {"delP-del", delta(false, true), delta(false, false)},
  };
  const double eps = 1e-3;
  const MollifiedOracle oracle(eps);
  for (const auto& c : cases) {
    SCOPED_TRACE(c.name);
    const double exact = kernel_pairing(c.D1, c.D2, R, K).value.real();
    const double moll = oracle.pairing(c.D1, c.D2, R, a, b);
    // Mollification error at eps = 1e-3 is below 1e-4 relative for these kernels.
    EXPECT_NEAR(exact, moll, 5e-4 * std::max(0.01, std::abs(exact))) << c.name;
  }
}

TEST(AsymptoticEnergyPairing, ThreeDimensionalG) {
  const double R = 1.0;
  const RadialFn g = to_fn(RadialProfile::bump(1, 2));
  const double v = asymptotic_energy_pairing(3, R, g, DataKind::G);
  const double ref = 4 * std::pow(kPi, 3) * quad([&](double r) { return g(r) * g(r) * r * r; }, 1, 2);
  EXPECT_NEAR(v / ref, 1.0, 1e-10);
}

TEST(AsymptoticEnergyPairing, ZeroData) {
  EXPECT_EQ(asymptotic_energy_pairing(5, 1.0, zero_fn(), DataKind::G), 0.0);
}

TEST(AsymptoticEnergyPairing, MatchesProjectionFiveDimensions) {
  const RadialFn g = to_fn(RadialProfile::bump(0.5, 2.5));
  for (double R : {0.7, 1.3, 2.0}) {
    const double v = asymptotic_energy_pairing(5, R, g, DataKind::G);
    const double p = std::pow(2.0, 4) * std::pow(kPi, 5) * proj_norm_L2(g, 5, R);
    EXPECT_NEAR(v / p, 1.0, 1e-8) << "R=" << R;
  }
}

TEST(AsymptoticEnergyPairing, ThreeDimensionalF) {
  const RadialFn f = to_fn(RadialProfile::bump(0.5, 2.5));
  const double R = 1.2;
  const double v = asymptotic_energy_pairing(3, R, f, DataKind::F);
  const double tail = quad([&](double r) { return std::pow(r * f.deriv(r, 1), 2); }, R, 2.5);
  const double ref = 4 * std::pow(kPi, 3) * (tail - f(R) * f(R) * R);
  EXPECT_NEAR(v / ref, 1.0, 1e-9);
}

TEST(AsymptoticEnergyPairing, FNeedsDerivative) {
  RadialFn f = to_fn(RadialProfile::bump(0.5, 2.5));
  f.max_order = 0;
  EXPECT_THROW(asymptotic_energy_pairing(5, 1.0, f, DataKind::F), Unsupported);
}
