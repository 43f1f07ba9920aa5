#include "channel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "channel/errors.hpp"

namespace chan {

namespace {

constexpr double kPi = std::numbers::pi;

double forward_constant(int d) { return std::pow(2 * kPi, d / 2.0) * std::sqrt(2 / kPi); }
double inverse_constant(int d) { return std::pow(2 * kPi, -d / 2.0) * std::sqrt(2 / kPi); }

double ipow(double x, int n) {
  double r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void check_dim(int d) {
  if (d < 3 || d % 2 == 0) throw Unsupported("spectral propagation needs an odd dimension d >= 3 (d = 1 uses d'Alembert)");
}

}  // namespace

ChebyshevTable::ChebyshevTable(const std::function<double(double)>& f, double lo, double hi, int panels, int points)
    : lo_(lo), hi_(hi), panels_(std::max(1, panels)), points_(points) {
  h_ = (hi_ - lo_) / panels_;
  nodes_.resize(points_);
  bary_.resize(points_);
  for (int j = 0; j < points_; ++j) {
    nodes_[j] = -std::cos(kPi * j / (points_ - 1));  // ascending Chebyshev-Lobatto points
    bary_[j] = (j % 2 ? -1.0 : 1.0) * ((j == 0 || j == points_ - 1) ? 0.5 : 1.0);
  }
  values_.resize(static_cast<std::size_t>(panels_) * points_);
  for (int p = 0; p < panels_; ++p) {
    const double a = lo_ + p * h_;
    for (int j = 0; j < points_; ++j) values_[static_cast<std::size_t>(p) * points_ + j] = f(a + (nodes_[j] + 1) * h_ / 2);
  }
}

double ChebyshevTable::operator()(double x) const {
  if (panels_ == 0 || x < lo_ || x > hi_) return 0.0;
  int p = static_cast<int>((x - lo_) / h_);
  p = std::clamp(p, 0, panels_ - 1);
  const double a = lo_ + p * h_;
  const double s = 2 * (x - a) / h_ - 1;
  const double* v = &values_[static_cast<std::size_t>(p) * points_];
  double num = 0, den = 0;
  for (int j = 0; j < points_; ++j) {
    const double diff = s - nodes_[j];
    if (diff == 0) return v[j];
    const double c = bary_[j] / diff;
    num += c * v[j];
    den += c;
  }
  return num / den;
}

std::vector<double> hankel_forward(const RadialFn& g, int d, const std::vector<double>& rho, const QuadratureSpec&) {
  check_dim(d);
  std::vector<double> out(rho.size(), 0.0);
  if (g.is_zero() || rho.empty()) return out;
  if (!std::isfinite(g.hi)) throw Unsupported("forward transform needs data with compact (or truncated) support");
  const int n = (d - 3) / 2;
  double rmax = 0;
  for (double x : rho) rmax = std::max(rmax, std::abs(x));
  std::vector<double> cuts{g.lo};
  for (double b : g.breakpoints)
    if (b > g.lo && b < g.hi) cuts.push_back(b);
  cuts.push_back(g.hi);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> r, w;
  const double len = g.hi - g.lo;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double seg = cuts[s + 1] - cuts[s];
    if (seg <= 0) continue;
    const int panels = std::max(8, static_cast<int>(std::ceil(std::max(rmax * seg / 8.0, 48.0 * seg / len))));
    composite_rule(cuts[s], cuts[s + 1], panels, 16, r, w);
  }
  std::vector<double> gw(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) gw[i] = w[i] * g(r[i]) * ipow(r[i], d - 1);
  const double c = forward_constant(d);
  std::vector<double> terms(r.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      double K, dK;
      reduced_bessel_pair(n, r[i] * rho[k], K, dK);
      terms[i] = gw[i] * K;
    }
    out[k] = c * pairwise_sum(terms.data(), terms.size());
  }
  return out;
}

namespace {

// Smallest rho beyond which max(|rho f^|, |g^|) rho^{(d-1)/2} stays below tol * peak.
double find_rho_cut(const std::function<double(double)>& amp, double tol, double cap) {
  double peak = 0, rho = 0.25;
  int below = 0;
  double first_below = cap;
  while (rho < cap) {
    const double a = amp(rho);
    if (a > peak) peak = a;
    if (peak > 0 && a < tol * peak) {
      if (below == 0) first_below = rho;
      if (++below >= 8) return first_below;
    } else {
      below = 0;
    }
    rho *= 1.06;
  }
  return cap;
}

}  // namespace

WaveSource physical_source(const RadialFn& f, const RadialFn& g, int d, const SpectralOptions& opts) {
  check_dim(d);
  WaveSource src;
  src.dim = OddDimension::make(d);
  src.mode = SpectralMode::PhysicalCompact;
  src.options = opts;
  src.f = f.is_zero() ? zero_fn() : f;
  src.g = g.is_zero() ? zero_fn() : g;
  src.f_zero = f.is_zero() || !(f.hi > f.lo);
  src.g_zero = g.is_zero() || !(g.hi > g.lo);
  if (src.f_zero && src.g_zero) {
    src.fhat = [](double) { return 0.0; };
    src.ghat = [](double) { return 0.0; };
    return src;
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (const RadialFn* u : {&src.f, &src.g}) {
    if (!(u->hi > u->lo)) continue;
    if (!std::isfinite(u->hi)) throw Unsupported("physical-compact mode needs compactly supported data");
    lo = std::min(lo, u->lo);
    hi = std::max(hi, u->hi);
  }
  src.radius_lo = lo;
  src.radius_hi = hi;
  const double half = (d - 1) / 2.0;
  auto amp = [&](double rho) {
    const std::vector<double> x{rho};
    double a = 0;
    if (!src.f_zero) a = std::max(a, std::abs(rho * hankel_forward(src.f, d, x)[0]));
    if (!src.g_zero) a = std::max(a, std::abs(hankel_forward(src.g, d, x)[0]));
    return a * std::pow(rho, half);
  };
  src.rho_lo = 0;
  src.rho_hi = find_rho_cut(amp, opts.rho_tail_tol, opts.rho_cap);
  const int panels = std::max(8, static_cast<int>(std::ceil(src.rho_hi * hi / 8.0)));
  const int points = 24;
  // Evaluate both transforms on the Chebyshev nodes in one pass per function.
  auto build = [&](const RadialFn& u) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(panels) * points);
    const double h = src.rho_hi / panels;
    for (int p = 0; p < panels; ++p)
      for (int j = 0; j < points; ++j) xs.push_back(p * h + (1 - std::cos(kPi * j / (points - 1))) * h / 2);
    const auto vals = hankel_forward(u, d, xs);
    std::map<double, double> lookup;
    for (std::size_t i = 0; i < xs.size(); ++i) lookup[xs[i]] = vals[i];
    auto table = std::make_shared<ChebyshevTable>(
        [&](double x) {
          auto it = lookup.find(x);
          return it != lookup.end() ? it->second : hankel_forward(u, d, std::vector<double>{x})[0];
        },
        0.0, src.rho_hi, panels, points);
    return std::function<double(double)>([table](double x) { return (*table)(x); });
  };
  src.fhat = src.f_zero ? std::function<double(double)>([](double) { return 0.0; }) : build(src.f);
  src.ghat = src.g_zero ? std::function<double(double)>([](double) { return 0.0; }) : build(src.g);
  return src;
}

namespace {

double band_value(const std::vector<BandTerm>& bands, double rho) {
  double s = 0;
  for (const auto& b : bands) {
    const double x = (rho - b.center) / b.width;
    if (std::abs(x) <= 7.0) s += b.amplitude * std::exp(-x * x);
  }
  return s;
}

}  // namespace

WaveSource band_source(const std::vector<BandTerm>& f_bands, const std::vector<BandTerm>& g_bands, int d,
                       const SpectralOptions& opts) {
  check_dim(d);
  WaveSource src;
  src.dim = OddDimension::make(d);
  src.mode = SpectralMode::SpectralBand;
  src.options = opts;
  src.f_bands = f_bands;
  src.g_bands = g_bands;
  src.f_zero = f_bands.empty();
  src.g_zero = g_bands.empty();
  src.fhat = [f_bands](double rho) { return band_value(f_bands, rho); };
  src.ghat = [g_bands](double rho) { return band_value(g_bands, rho); };
  double lo = std::numeric_limits<double>::infinity(), hi = 0, wmin = std::numeric_limits<double>::infinity();
  for (const auto* v : {&f_bands, &g_bands})
    for (const auto& b : *v) {
      if (!(b.width > 0)) throw InvalidArgument("band width must be positive");
      lo = std::min(lo, b.center - 7 * b.width);
      hi = std::max(hi, b.center + 7 * b.width);
      wmin = std::min(wmin, b.width);
    }
  if (src.f_zero && src.g_zero) {
    src.f = zero_fn();
    src.g = zero_fn();
    return src;
  }
  if (lo <= 0) throw InvalidArgument("band data must be supported away from rho = 0 (center > 7 width)");
  src.rho_lo = lo;
  src.rho_hi = hi;

  // Physical radius: grow a trial radius until the inverse transform has decayed.
  double L = 16.0 / wmin;
  std::shared_ptr<SpectralData> grid;
  for (int attempt = 0; attempt < 6; ++attempt) {
    src.radius_lo = 0;
    src.radius_hi = 0;  // spectral_data adds radius_hi to the extent
    grid = std::make_shared<SpectralData>(spectral_data(src, 2 * L));
    const TimeSlice slice(*grid, 0.0);
    const double half = (d - 1) / 2.0;
    double peak = 0;
    std::vector<std::pair<double, double>> env;
    const int samples = 800;
    for (int i = 1; i <= samples; ++i) {
      const double r = 2 * L * i / samples;
      const WaveState s = slice.at(r);
      const double a = (std::abs(s.u_r) + std::abs(s.u_t)) * std::pow(r, half);
      env.emplace_back(r, a);
      peak = std::max(peak, a);
    }
    double cut = 2 * L;
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->second > opts.radius_tail_tol * peak) {
        cut = it->first;
        break;
      }
    if (cut < 1.6 * L) {
      L = cut;
      break;
    }
    L *= 2;
  }
  src.radius_hi = L;
  auto data_grid = std::make_shared<SpectralData>(spectral_data(src, 0.0));
  auto slice0 = std::make_shared<TimeSlice>(*data_grid, 0.0);
  auto make = [data_grid, slice0, L](bool is_f) {
    RadialFn u;
    u.lo = 0;
    u.hi = L;
    u.max_order = is_f ? 1 : 0;
    u.eval = [data_grid, slice0, is_f](double r, int k) {
      const WaveState w = slice0->at(r);
      if (is_f) return k == 0 ? w.u : w.u_r;
      return w.u_t;
    };
    return u;
  };
  src.f = src.f_zero ? zero_fn() : make(true);
  src.g = src.g_zero ? zero_fn() : make(false);
  return src;
}

SpectralData spectral_data(const WaveSource& src, double extent) {
  SpectralData S;
  S.dim = src.dim;
  S.mode = src.mode;
  S.rho_lo = src.rho_lo;
  S.rho_hi = src.rho_hi;
  S.extent = extent;
  if (src.f_zero && src.g_zero) return S;
  const double eff = extent + src.radius_hi + 1.0;
  const double range = src.rho_hi - src.rho_lo;
  const int panels = std::max(4, static_cast<int>(std::ceil(range * eff / src.options.phase_per_panel)));
  composite_rule(src.rho_lo, src.rho_hi, panels, 16, S.rho, S.weight);
  S.fhat.resize(S.rho.size());
  S.ghat.resize(S.rho.size());
  for (std::size_t k = 0; k < S.rho.size(); ++k) {
    S.fhat[k] = src.f_zero ? 0.0 : src.fhat(S.rho[k]);
    S.ghat[k] = src.g_zero ? 0.0 : src.ghat(S.rho[k]);
  }
  return S;
}

TimeSlice::TimeSlice(const SpectralData& S, double t) : S_(&S), t_(t) {
  const int d = S.dim.d;
  const double c = inverse_constant(d);
  const std::size_t N = S.rho.size();
  A_.resize(N);
  B_.resize(N);
  Ar_.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double rho = S.rho[k];
    const double base = c * S.weight[k] * ipow(rho, d - 1);
    const double ct = std::cos(t * rho), st = std::sin(t * rho);
    // sin(t rho)/rho, continuous at rho = 0
    const double sinc = rho > 0 ? st / rho : t;
    A_[k] = base * (ct * S.fhat[k] + sinc * S.ghat[k]);
    B_[k] = base * (-rho * st * S.fhat[k] + ct * S.ghat[k]);
    Ar_[k] = A_[k] * rho;
  }
}

WaveState TimeSlice::at(double r) const {
  const int n = S_->dim.n;
  const std::size_t N = S_->rho.size();
  double u = 0, ut = 0, ur = 0;
  for (std::size_t k = 0; k < N; ++k) {
    double K, dK;
    reduced_bessel_pair(n, r * S_->rho[k], K, dK);
    u += A_[k] * K;
    ut += B_[k] * K;
    ur += Ar_[k] * dK;
  }
  return {u, ut, ur};
}

WaveState evolve(const SpectralData& S, double t, double r) {
  const TimeSlice slice(S, t);
  const WaveState w = slice.at(r);
  if (std::abs(t) + r > S.extent * (1 + 1e-12) + 1e-12)
    throw AccuracyFailure("evaluation point lies beyond the extent resolved by the spectral grid", w.u, 0.0);
  return w;
}

TravelingProfiles::TravelingProfiles(const SpectralData& S, double reach) : S_(&S), reach_(reach) {
  const int n = S.dim.n;
  kappa_ = (n % 2 ? -1.0 : 1.0) * inverse_constant(S.dim.d);
  coef_ = descent_coefficients(n);
  wf_.resize(S.rho.size());
  wg_.resize(S.rho.size());
  for (std::size_t j = 0; j < S.rho.size(); ++j) {
    wf_[j] = 0.5 * S.weight[j] * S.fhat[j] * S.rho[j];
    wg_[j] = 0.5 * S.weight[j] * S.ghat[j];
  }
}

void TravelingProfiles::profiles(double s, std::vector<double>& A, std::vector<double>& B) const {
  const int kmax = S_->dim.n + 1;
  A.assign(kmax + 1, 0.0);
  B.assign(kmax + 1, 0.0);
  if (std::abs(s) > reach_) return;
  // sums of w rho^k {sin, cos}(s rho) for the f and g parts
  std::vector<double> sf(kmax + 1, 0.0), cf(kmax + 1, 0.0), sg(kmax + 1, 0.0), cg(kmax + 1, 0.0);
  const std::size_t N = S_->rho.size();
  for (std::size_t j = 0; j < N; ++j) {
    const double rho = S_->rho[j];
    const double sn = std::sin(s * rho), cs = std::cos(s * rho);
    double pf = wf_[j], pg = wg_[j];
    for (int k = 0; k <= kmax; ++k) {
      sf[k] += pf * sn;
      cf[k] += pf * cs;
      sg[k] += pg * sn;
      cg[k] += pg * cs;
      pf *= rho;
      pg *= rho;
    }
  }
  for (int k = 0; k <= kmax; ++k) {
    // d^k/ds^k of sin and cos shift the phase by k pi / 2
    double dsin, dcos;
    switch (k % 4) {
      case 0: dsin = sf[k]; dcos = cg[k]; break;
      case 1: dsin = cf[k]; dcos = -sg[k]; break;
      case 2: dsin = -sf[k]; dcos = -cg[k]; break;
      default: dsin = -cf[k]; dcos = sg[k]; break;
    }
    A[k] = dsin - dcos;
    B[k] = dsin + dcos;
  }
}

WaveState TravelingProfiles::at(double t, double r) const {
  if (!(r > 0)) throw InvalidArgument("traveling-profile evaluation needs r > 0");
  const int n = S_->dim.n;
  std::vector<double> Ap, Bm;
  profiles(r + t, Ap, Bm);  // A at r + t (B part unused)
  std::vector<double> Ap2, Bm2;
  profiles(r - t, Ap2, Bm2);  // B at r - t
  WaveState w;
  for (int k = 0; k <= n; ++k) {
    const int p = k - 1 - 2 * n;
    const double rp = std::pow(r, p);
    const double H = Ap[k] + Bm2[k];
    const double H1 = Ap[k + 1] + Bm2[k + 1];
    const double Ht = Ap[k + 1] - Bm2[k + 1];
    w.u += coef_[k] * H * rp;
    w.u_t += coef_[k] * Ht * rp;
    w.u_r += coef_[k] * (H1 * rp + p * H * rp / r);
  }
  w.u *= kappa_;
  w.u_t *= kappa_;
  w.u_r *= kappa_;
  return w;
}

SpectralSolution::SpectralSolution(WaveSource src) : src_(std::move(src)) {}

const SpectralData& SpectralSolution::grid_for(double extent) {
  for (const auto& g : grids_)
    if (g->extent >= extent && g->extent <= extent * 1.0000001 + 1e-9) return *g;
  grids_.push_back(std::make_unique<SpectralData>(spectral_data(src_, extent)));
  return *grids_.back();
}

const TravelingProfiles& SpectralSolution::profiles() {
  if (!profiles_) {
    profile_grid_ = std::make_unique<SpectralData>(spectral_data(src_, 0.0));
    profiles_ = std::make_unique<TravelingProfiles>(*profile_grid_, src_.radius_hi);
  }
  return *profiles_;
}

WaveSolution SpectralSolution::handle(double profile_min_radius) {
  WaveSolution h;
  h.d = src_.dim.d;
  const double radius = src_.radius_hi;
  h.outer_radius = [radius](double t) { return std::abs(t) + radius; };
  const TravelingProfiles* prof = &profiles();
  h.at_time = [this, radius, prof, profile_min_radius](double t) {
    const double rmax = std::abs(t) + radius;
    // The direct slice is built on first use only (small r).
    auto slice = std::make_shared<std::unique_ptr<TimeSlice>>();
    return std::function<WaveState(double)>([this, slice, prof, rmax, t, radius, profile_min_radius](double r) {
      if (r > rmax) return WaveState{};
      if (r >= profile_min_radius) return prof->at(t, r);
      if (!*slice) *slice = std::make_unique<TimeSlice>(grid_for(2 * std::abs(t) + radius), t);
      return (*slice)->at(r);
    });
  };
  return h;
}

namespace {

double energy_between(const WaveSolution& sol, double t, double r0, double r1, const QuadratureSpec& spec) {
  if (!(r1 > r0)) return 0.0;
  const auto state = sol.at_time(t);
  const int d = sol.d;
  auto dens = [&](double r) {
    const WaveState s = state(r);
    return (s.u_r * s.u_r + s.u_t * s.u_t) * ipow(r, d - 1);
  };
  QuadratureSpec q = spec;
  if (q.abs_tol == 0) q.abs_tol = 1e-300;
  return quad(dens, r0, r1, q);
}

}  // namespace

double exterior_energy(const WaveSolution& sol, double R, double t, const QuadratureSpec& spec) {
  return energy_between(sol, t, std::abs(t) + R, sol.outer_radius(t), spec);
}

double total_energy(const WaveSolution& sol, double t, const QuadratureSpec& spec) {
  return energy_between(sol, t, 0.0, sol.outer_radius(t), spec);
}

double spectral_norm_g(const SpectralData& S) {
  std::vector<double> v(S.rho.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = S.weight[k] * S.ghat[k] * S.ghat[k] * ipow(S.rho[k], S.dim.d - 1);
  return pairwise_sum(v.data(), v.size());
}

double spectral_norm_f(const SpectralData& S) {
  std::vector<double> v(S.rho.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double fp = S.rho[k] * S.fhat[k];
    v[k] = S.weight[k] * fp * fp * ipow(S.rho[k], S.dim.d - 1);
  }
  return pairwise_sum(v.data(), v.size());
}

AsymptoticEnergy asymptotic_energy_spectral(const WaveSource& src, double R) {
  return asymptotic_energy_spectral(spectral_data(src, R), R);
}

AsymptoticEnergy asymptotic_energy_spectral(const SpectralData& S, double R) {
  if (!(R >= 0)) throw InvalidArgument("radius must be non-negative");
  AsymptoticEnergy out;
  const std::size_t N = S.rho.size();
  if (N == 0) return out;
  const int mu = S.dim.mu;
  const double sgn = mu % 2 == 0 ? 1.0 : -1.0;
  std::vector<double> vg(N), vf(N), sn(N), cs(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double rho = S.rho[i];
    const double pm = ipow(rho, mu);
    vg[i] = S.weight[i] * S.ghat[i] * pm;
    vf[i] = S.weight[i] * rho * S.fhat[i] * pm;
    sn[i] = std::sin(R * rho);
    cs[i] = std::cos(R * rho);
  }
  // Kernel sums sum_ij v_i v_j [ sin(R(x-y))/(x-y) -/+ (-1)^mu sin(R(x+y))/(x+y) ]
  auto kernel_sums = [&](const std::vector<double>& v, double& minus_part, double& plus_part) {
    std::vector<double> rows_m(N), rows_p(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double x = S.rho[i];
      double sm = 0, sp = 0;
      for (std::size_t j = 0; j < N; ++j) {
        const double y = S.rho[j];
        const double dlt = x - y;
        double km;
        if (std::abs(R * dlt) < 1e-3) {
          const double z = R * dlt;
          km = R * (1 - z * z / 6 + z * z * z * z / 120);
        } else {
          km = (sn[i] * cs[j] - cs[i] * sn[j]) / dlt;
        }
        const double sum = x + y;
        double kp;
        if (std::abs(R * sum) < 1e-3) {
          const double z = R * sum;
          kp = R * (1 - z * z / 6 + z * z * z * z / 120);
        } else {
          kp = (sn[i] * cs[j] + cs[i] * sn[j]) / sum;
        }
        sm += v[j] * km;
        sp += v[j] * kp;
      }
      rows_m[i] = v[i] * sm;
      rows_p[i] = v[i] * sp;
    }
    minus_part = pairwise_sum(rows_m.data(), N);
    plus_part = pairwise_sum(rows_p.data(), N);
  };
  if (!std::all_of(S.ghat.begin(), S.ghat.end(), [](double x) { return x == 0; })) {
    double m, p;
    kernel_sums(vg, m, p);
    out.as_g = 0.5 * spectral_norm_g(S) - (m + sgn * p) / (2 * kPi);
  }
  if (!std::all_of(S.fhat.begin(), S.fhat.end(), [](double x) { return x == 0; })) {
    double m, p;
    kernel_sums(vf, m, p);
    out.as_f = 0.5 * spectral_norm_f(S) - (m - sgn * p) / (2 * kPi);
  }
  return out;
}

}  // namespace chan
