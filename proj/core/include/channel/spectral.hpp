#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "channel/profiles.hpp"
#include "channel/special_functions.hpp"

namespace chan {

enum class SpectralMode { PhysicalCompact, SpectralBand };

// One Gaussian band a * exp(-((rho - c)/w)^2), cut at |rho - c| = 7 w.
struct BandTerm {
  double amplitude = 1;
  double center = 2;
  double width = 0.5;
};

struct SpectralOptions {
  double phase_per_panel = 6.0;     // max oscillation phase (radians) per 16-point rho panel
  double rho_tail_tol = 1e-11;      // amplitude cut for the transform, relative to its peak
  double rho_cap = 4000.0;          // hard upper limit for rho^*
  double radius_tail_tol = 1e-13;   // physical tail cut for band data, relative to peak
  QuadratureSpec quad{};
};

// Smooth function of rho stored as piecewise barycentric Chebyshev interpolants.
class ChebyshevTable {
 public:
  ChebyshevTable() = default;
  ChebyshevTable(const std::function<double(double)>& f, double lo, double hi, int panels, int points = 24);
  double operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_ = 0, hi_ = 0, h_ = 1;
  int panels_ = 0, points_ = 0;
  std::vector<double> nodes_, bary_, values_;
};

// Radial data description from which spectral grids of any extent can be built.
struct WaveSource {
  OddDimension dim;
  SpectralMode mode = SpectralMode::PhysicalCompact;
  std::function<double(double)> fhat;  // radial d-dimensional Fourier transforms
  std::function<double(double)> ghat;
  bool f_zero = true;
  bool g_zero = true;
  double rho_lo = 0;
  double rho_hi = 0;
  double radius_lo = 0;  // physical data vanish (or are below tail tolerance) outside [radius_lo, radius_hi]
  double radius_hi = 0;
  RadialFn f;            // physical data (closed form, or inverse transform for band data)
  RadialFn g;
  std::vector<BandTerm> f_bands, g_bands;
  SpectralOptions options;
};

WaveSource physical_source(const RadialFn& f, const RadialFn& g, int d, const SpectralOptions& opts = {});
WaveSource band_source(const std::vector<BandTerm>& f_bands, const std::vector<BandTerm>& g_bands, int d,
                       const SpectralOptions& opts = {});

// Samples of (f^, g^) on a composite Gauss-Legendre rho grid resolving phases up to `extent` = max(|t| + r).
struct SpectralData {
  OddDimension dim;
  SpectralMode mode = SpectralMode::PhysicalCompact;
  double rho_lo = 0, rho_hi = 0;
  double extent = 0;
  std::vector<double> rho, weight;
  std::vector<double> fhat, ghat;
};

SpectralData spectral_data(const WaveSource& src, double extent);

// g^(rho) = (2 pi)^{d/2} int g(r) J_nu(r rho) (r rho)^{-nu} r^{d-1} dr by composite quadrature
// over the support of g with node density scaled to r_max * rho.
std::vector<double> hankel_forward(const RadialFn& g, int d, const std::vector<double>& rho,
                                   const QuadratureSpec& spec = {});

struct WaveState {
  double u = 0;
  double u_t = 0;
  double u_r = 0;
};

// Solution at a fixed time: cos/sin(t rho) folded into per-node weights once.
class TimeSlice {
 public:
  TimeSlice(const SpectralData& S, double t);
  WaveState at(double r) const;
  double t() const { return t_; }

 private:
  const SpectralData* S_;
  double t_;
  std::vector<double> A_, B_, Ar_;
};

WaveState evolve(const SpectralData& S, double t, double r);

// Odd-dimensional radial solutions as 1-D traveling profiles:
//   u(t, r) = kappa (r^{-1} d/dr)^n [(A(r + t) + B(r - t)) / r],
//   A, B = (1/2) int [rho f^ sin(s rho) -/+ g^ cos(s rho)] d rho,
// with kappa = (-1)^n times the inverse transform constant. A and B are
// projections of the data along a line, so they vanish for |s| beyond the
// data radius and the cost per point does not grow with t. Cancellation in
// the r^{-1-2n} terms limits this form to r away from 0.
class TravelingProfiles {
 public:
  // S must resolve phases up to the data radius (any extent >= 0).
  TravelingProfiles(const SpectralData& S, double reach);
  WaveState at(double t, double r) const;
  double reach() const { return reach_; }

 private:
  // A^{(k)}(s) and B^{(k)}(s) for k = 0..n+1.
  void profiles(double s, std::vector<double>& A, std::vector<double>& B) const;
  const SpectralData* S_;
  double reach_;
  double kappa_;
  std::vector<double> coef_;
  std::vector<double> wf_, wg_;  // quadrature weight times f^ rho, g^
};

// Generic solution handle: state at (t, r) and the radius beyond which the
// exterior integrand is negligible at time t.
struct WaveSolution {
  int d = 3;
  std::function<std::function<WaveState(double)>(double)> at_time;
  std::function<double(double)> outer_radius;
};

// Spectral solution with grids rebuilt lazily per extent level.
class SpectralSolution {
 public:
  explicit SpectralSolution(WaveSource src);
  const WaveSource& source() const { return src_; }
  const SpectralData& grid_for(double extent);
  // Direct evaluation for r < profile_min_radius, traveling profiles beyond.
  WaveSolution handle(double profile_min_radius = 0.5);
  const TravelingProfiles& profiles();

 private:
  WaveSource src_;
  std::vector<std::unique_ptr<SpectralData>> grids_;
  std::unique_ptr<SpectralData> profile_grid_;
  std::unique_ptr<TravelingProfiles> profiles_;
};

// int_{|t|+R}^{r_max(t)} (u_r^2 + u_t^2) r^{d-1} dr
double exterior_energy(const WaveSolution& sol, double R, double t, const QuadratureSpec& spec = {});
// int_0^{r_max(t)} (u_r^2 + u_t^2) r^{d-1} dr
double total_energy(const WaveSolution& sol, double t, const QuadratureSpec& spec = {});

struct AsymptoticEnergy {
  double as_f = 0;
  double as_g = 0;
};

// Double rho-integrals of the sinc-type kernels against f^' = rho f^ and g^.
AsymptoticEnergy asymptotic_energy_spectral(const WaveSource& src, double R);
AsymptoticEnergy asymptotic_energy_spectral(const SpectralData& S, double R);

// Plancherel integrals int |g^|^2 rho^{d-1} and int |rho f^|^2 rho^{d-1} on a grid.
double spectral_norm_g(const SpectralData& S);
double spectral_norm_f(const SpectralData& S);

}  // namespace chan
