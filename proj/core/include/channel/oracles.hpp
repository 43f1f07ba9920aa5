#pragma once

#include "channel/profiles.hpp"
#include "channel/spectral.hpp"

namespace chan {

// Radial 3-d solution from the 1-D wave equation for r u with odd
// extensions of r f and r g. Requires r > 0 and f with a first derivative.
WaveState dalembert_3d(const RadialFn& f, const RadialFn& g, double t, double r,
                       const QuadratureSpec& spec = {});

// u(t, r) = D^m [(F(r + t) - F(t - r)) / r] with D = r^{-1} d/dr, a radial
// solution in dimension 2m + 3. F is evaluated as a function on the whole
// line and needs derivatives up to order m + 1.
WaveState descent_solution(const RadialProfile& F, int m, double t, double r);

// Initial data (u(0, .), u_t(0, .)) of a descent solution as radial
// functions on [lo, hi], where the profile F is below tail_tol outside.
struct DescentData {
  RadialFn f;
  RadialFn g;
};
DescentData descent_initial_data(const RadialProfile& F, int m, double tail_tol = 1e-15);

// Solution handle for the 3-d d'Alembert path.
WaveSolution dalembert_handle(const RadialFn& f, const RadialFn& g, double radius_hi);

}  // namespace chan
