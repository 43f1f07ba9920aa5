#pragma once

#include <string>
#include <vector>

#include "channel/profiles.hpp"
#include "channel/rational.hpp"
#include "channel/spectral.hpp"

namespace chan {

enum class SpecialKind { F, G };

// u(t, r) = sum_j coef_j t^{t_exp_j} r^{r_exp_j}, an exact polynomial-in-t
// solution whose initial data span the forbidden subspace on r >= R.
struct Monomial {
  Rational coef;
  int t_exp = 0;
  int r_exp = 0;
};

struct SpecialSolution {
  int d = 3;
  int i = 1;
  SpecialKind kind = SpecialKind::G;
  std::vector<Monomial> terms;  // ordered by j = 1..i

  WaveState eval(double t, double r) const;
  // Exact PDE residual u_tt - u_rr - (d-1)/r u_r as monomials; empty when it vanishes.
  std::vector<Monomial> residual() const;
  std::string to_text() const;
  // Initial data (u(0, .), u_t(0, .)) restricted to r >= R.
  RadialFn initial_f(double R) const;
  RadialFn initial_g(double R) const;
  // int_{|t|+R}^inf (u_r^2 + u_t^2) r^{d-1} dr in closed form.
  double exterior_energy(double R, double t) const;
  WaveSolution handle() const;
};

SpecialSolution special_solution(int d, int i, SpecialKind kind);

}  // namespace chan
