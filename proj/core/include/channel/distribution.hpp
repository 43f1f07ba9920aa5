#pragma once

#include <complex>
#include <string>
#include <vector>

#include "channel/rational.hpp"

namespace chan {

// pi * [ P(xi) chi_(-1,1) + a+ delta_1 + a- delta_{-1} + b+ delta'_1 + b- delta'_{-1} ].
// The stored coefficients are the bracket, i.e. the distribution divided by pi.
struct BoundaryDistribution {
  std::vector<GaussianRational> poly;  // poly[m] multiplies xi^m
  GaussianRational delta_plus;
  GaussianRational delta_minus;
  GaussianRational dprime_plus;
  GaussianRational dprime_minus;

  void normalize();  // drop trailing zero polynomial coefficients
  bool has_dprime() const { return !dprime_plus.is_zero() || !dprime_minus.is_zero(); }
  GaussianRational poly_at(int m) const { return m < static_cast<int>(poly.size()) ? poly[m] : GaussianRational{}; }

  BoundaryDistribution& operator+=(const BoundaryDistribution& o);
  friend BoundaryDistribution operator+(BoundaryDistribution a, const BoundaryDistribution& b) { return a += b; }
  friend BoundaryDistribution operator*(const GaussianRational& s, const BoundaryDistribution& a);
};

bool dist_equal(const BoundaryDistribution& a, const BoundaryDistribution& b);

// F phi_0 = pi i (delta_{-1} - delta_1), F phi_1 = pi (chi - delta_{-1} - delta_1).
BoundaryDistribution base_ft(int n);
// xi (P chi) = (xi P) chi, xi delta_a = a delta_a, xi delta'_a = a delta'_a - delta_a.
BoundaryDistribution multiply_by_xi(const BoundaryDistribution& D);
// F phi_{n+1} = ((n+1)/n) F phi_{n-1} - i ((2n+1)/n) xi F phi_n, returned for n = 0..n_max.
std::vector<BoundaryDistribution> recurse_ft(int n_max);
// Closed form of F phi_n from the c_j products (dimension d = 2n+3).
BoundaryDistribution closed_ft_phi(int n);
// i d/dxi D; rejects input that already carries delta' terms.
BoundaryDistribution derivative_ft(const BoundaryDistribution& D);
// Closed form of F psi_n, psi_n = z^2 j_n(z).
BoundaryDistribution closed_ft_psi(int n);

// Pairing of the distribution (times pi) with e^{i z xi} / (2 pi), i.e. the inverse transform at z.
std::complex<double> eval_inverse_ft(const BoundaryDistribution& D, double z);
// M_m(z) = int_{-1}^{1} xi^m e^{i z xi} dxi for m = 0..m_max.
std::vector<std::complex<double>> oscillatory_moments(int m_max, double z);
// Below this |z| the moments are summed from their Taylor series.
inline constexpr double kMomentSeriesThreshold = 1.0;

// Human-readable form, e.g. "pi*[ (-3/1*i) xi chi + (1/1*i) d(1) + ... ]".
std::string to_text(const BoundaryDistribution& D);

}  // namespace chan
