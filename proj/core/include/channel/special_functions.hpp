#pragma once

#include <utility>
#include <vector>

namespace chan {

// Parameters attached to an odd spatial dimension d.
struct OddDimension {
  int d = 3;
  int n = 0;         // (d-3)/2, order of the spherical Bessel function
  double nu = 0.5;   // (d-2)/2
  int mu = 1;        // (d-1)/2
  double tau = 0.0;  // (d-1)pi/4, phase in the large-argument asymptotics
  int k = 0;         // floor(d/4), size of the L2 block
  int k_tilde = 1;   // floor((d+2)/4), size of the H1 block

  static OddDimension make(int d);
};

// Spherical Bessel function j_n(z). Negative z uses the parity j_n(-z) = (-1)^n j_n(z).
double spherical_bessel(int n, double z);
long double spherical_bessel_ld(int n, long double z);

// j_n and j_{n+1} together, used by the propagator kernels.
void spherical_bessel_pair(int n, double z, double& jn, double& jn1);

// (phi_n, psi_n) = (z j_n(z), z^2 j_n(z)).
std::pair<double, double> phi_psi(int n, double z);

// J_nu(x) for half-integer nu = m + 1/2 with m >= -1.
long double bessel_j_half(double nu, long double x);

// Central finite-difference residual of x^2 J'' + x J' + (x^2 - nu^2) J at x.
double bessel_ode_residual(double nu, double x, double h);

struct AsymptoticJ {
  double approx;
  double bound;
};

// Leading term sqrt(2/(pi x)) cos(x - (2 nu + 1) pi / 4) and an error bound
// C(nu) x^{-3/2} valid for x >= asymptotic_threshold(nu).
AsymptoticJ asymptotic_jnu(double nu, double x);
double asymptotic_constant(double nu);
double asymptotic_threshold(double nu);

// Finite trigonometric closed form
//   j_n(z) = [sin(z - n pi/2) S(z) + cos(z - n pi/2) C(z)] / z
// with S, C polynomials in 1/z. Valid for any z != 0, but it cancels badly
// for z << n, so it is only used as an independent check.
double spherical_bessel_closed(int n, double z);

// K(x) = j_n(x) / x^n and its derivative K'(x) = -j_{n+1}(x) / x^n, accurate
// down to x = 0.
void reduced_bessel_pair(int n, double x, double& K, double& dK);

// Integer coefficients c_k with (r^{-1} d/dr)^m (H(r) / r) = sum_{k=0}^m c_k H^{(k)}(r) r^{k-1-2m}.
std::vector<double> descent_coefficients(int m);

}  // namespace chan
