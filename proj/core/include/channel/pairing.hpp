#pragma once

#include <complex>
#include <string>
#include <vector>

#include "channel/distribution.hpp"
#include "channel/profiles.hpp"

namespace chan {

// phi(r1, r2) = scale * a(r1) * b(r2). Rules with delta' need a' and b'.
struct SeparableKernel {
  double scale = 1.0;
  RadialFn a;
  RadialFn b;

  SeparableKernel transposed() const { return {scale, b, a}; }
};

struct PairingTerm {
  std::string left;   // component of the first distribution, e.g. "xi^2 chi", "delta(-1)"
  std::string right;  // component of the second distribution
  std::string rule;   // chi-chi, del-del, delP-delP, chi-del, chi-delP, del-delP
  std::complex<double> contribution;
};

struct PairingRuleResult {
  std::complex<double> value;
  std::vector<PairingTerm> trace;
};

// Limit as the mollification width goes to zero of
//   iint [ int_{-R}^{R} (k_e * D1)(xi/r1) conj((k_e * D2)(xi/r2)) dxi ] phi(r1, r2) dr1 dr2
// for the stored (divided by pi) distributions, evaluated with the closed limit rules.
PairingRuleResult kernel_pairing(const BoundaryDistribution& D1, const BoundaryDistribution& D2, double R,
                                 const SeparableKernel& phi, const QuadratureSpec& spec = {});

enum class DataKind { F, G };

// Asymptotic exterior energy of pure data, assembled from the limit rules:
//   g: 2^{d-1} pi^d ||g||^2 - 2^{d-1} pi^d * pairing(F phi_n, F phi_n, R, (1/2) h(r1) h(r2)), h = g r^{(d-3)/2}
//   f: 2^{d-1} pi^d ||f'||^2 - 2^{d-1} pi^d * pairing(F psi_n, F psi_n, R, (1/2) h(r1) h(r2)), h = f r^{(d-5)/2}
// (the pi^2 of the two stored distributions is folded into the prefactor).
double asymptotic_energy_pairing(int d, double R, const RadialFn& data, DataKind kind, const QuadratureSpec& spec = {});

}  // namespace chan
