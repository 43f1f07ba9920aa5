#pragma once

#include <functional>
#include <vector>

namespace chan {

struct QuadratureSpec {
  int base_order = 16;
  double tol = 1e-12;            // relative tolerance on the integral
  double abs_tol = 0.0;          // absolute floor, useful when the integral may vanish
  int max_refinement_depth = 30;
  double tail_tol = 1e-14;       // magnitude below which profile tails are cut
  long max_evaluations = 4'000'000;
};

struct QuadratureResult {
  double value = 0;
  double error = 0;
  long evaluations = 0;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre recurrence. Cached.
const GaussLegendreRule& gauss_legendre(int order);

// Globally adaptive composite Gauss-Legendre. b may be +infinity; the
// half-line is mapped to [0, 1). Breakpoints (kinks, support edges) inside
// (a, b) seed the initial partition. Throws AccuracyFailure with the best
// estimate when the tolerance cannot be met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {}, const std::vector<double>& breakpoints = {});

// Convenience: value only.
double quad(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec = {},
            const std::vector<double>& breakpoints = {});

// Fixed composite rule: `panels` equal panels of the given order on [a, b].
// Appends nodes and weights.
void composite_rule(double a, double b, int panels, int order, std::vector<double>& x, std::vector<double>& w);

// Pairwise (cascade) summation for reproducible totals.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace chan
