#pragma once

#include <string>
#include <vector>

#include "channel/profiles.hpp"

namespace chan {

enum class ProjectionMethod { ClosedForm, GramSchmidt };

struct ProjectionReport {
  int d = 3;
  double R = 1;
  double l2_part = 0;   // squared L2(r >= R; r^{d-1}) norm of g minus its projection onto span{r^{2i-d}}
  double h1_part = 0;   // same for f' in the homogeneous H1 norm
  double total = 0;
  double g_norm = 0;    // ||g||^2 on r >= R
  double f_norm = 0;    // ||f'||^2 on r >= R
  std::vector<double> lambda_L2;  // coefficients of r^{2i-d} in the subtracted component
  std::vector<double> lambda_H1;
  ProjectionMethod method = ProjectionMethod::ClosedForm;
};

double proj_norm_L2(const RadialFn& g, int d, double R, const QuadratureSpec& spec = {});
double proj_norm_H1(const RadialFn& f, int d, double R, const QuadratureSpec& spec = {});
ProjectionReport proj_norm_pair(const RadialFn& f, const RadialFn& g, int d, double R, const QuadratureSpec& spec = {});

enum class Space { L2, H1 };

// Orthonormalizes {r^{2i-d}} numerically in the chosen space (modified
// Gram-Schmidt on closed-form inner products of powers) and subtracts the
// projections of the data. Does not use the exact coefficient families.
double gram_schmidt_oracle(const RadialFn& u, int d, double R, Space space, const QuadratureSpec& spec = {});

}  // namespace chan
