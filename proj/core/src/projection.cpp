#include "channel/projection.hpp"

#include <cmath>

#include "channel/coefficients.hpp"
#include "channel/errors.hpp"

namespace chan {

namespace {

void check(int d, double R) {
  if (d < 1 || d % 2 == 0) throw InvalidArgument("dimension must be an odd integer >= 1");
  if (!(R >= 0)) throw InvalidArgument("radius must be non-negative");
}

// lambda = B U with B the exact inverse Gram matrix at R and U the moments.
std::vector<double> coefficients(const std::vector<std::vector<double>>& B, const std::vector<double>& U) {
  std::vector<double> lam(U.size(), 0.0);
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = 0; j < U.size(); ++j) lam[i] += B[i][j] * U[j];
  return lam;
}

double l2_closed(const RadialFn& g, int d, double R, const QuadratureSpec& spec, double& norm,
                 std::vector<double>& lambda) {
  norm = inner_L2(g, g, d, R, spec);
  const int k = d >= 3 ? d / 4 : 0;
  lambda.clear();
  if (k == 0 || R == 0) return norm;
  const auto c = compute_c(d);
  std::vector<double> M(k), cd(k);
  for (int j = 1; j <= k; ++j) {
    M[j - 1] = moment(g, j, R, spec);
    cd[j - 1] = to_double(c[j - 1]);
  }
  double sub = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      sub += std::pow(R, d - 2 * i - 2 * j) / (d - 2 * i - 2 * j) * cd[i - 1] * cd[j - 1] * M[i - 1] * M[j - 1];
  // <g, r^{2i-d}> = M_i, lambda = B M
  lambda = coefficients(gram_inverse_L2(d).at(R), M);
  return norm - sub;
}

double h1_closed(const RadialFn& f, int d, double R, const QuadratureSpec& spec, double& norm,
                 std::vector<double>& lambda) {
  norm = inner_H1(f, f, d, R, spec);
  const int k = d >= 3 ? (d + 2) / 4 : 0;
  lambda.clear();
  if (k == 0 || R == 0) return norm;
  const auto dc = compute_d(d);
  std::vector<double> N(k), dd(k), U(k);
  for (int j = 1; j <= k; ++j) {
    N[j - 1] = moment_H1(f, j, R, spec);
    dd[j - 1] = to_double(dc[j - 1]);
    // <f, r^{2j-d}>_{H1} = (2j-d) int f' r^{2j-2}
    U[j - 1] = (2 * j - d) * N[j - 1];
  }
  double sub = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      sub += std::pow(R, d + 2 - 2 * i - 2 * j) / (d + 2 - 2 * i - 2 * j) * dd[i - 1] * dd[j - 1] * N[i - 1] *
             N[j - 1];
  lambda = coefficients(gram_inverse_H1(d).at(R), U);
  return norm - sub;
}

}  // namespace

double proj_norm_L2(const RadialFn& g, int d, double R, const QuadratureSpec& spec) {
  check(d, R);
  double norm;
  std::vector<double> lam;
  return l2_closed(g, d, R, spec, norm, lam);
}

double proj_norm_H1(const RadialFn& f, int d, double R, const QuadratureSpec& spec) {
  check(d, R);
  double norm;
  std::vector<double> lam;
  return h1_closed(f, d, R, spec, norm, lam);
}

ProjectionReport proj_norm_pair(const RadialFn& f, const RadialFn& g, int d, double R, const QuadratureSpec& spec) {
  check(d, R);
  ProjectionReport rep;
  rep.d = d;
  rep.R = R;
  rep.l2_part = l2_closed(g, d, R, spec, rep.g_norm, rep.lambda_L2);
  rep.h1_part = h1_closed(f, d, R, spec, rep.f_norm, rep.lambda_H1);
  rep.total = rep.l2_part + rep.h1_part;
  return rep;
}

double gram_schmidt_oracle(const RadialFn& u, int d, double R, Space space, const QuadratureSpec& spec) {
  check(d, R);
  if (!(R > 0)) throw InvalidArgument("Gram-Schmidt oracle needs R > 0");
  const int k = d < 3 ? 0 : (space == Space::L2 ? d / 4 : (d + 2) / 4);
  // Basis r^{2i-d}; inner products of powers in closed form.
  auto pw_inner = [&](int i, int j) {
    if (space == Space::L2) {
      const double q = 2 * i + 2 * j - d - 1;  // (2i-d)+(2j-d)+(d-1)
      return -std::pow(R, q + 1) / (q + 1);
    }
    const double q = 2 * i + 2 * j - d - 3;
    return double(2 * i - d) * double(2 * j - d) * (-std::pow(R, q + 1) / (q + 1));
  };
  auto data_inner = [&](int i) {
    RadialFn b = to_fn(RadialProfile::power(2 * i - d));
    return space == Space::L2 ? inner_L2(u, b, d, R, spec) : inner_H1(u, b, d, R, spec);
  };
  // Modified Gram-Schmidt: e_m = sum_i Q[m][i] a_i
  std::vector<std::vector<double>> Q;
  auto basis_inner = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * y[j] * pw_inner(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    return s;
  };
  for (int m = 0; m < k; ++m) {
    std::vector<double> v(k, 0.0);
    v[m] = 1.0;
    const double n0 = std::sqrt(basis_inner(v, v));
    for (const auto& e : Q) {
      const double c = basis_inner(v, e);
      for (int i = 0; i < k; ++i) v[i] -= c * e[i];
    }
    const double nv = std::sqrt(basis_inner(v, v));
    if (!(nv > 1e-12 * n0)) throw SingularConfiguration("Gram-Schmidt basis is numerically singular");
    for (double& x : v) x /= nv;
    Q.push_back(v);
  }
  const double norm = space == Space::L2 ? inner_L2(u, u, d, R, spec) : inner_H1(u, u, d, R, spec);
  std::vector<double> ui(k);
  for (int i = 0; i < k; ++i) ui[i] = data_inner(i + 1);
  double sub = 0;
  for (const auto& e : Q) {
    double c = 0;
    for (int i = 0; i < k; ++i) c += e[i] * ui[i];
    sub += c * c;
  }
  return norm - sub;
}

}  // namespace chan
