#pragma once

#include <map>
#include <string>
#include <vector>

#include "channel/rational.hpp"

namespace chan {

struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> e;

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}
  static RationalMatrix identity(int n);

  Rational& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
  }
};

// Exact determinant by Gaussian elimination.
Rational determinant(const RationalMatrix& m);
// Determinants of the leading principal submatrices, sizes 1..n.
std::vector<Rational> leading_minors(const RationalMatrix& m);

// Finite Laurent polynomial in R: sum_p coef_p R^p. Used to carry R exactly.
struct RPoly {
  std::map<int, Rational> terms;

  static RPoly monomial(const Rational& c, int power);
  void prune();
  bool is_zero() const;
  bool is_constant(const Rational& c) const;
  double eval(double R) const;
  friend RPoly operator+(const RPoly& a, const RPoly& b);
  friend RPoly operator*(const RPoly& a, const RPoly& b);
  friend bool operator==(const RPoly& a, const RPoly& b);
};

struct RMatrix {
  int n = 0;
  std::vector<RPoly> e;

  explicit RMatrix(int size = 0) : n(size), e(static_cast<std::size_t>(size) * size) {}
  RPoly& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
  const RPoly& operator()(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }
  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
  bool is_identity() const;
  // Numerical value at a given R.
  std::vector<std::vector<double>> at(double R) const;
  // Rational matrix at R = 1.
  RationalMatrix at_one() const;
};

std::string to_string(const RPoly& p);

// c_j = prod_{l=1}^k (d-2j-2l) / prod_{l != j} (2l-2j), k = floor(d/4).
std::vector<Rational> compute_c(int d);
// d_j = prod_{l=1}^{kt} (d+2-2l-2j) / prod_{l != j} (2l-2j), kt = floor((d+2)/4).
std::vector<Rational> compute_d(int d);

struct IdentityReport {
  bool ok = true;
  std::string failure;  // first violated identity, empty when ok
};

// The four sum identities satisfied by the c and d families.
IdentityReport verify_identities(int d);

// Cauchy matrix [1/(x_i - y_j)].
RationalMatrix cauchy_matrix(const std::vector<Rational>& x, const std::vector<Rational>& y);
// Product formula prod_{i<j}(x_i-x_j)(y_j-y_i) / prod_{i,j}(x_i-y_j).
Rational cauchy_det(const std::vector<Rational>& x, const std::vector<Rational>& y);
// Closed-form inverse b_ij = (x_j - y_i) A_j(y_i) B_i(x_j) with Lagrange basis polynomials A, B.
RationalMatrix cauchy_inverse(const std::vector<Rational>& x, const std::vector<Rational>& y);

// Gram matrices of {r^{2i-d}} on r >= R, entries as exact multiples of powers of R.
RMatrix gram_L2(int d);
RMatrix gram_inverse_L2(int d);          // c_i c_j R^{d-2i-2j} / (d-2i-2j)
RationalMatrix gram_inverse_L2_cauchy(int d);  // at R = 1 from the Cauchy inverse with x_i = d-2i, y_j = 2j
RMatrix gram_H1(int d);
RMatrix gram_inverse_H1(int d);

}  // namespace chan
