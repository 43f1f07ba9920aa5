#include "channel/coefficients.hpp"

#include <cmath>

#include "channel/errors.hpp"

namespace chan {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw InvalidArgument("matrix dimensions do not match");
  RationalMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      Rational s = 0;
      for (int k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows != m.cols) throw InvalidArgument("determinant needs a square matrix");
  RationalMatrix a = m;
  const int n = a.rows;
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<Rational> leading_minors(const RationalMatrix& m) {
  std::vector<Rational> out;
  for (int s = 1; s <= m.rows; ++s) {
    RationalMatrix sub(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) sub(i, j) = m(i, j);
    out.push_back(determinant(sub));
  }
  return out;
}

RPoly RPoly::monomial(const Rational& c, int power) {
  RPoly p;
  if (c != 0) p.terms[power] = c;
  return p;
}

void RPoly::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0)
      it = terms.erase(it);
    else
      ++it;
  }
}

bool RPoly::is_zero() const {
  for (const auto& [p, c] : terms)
    if (c != 0) return false;
  return true;
}

bool RPoly::is_constant(const Rational& c) const {
  for (const auto& [p, v] : terms) {
    if (p == 0) {
      if (v != c) return false;
    } else if (v != 0) {
      return false;
    }
  }
  if (c != 0 && !terms.count(0)) return false;
  return true;
}

double RPoly::eval(double R) const {
  double s = 0;
  for (const auto& [p, c] : terms) s += to_double(c) * std::pow(R, p);
  return s;
}

RPoly operator+(const RPoly& a, const RPoly& b) {
  RPoly c = a;
  for (const auto& [p, v] : b.terms) c.terms[p] += v;
  c.prune();
  return c;
}

RPoly operator*(const RPoly& a, const RPoly& b) {
  RPoly c;
  for (const auto& [p, v] : a.terms)
    for (const auto& [q, w] : b.terms) c.terms[p + q] += v * w;
  c.prune();
  return c;
}

bool operator==(const RPoly& a, const RPoly& b) {
  RPoly x = a, y = b;
  x.prune();
  y.prune();
  return x.terms == y.terms;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.n != b.n) throw InvalidArgument("matrix dimensions do not match");
  RMatrix c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      RPoly s;
      for (int k = 0; k < a.n; ++k) s = s + a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

bool RMatrix::is_identity() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j ? !(*this)(i, j).is_constant(1) : !(*this)(i, j).is_zero()) return false;
    }
  return true;
}

std::vector<std::vector<double>> RMatrix::at(double R) const {
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = (*this)(i, j).eval(R);
  return m;
}

RationalMatrix RMatrix::at_one() const {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational s = 0;
      for (const auto& [p, c] : (*this)(i, j).terms) s += c;
      m(i, j) = s;
    }
  return m;
}

std::string to_string(const RPoly& p) {
  if (p.terms.empty()) return "0/1";
  std::string s;
  for (const auto& [pw, c] : p.terms) {
    if (!s.empty()) s += " + ";
    s += to_string(c);
    if (pw != 0) s += " R^" + std::to_string(pw);
  }
  return s;
}

namespace {

void check_dimension(int d) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("dimension must be odd and >= 3");
}

std::vector<Rational> product_family(int top, int count) {
  // j-th entry: prod_{l=1}^{count} (top - 2l - 2j) / prod_{l != j} (2l - 2j)
  std::vector<Rational> out;
  for (int j = 1; j <= count; ++j) {
    Integer num = 1, den = 1;
    for (int l = 1; l <= count; ++l) {
      num *= (top - 2 * l - 2 * j);
      if (l != j) den *= (2 * l - 2 * j);
    }
    out.push_back(ratio(num, den));
  }
  return out;
}

}  // namespace

std::vector<Rational> compute_c(int d) {
  check_dimension(d);
  return product_family(d, d / 4);
}

std::vector<Rational> compute_d(int d) {
  check_dimension(d);
  return product_family(d + 2, (d + 2) / 4);
}

IdentityReport verify_identities(int d) {
  check_dimension(d);
  IdentityReport rep;
  auto fail = [&](const std::string& what) {
    if (rep.ok) {
      rep.ok = false;
      rep.failure = what;
    }
  };
  auto check = [&](const std::vector<Rational>& coef, int top, const char* name) {
    const int k = static_cast<int>(coef.size());
    for (int m = 1; m <= k; ++m) {
      Rational s = 0;
      for (int j = 1; j <= k; ++j) s += coef[j - 1] / Rational(top - 2 * m - 2 * j);
      if (s != 1)
        fail(std::string(name) + " reciprocal sum at m=" + std::to_string(m) + " equals " + to_string(s) +
             " instead of 1 (d=" + std::to_string(d) + ")");
    }
    Rational lhs = 1, rhs = 1;
    for (int j = 1; j <= k; ++j) lhs += coef[j - 1] / Rational(2 * j);
    for (int l = 1; l <= k; ++l) rhs *= ratio(top - 2 * l, 2 * l);
    if (lhs != rhs)
      fail(std::string(name) + " weighted sum equals " + to_string(lhs) + " instead of " + to_string(rhs) +
           " (d=" + std::to_string(d) + ")");
  };
  check(compute_c(d), d, "c");
  check(compute_d(d), d + 2, "d");
  return rep;
}

RationalMatrix cauchy_matrix(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw InvalidArgument("Cauchy nodes must have equal length");
  const int n = static_cast<int>(x.size());
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x[i] == y[j]) throw SingularConfiguration("Cauchy node x_i coincides with y_j");
      m(i, j) = 1 / (x[i] - y[j]);
    }
  return m;
}

namespace {

void check_distinct(const std::vector<Rational>& v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) throw SingularConfiguration(std::string("repeated Cauchy node in ") + name);
}

Rational lagrange(const std::vector<Rational>& nodes, std::size_t i, const Rational& t) {
  Rational v = 1;
  for (std::size_t l = 0; l < nodes.size(); ++l)
    if (l != i) v *= (t - nodes[l]) / (nodes[i] - nodes[l]);
  return v;
}

}  // namespace

Rational cauchy_det(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw InvalidArgument("Cauchy nodes must have equal length");
  check_distinct(x, "x");
  check_distinct(y, "y");
  Rational num = 1, den = 1;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) num *= (x[i] - x[j]) * (y[j] - y[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (x[i] == y[j]) throw SingularConfiguration("Cauchy node x_i coincides with y_j");
      den *= x[i] - y[j];
    }
  return num / den;
}

RationalMatrix cauchy_inverse(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw InvalidArgument("Cauchy nodes must have equal length");
  check_distinct(x, "x");
  check_distinct(y, "y");
  const int n = static_cast<int>(x.size());
  RationalMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x[j] == y[i]) throw SingularConfiguration("Cauchy node x_i coincides with y_j");
      b(i, j) = (x[j] - y[i]) * lagrange(x, j, y[i]) * lagrange(y, i, x[j]);
    }
  return b;
}

RMatrix gram_L2(int d) {
  check_dimension(d);
  const int k = d / 4;
  RMatrix a(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) a(i - 1, j - 1) = RPoly::monomial(ratio(1, d - 2 * i - 2 * j), 2 * i + 2 * j - d);
  return a;
}

RMatrix gram_inverse_L2(int d) {
  const auto c = compute_c(d);
  const int k = static_cast<int>(c.size());
  RMatrix b(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      b(i - 1, j - 1) = RPoly::monomial(c[i - 1] * c[j - 1] / Rational(d - 2 * i - 2 * j), d - 2 * i - 2 * j);
  return b;
}

RationalMatrix gram_inverse_L2_cauchy(int d) {
  check_dimension(d);
  const int k = d / 4;
  std::vector<Rational> x, y;
  for (int i = 1; i <= k; ++i) {
    x.emplace_back(d - 2 * i);
    y.emplace_back(2 * i);
  }
  return cauchy_inverse(x, y);
}

RMatrix gram_H1(int d) {
  check_dimension(d);
  const int k = (d + 2) / 4;
  RMatrix a(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      a(i - 1, j - 1) = RPoly::monomial(ratio((2 * i - d) * (2 * j - d), d + 2 - 2 * i - 2 * j),
                                         2 * i + 2 * j - d - 2);
  return a;
}

RMatrix gram_inverse_H1(int d) {
  const auto dc = compute_d(d);
  const int k = static_cast<int>(dc.size());
  RMatrix b(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      b(i - 1, j - 1) = RPoly::monomial(
          dc[i - 1] * dc[j - 1] / Rational((d - 2 * i) * (d - 2 * j) * (d + 2 - 2 * i - 2 * j)), d + 2 - 2 * i - 2 * j);
  return b;
}

}  // namespace chan
