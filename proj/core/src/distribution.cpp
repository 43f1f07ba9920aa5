#include "channel/distribution.hpp"

#include <cmath>

#include "channel/coefficients.hpp"
#include "channel/errors.hpp"

namespace chan {

void BoundaryDistribution::normalize() {
  while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
}

BoundaryDistribution& BoundaryDistribution::operator+=(const BoundaryDistribution& o) {
  if (poly.size() < o.poly.size()) poly.resize(o.poly.size());
  for (std::size_t m = 0; m < o.poly.size(); ++m) poly[m] += o.poly[m];
  delta_plus += o.delta_plus;
  delta_minus += o.delta_minus;
  dprime_plus += o.dprime_plus;
  dprime_minus += o.dprime_minus;
  normalize();
  return *this;
}

BoundaryDistribution operator*(const GaussianRational& s, const BoundaryDistribution& a) {
  BoundaryDistribution r;
  for (const auto& c : a.poly) r.poly.push_back(s * c);
  r.delta_plus = s * a.delta_plus;
  r.delta_minus = s * a.delta_minus;
  r.dprime_plus = s * a.dprime_plus;
  r.dprime_minus = s * a.dprime_minus;
  r.normalize();
  return r;
}

bool dist_equal(const BoundaryDistribution& a, const BoundaryDistribution& b) {
  const std::size_t n = std::max(a.poly.size(), b.poly.size());
  for (std::size_t m = 0; m < n; ++m)
    if (a.poly_at(static_cast<int>(m)) != b.poly_at(static_cast<int>(m))) return false;
  return a.delta_plus == b.delta_plus && a.delta_minus == b.delta_minus && a.dprime_plus == b.dprime_plus &&
         a.dprime_minus == b.dprime_minus;
}

BoundaryDistribution base_ft(int n) {
  BoundaryDistribution D;
  const GaussianRational I = GaussianRational::i();
  if (n == 0) {
    D.delta_minus = I;
    D.delta_plus = -I;
  } else if (n == 1) {
    D.poly = {GaussianRational(1)};
    D.delta_minus = -1;
    D.delta_plus = -1;
  } else {
    throw InvalidArgument("base transform is defined for n = 0 and n = 1 only");
  }
  return D;
}

BoundaryDistribution multiply_by_xi(const BoundaryDistribution& D) {
  BoundaryDistribution r;
  if (!D.poly.empty()) {
    r.poly.assign(D.poly.size() + 1, GaussianRational{});
    for (std::size_t m = 0; m < D.poly.size(); ++m) r.poly[m + 1] = D.poly[m];
  }
  r.delta_plus = D.delta_plus - D.dprime_plus;
  r.delta_minus = -D.delta_minus - D.dprime_minus;
  r.dprime_plus = D.dprime_plus;
  r.dprime_minus = -D.dprime_minus;
  r.normalize();
  return r;
}

std::vector<BoundaryDistribution> recurse_ft(int n_max) {
  if (n_max < 1) throw InvalidArgument("recursion needs n_max >= 1");
  std::vector<BoundaryDistribution> out{base_ft(0), base_ft(1)};
  const GaussianRational I = GaussianRational::i();
  for (int n = 1; n < n_max; ++n) {
    const GaussianRational a(ratio(n + 1, n));
    const GaussianRational b = -I * GaussianRational(ratio(2 * n + 1, n));
    out.push_back(a * out[n - 1] + b * multiply_by_xi(out[n]));
  }
  return out;
}

namespace {

// i^p for integer p >= 0.
GaussianRational i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::vector<Rational> c_family(int d) { return d / 4 == 0 ? std::vector<Rational>{} : compute_c(d); }

}  // namespace

BoundaryDistribution closed_ft_phi(int n) {
  if (n < 0) throw InvalidArgument("order must be non-negative");
  if (n == 0) return base_ft(0);
  // F phi_n = pi (-1)^n i^{n+1} [ sum_j c_j xi^{n+1-2j} chi - delta_1 + (-1)^n delta_{-1} ]
  const int d = 2 * n + 3;
  const auto c = c_family(d);
  BoundaryDistribution B;
  B.poly.assign(n + 1, GaussianRational{});
  for (std::size_t j = 1; j <= c.size(); ++j) B.poly[n + 1 - 2 * j] += GaussianRational(c[j - 1]);
  B.delta_plus = -1;
  B.delta_minus = (n % 2 == 0) ? 1 : -1;
  B.normalize();
  const GaussianRational pre = (n % 2 == 0 ? GaussianRational(1) : GaussianRational(-1)) * i_power(n + 1);
  return pre * B;
}

BoundaryDistribution derivative_ft(const BoundaryDistribution& D) {
  if (D.has_dprime()) throw Unsupported("derivative of a delta' term would need delta''");
  BoundaryDistribution r;
  // d/dxi (P chi) = P' chi + P(-1) delta_{-1} - P(1) delta_1
  for (std::size_t m = 1; m < D.poly.size(); ++m) {
    if (r.poly.size() < m) r.poly.resize(m);
    r.poly[m - 1] = D.poly[m] * GaussianRational(Rational(static_cast<long>(m)));
  }
  GaussianRational p_plus, p_minus;
  for (std::size_t m = 0; m < D.poly.size(); ++m) {
    p_plus += D.poly[m];
    p_minus += (m % 2 == 0) ? D.poly[m] : -D.poly[m];
  }
  r.delta_minus = p_minus;
  r.delta_plus = -p_plus;
  r.dprime_plus = D.delta_plus;
  r.dprime_minus = D.delta_minus;
  r.normalize();
  return GaussianRational::i() * r;
}

BoundaryDistribution closed_ft_psi(int n) {
  if (n < 0) throw InvalidArgument("order must be non-negative");
  BoundaryDistribution B;
  GaussianRational pre;
  if (n % 2 == 0) {
    // n = 2k-2: pi (-1)^k [ sum_{j<k} c_j (2k-1-2j) xi^{2k-2-2j} chi - (sum c_j)(delta_1 + delta_{-1}) - delta'_1 + delta'_{-1} ]
    const int k = n / 2 + 1;
    const auto c = c_family(2 * n + 3);
    Rational csum = 0;
    B.poly.assign(n + 1, GaussianRational{});
    for (int j = 1; j <= static_cast<int>(c.size()); ++j) {
      B.poly[2 * k - 2 - 2 * j] += GaussianRational(c[j - 1] * (2 * k - 1 - 2 * j));
      csum += c[j - 1];
    }
    B.delta_plus = GaussianRational(-csum);
    B.delta_minus = GaussianRational(-csum);
    B.dprime_plus = -1;
    B.dprime_minus = 1;
    pre = (k % 2 == 0) ? GaussianRational(1) : GaussianRational(-1);
  } else {
    // n = 2k-1: pi (-1)^{k-1} i [ sum_j c_j (2k-2j) xi^{2k-1-2j} chi + (sum c_j)(-delta_1 + delta_{-1}) - delta'_1 - delta'_{-1} ]
    const int k = (n + 1) / 2;
    const auto c = c_family(2 * n + 3);
    Rational csum = 0;
    B.poly.assign(n + 1, GaussianRational{});
    for (int j = 1; j <= static_cast<int>(c.size()); ++j) {
      // j = k carries the factor 2k - 2j = 0.
      if (j < k) B.poly[2 * k - 1 - 2 * j] += GaussianRational(c[j - 1] * (2 * k - 2 * j));
      csum += c[j - 1];
    }
    B.delta_plus = GaussianRational(-csum);
    B.delta_minus = GaussianRational(csum);
    B.dprime_plus = -1;
    B.dprime_minus = -1;
    pre = ((k - 1) % 2 == 0 ? GaussianRational(1) : GaussianRational(-1)) * GaussianRational::i();
  }
  B.normalize();
  return pre * B;
}

std::vector<std::complex<double>> oscillatory_moments(int m_max, double z) {
  using C = std::complex<double>;
  std::vector<C> M(m_max + 1);
  const double az = std::abs(z);
  if (az < kMomentSeriesThreshold) {
    // M_m = sum_k (iz)^k / k! * (1 + (-1)^{m+k}) / (m+k+1)
    for (int m = 0; m <= m_max; ++m) {
      C term = 1.0, sum = 0.0;
      for (int k = 0; k < 60; ++k) {
        if (k > 0) term *= C(0, z) / double(k);
        if ((m + k) % 2 == 0) {
          const C add = term * (2.0 / (m + k + 1));
          sum += add;
          if (std::abs(add) < 1e-18 * std::abs(sum) && k > 2) break;
        }
      }
      M[m] = sum;
    }
    return M;
  }
  const C eip = std::polar(1.0, z), eim = std::polar(1.0, -z);
  const C iz(0, z);
  auto boundary = [&](int m) { return eip - ((m % 2 == 0) ? eim : -eim); };
  M[0] = 2 * std::sin(z) / z;
  const int up = std::min(m_max, static_cast<int>(std::floor(az)));
  for (int m = 1; m <= up; ++m) M[m] = (boundary(m) - double(m) * M[m - 1]) / iz;
  if (up < m_max) {
    // Downward from a start index where the neglected value is damped away.
    const int N = m_max + 2 * static_cast<int>(az) + 60;
    C next = 0.0;
    for (int m = N; m > up; --m) {
      // M_{m-1} = (boundary(m) - iz M_m) / m
      const C prev = (boundary(m) - iz * next) / double(m);
      next = prev;
      if (m - 1 <= m_max && m - 1 > up) M[m - 1] = prev;
    }
  }
  return M;
}

std::complex<double> eval_inverse_ft(const BoundaryDistribution& D, double z) {
  using C = std::complex<double>;
  C s = 0;
  if (!D.poly.empty()) {
    const auto M = oscillatory_moments(static_cast<int>(D.poly.size()) - 1, z);
    for (std::size_t m = 0; m < D.poly.size(); ++m) s += D.poly[m].to_complex() * M[m];
  }
  const C eip = std::polar(1.0, z), eim = std::polar(1.0, -z);
  s += D.delta_plus.to_complex() * eip + D.delta_minus.to_complex() * eim;
  // <delta'_a, e^{i z xi}> = -i z e^{i a z}
  const C dz(0, -z);
  s += D.dprime_plus.to_complex() * dz * eip + D.dprime_minus.to_complex() * dz * eim;
  return 0.5 * s;
}

std::string to_text(const BoundaryDistribution& D) {
  std::string s = "pi*[";
  bool first = true;
  auto add = [&](const GaussianRational& c, const std::string& sym) {
    if (c.is_zero()) return;
    if (!first) s += " +";
    first = false;
    s += " (" + to_string(c) + ")" + sym;
  };
  for (std::size_t m = 0; m < D.poly.size(); ++m)
    add(D.poly[m], m == 0 ? " chi" : (m == 1 ? " xi chi" : " xi^" + std::to_string(m) + " chi"));
  add(D.delta_plus, " delta(1)");
  add(D.delta_minus, " delta(-1)");
  add(D.dprime_plus, " delta'(1)");
  add(D.dprime_minus, " delta'(-1)");
  if (first) s += " 0";
  return s + " ]";
}

}  // namespace chan
