#include "channel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

#include "channel/errors.hpp"

namespace chan {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) {
        // one more derivative evaluation at the converged node
        p0 = 1;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1;
        dp = n * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    const long double w = 2 / ((1 - x * x) * dp * dp);
    r.nodes[i] = static_cast<double>(-x);
    r.nodes[n - 1 - i] = static_cast<double>(x);
    r.weights[i] = r.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

struct Panel {
  double a, b;
  double value;   // refined estimate (two halves)
  double coarse;  // single-rule estimate
  double left, right;
  double absval;
  double err;
  int depth;
};

struct PanelLess {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw InvalidArgument("quadrature order must be >= 1");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(order));
  return *slot;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

void composite_rule(double a, double b, int panels, int order, std::vector<double>& x, std::vector<double>& w) {
  const auto& gl = gauss_legendre(order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = lo + h / 2;
    for (int i = 0; i < order; ++i) {
      x.push_back(c + h / 2 * gl.nodes[i]);
      w.push_back(h / 2 * gl.weights[i]);
    }
  }
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec,
                           const std::vector<double>& breakpoints) {
  if (!(spec.tol > 0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (std::isnan(a) || std::isnan(b)) throw InvalidArgument("quadrature limits must not be NaN");
  QuadratureResult res;
  if (a == b) return res;
  if (a > b) {
    res = integrate(f, b, a, spec, breakpoints);
    res.value = -res.value;
    return res;
  }

  const bool infinite = std::isinf(b);
  if (std::isinf(a)) throw InvalidArgument("lower limit must be finite");

  // Integration variable s; x = map(s).
  auto to_x = [&](double s) { return infinite ? a + s / (1 - s) : s; };
  auto to_s = [&](double x) { return infinite ? (x - a) / (1 + x - a) : x; };
  const double s_lo = infinite ? 0.0 : a;
  const double s_hi = infinite ? 1.0 : b;

  const auto& gl = gauss_legendre(spec.base_order);
  long evals = 0;
  auto rule = [&](double lo, double hi, double& absval) {
    const double c = (lo + hi) / 2, h = (hi - lo) / 2;
    double s = 0, sa = 0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = c + h * gl.nodes[i];
      double v;
      if (infinite) {
        if (u >= 1.0) {
          v = 0;
        } else {
          const double x = to_x(u);
          const double jac = 1 / ((1 - u) * (1 - u));
          v = std::isinf(x) ? 0.0 : f(x) * jac;
        }
      } else {
        v = f(u);
      }
      s += gl.weights[i] * v;
      sa += gl.weights[i] * std::abs(v);
    }
    evals += static_cast<long>(gl.nodes.size());
    absval = sa * h;
    return s * h;
  };

  auto make_panel = [&](double lo, double hi, double coarse, int depth) {
    Panel p;
    p.a = lo;
    p.b = hi;
    p.depth = depth;
    const double m = (lo + hi) / 2;
    double a1, a2;
    p.left = rule(lo, m, a1);
    p.right = rule(m, hi, a2);
    p.value = p.left + p.right;
    p.coarse = coarse;
    p.absval = a1 + a2;
    p.err = std::abs(p.value - p.coarse);
    if (!std::isfinite(p.value)) throw AccuracyFailure("non-finite integrand value", p.value, p.err);
    return p;
  };

  std::vector<double> cuts{s_lo};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(to_s(x));
  cuts.push_back(s_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, PanelLess> active;
  std::vector<Panel> frozen;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double av;
    const double coarse = rule(cuts[i], cuts[i + 1], av);
    active.push(make_panel(cuts[i], cuts[i + 1], coarse, 0));
  }

  auto totals = [&](double& val, double& err, double& absval) {
    std::vector<Panel> all(frozen);
    auto copy = active;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<double> v, e, m;
    for (const auto& p : all) {
      v.push_back(p.value);
      e.push_back(p.err);
      m.push_back(p.absval);
    }
    val = pairwise_sum(v.data(), v.size());
    err = pairwise_sum(e.data(), e.size());
    absval = pairwise_sum(m.data(), m.size());
  };

  const double eps = std::numeric_limits<double>::epsilon();
  double val = 0, err = 0, absval = 0;
  // Track running totals incrementally; recompute exactly at the end.
  double run_err = 0, run_val = 0, run_abs = 0;
  {
    auto copy = active;
    while (!copy.empty()) {
      run_err += copy.top().err;
      run_val += copy.top().value;
      run_abs += copy.top().absval;
      copy.pop();
    }
  }
  for (;;) {
    const double target = std::max({spec.abs_tol, spec.tol * std::abs(run_val), 64 * eps * run_abs});
    if (run_err <= target || active.empty()) break;
    Panel worst = active.top();
    if (worst.depth >= spec.max_refinement_depth || evals > spec.max_evaluations ||
        (worst.b - worst.a) <= 4 * eps * std::max(1.0, std::abs(worst.a))) {
      if (evals > spec.max_evaluations) {
        totals(val, err, absval);
        throw AccuracyFailure("quadrature evaluation budget exhausted", val, err);
      }
      active.pop();
      frozen.push_back(worst);
      // frozen panels keep contributing error; if only frozen error remains we stop below
      bool any_refinable = !active.empty();
      if (!any_refinable) {
        totals(val, err, absval);
        const double tgt = std::max({spec.abs_tol, spec.tol * std::abs(val), 64 * eps * absval});
        if (err > tgt) throw AccuracyFailure("quadrature did not converge at maximum depth", val, err);
        break;
      }
      continue;
    }
    active.pop();
    const double m = (worst.a + worst.b) / 2;
    Panel l = make_panel(worst.a, m, worst.left, worst.depth + 1);
    Panel r = make_panel(m, worst.b, worst.right, worst.depth + 1);
    run_err += l.err + r.err - worst.err;
    run_val += l.value + r.value - worst.value;
    run_abs += l.absval + r.absval - worst.absval;
    active.push(l);
    active.push(r);
  }
  totals(val, err, absval);
  const double tgt = std::max({spec.abs_tol, spec.tol * std::abs(val), 64 * eps * absval});
  if (err > tgt) throw AccuracyFailure("quadrature did not converge", val, err);
  res.value = val;
  res.error = err;
  res.evaluations = evals;
  return res;
}

double quad(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec,
            const std::vector<double>& breakpoints) {
  return integrate(f, a, b, spec, breakpoints).value;
}

}  // namespace chan
