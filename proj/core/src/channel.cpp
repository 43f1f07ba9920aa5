#include "channel/channel.hpp"

#include <algorithm>
#include <cmath>

#include "channel/errors.hpp"

namespace chan {

bool ChannelReport::all_verdicts() const {
  return complete && monotone && inequality_holds && limit_plus.converged && limit_minus.converged &&
         (!pure_data || equality_case);
}

double neville_at_zero(const std::vector<double>& h, const std::vector<double>& y) {
  std::vector<double> p = y;
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  return p.empty() ? 0.0 : p[0];
}

LimitEstimate extrapolate_limit(const std::vector<double>& t, const std::vector<double>& e, int points,
                                double rel_tol, double abs_floor) {
  LimitEstimate out;
  const int n = static_cast<int>(t.size());
  if (n == 0) return out;
  std::vector<double> est;
  for (int j = 0; j < n; ++j) {
    const int lo = std::max(0, j + 1 - points);
    std::vector<double> h, y;
    for (int i = lo; i <= j; ++i) {
      h.push_back(1.0 / t[i]);
      y.push_back(e[i]);
    }
    est.push_back(neville_at_zero(h, y));
  }
  out.value = est.back();
  if (n < 3) {
    out.error = std::abs(e.back());
    return out;
  }
  out.error = std::max(std::abs(est[n - 1] - est[n - 2]), std::abs(est[n - 1] - est[n - 3]));
  out.converged = out.error <= std::max(rel_tol * std::abs(out.value), abs_floor);
  return out;
}

ChannelProblem spectral_problem(const WaveSource& src, double R, const ChannelOptions& opts) {
  ChannelProblem p;
  p.d = src.dim.d;
  p.R = R;
  p.f = src.f;
  p.g = src.g;
  p.support_radius = src.radius_hi;
  auto sol = std::make_shared<SpectralSolution>(src);
  auto handle = std::make_shared<WaveSolution>(sol->handle());
  const QuadratureSpec q = opts.energy_quad;
  p.exterior_energy = [sol, handle, R, q](double t) { return exterior_energy(*handle, R, t, q); };
  p.keep_alive = sol;
  return p;
}

ChannelProblem special_problem(const SpecialSolution& s, double R, const ChannelOptions&) {
  ChannelProblem p;
  p.d = s.d;
  p.R = R;
  p.f = s.initial_f(R);
  p.g = s.initial_g(R);
  p.f_desc = s.kind == SpecialKind::F ? s.to_text() : "zero";
  p.g_desc = s.kind == SpecialKind::G ? s.to_text() : "zero";
  p.support_radius = std::numeric_limits<double>::infinity();
  p.exterior_energy = [s, R](double t) { return s.exterior_energy(R, t); };
  return p;
}

ChannelReport channel_verify(const ChannelProblem& problem, const ChannelOptions& opts) {
  ChannelReport rep;
  rep.d = problem.d;
  rep.R = problem.R;
  rep.f_desc = problem.f_desc;
  rep.g_desc = problem.g_desc;
  rep.pure_data = problem.f.is_zero() || problem.g.is_zero();

  std::vector<double> sched = opts.t_schedule;
  if (sched.empty()) {
    const double reach = std::isfinite(problem.support_radius) ? problem.support_radius : 0.0;
    const double t0 = std::max(1.0, 2 * (reach + problem.R));
    const int pts = std::max(3, opts.points);
    const double tmax = opts.tmax > 0 ? opts.tmax : t0 * std::pow(2.0, pts - 1);
    const double ratio = std::pow(tmax / t0, 1.0 / (pts - 1));
    for (int j = 0; j < pts; ++j) sched.push_back(t0 * std::pow(ratio, j));
  }
  for (std::size_t j = 0; j < sched.size(); ++j)
    if (!(sched[j] > 0) || (j > 0 && !(sched[j] > sched[j - 1])))
      throw InvalidArgument("time schedule must be positive and strictly increasing");

  try {
    rep.projection = proj_norm_pair(problem.f, problem.g, problem.d, problem.R);
    rep.bound = 0.5 * rep.projection.total;
  } catch (const std::exception& e) {
    rep.failure = std::string("projection: ") + e.what();
    return rep;
  }

  // Monotonicity is checked on the schedule plus a few points before it.
  std::vector<double> times{0.0};
  for (double f : {0.125, 0.25, 0.5})
    if (sched.front() * f > 0) times.push_back(sched.front() * f);
  for (double t : sched) times.push_back(t);

  std::vector<double> plus, minus;
  try {
    for (double t : times) {
      plus.push_back(problem.exterior_energy(t));
      if (t > 0) minus.push_back(problem.exterior_energy(-t));
    }
  } catch (const std::exception& e) {
    rep.failure = std::string("exterior energy: ") + e.what();
  }
  for (std::size_t j = 0; j < plus.size(); ++j) rep.energy_curve.push_back({times[j], plus[j]});
  for (std::size_t j = 0; j < minus.size(); ++j) rep.energy_curve.push_back({-times[j + 1], minus[j]});
  std::sort(rep.energy_curve.begin(), rep.energy_curve.end(),
            [](const EnergySample& a, const EnergySample& b) { return a.t < b.t; });
  if (!rep.failure.empty()) return rep;

  rep.scale = plus.front();
  const double scale = rep.scale > 0 ? rep.scale : 1.0;
  const double mono_tol = opts.monotone_tol * scale;
  rep.monotone = true;
  for (std::size_t j = 1; j < plus.size(); ++j)
    if (plus[j] > plus[j - 1] + mono_tol) rep.monotone = false;
  if (!minus.empty() && minus[0] > plus[0] + mono_tol) rep.monotone = false;
  for (std::size_t j = 1; j < minus.size(); ++j)
    if (minus[j] > minus[j - 1] + mono_tol) rep.monotone = false;

  const std::size_t skip = times.size() - sched.size();
  const std::vector<double> ep(plus.begin() + skip, plus.end());
  const std::vector<double> em(minus.begin() + (skip - 1), minus.end());
  const double floor = 1e-9 * scale;
  rep.limit_plus = extrapolate_limit(sched, ep, opts.neville_points, opts.limit_rel, floor);
  rep.limit_minus = extrapolate_limit(sched, em, opts.neville_points, opts.limit_rel, floor);

  const double best = std::max(rep.limit_plus.value, rep.limit_minus.value);
  rep.inequality_holds = best >= rep.bound - opts.inequality_tol * scale;
  if (rep.pure_data) {
    const double tol = std::max(opts.equality_rel * std::abs(rep.bound), opts.inequality_tol * scale);
    rep.equality_case = std::abs(rep.limit_plus.value - rep.bound) <= tol &&
                        std::abs(rep.limit_minus.value - rep.bound) <= tol;
  }
  rep.complete = true;
  if (!rep.monotone)
    rep.failure = "exterior energy increased in |t|";
  else if (!rep.limit_plus.converged || !rep.limit_minus.converged)
    rep.failure = "limit extrapolation did not settle";
  else if (!rep.inequality_holds)
    rep.failure = "limiting exterior energy below the projection bound";
  else if (rep.pure_data && !rep.equality_case)
    rep.failure = "pure data: limit differs from the projection bound";
  return rep;
}

ChannelReport channel_verify(int d, double R, const RadialFn& f, const RadialFn& g, const ChannelOptions& opts) {
  const WaveSource src = physical_source(f, g, d);
  return channel_verify(spectral_problem(src, R, opts), opts);
}

}  // namespace chan
