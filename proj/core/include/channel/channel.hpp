#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "channel/projection.hpp"
#include "channel/special_solution.hpp"
#include "channel/spectral.hpp"

namespace chan {

struct ChannelOptions {
  // Positive, strictly increasing times; both signs are evaluated. Empty:
  // geometric schedule t0 * 2^j up to tmax with t0 = 2 (support radius + R).
  std::vector<double> t_schedule;
  double tmax = 0;                 // 0: t0 * 2^(points - 1)
  int points = 6;                  // schedule length when generated
  int neville_points = 4;          // points per extrapolation in h = 1/t
  double monotone_tol = 1e-8;      // relative to scale
  double inequality_tol = 1e-6;    // relative to scale
  double equality_rel = 0.01;      // limit vs bound for pure data
  double limit_rel = 0.005;        // agreement of successive extrapolations
  QuadratureSpec energy_quad{16, 1e-10, 0.0, 30, 1e-14, 4'000'000};
};

// Everything channel_verify needs: data on r >= R for the projection bound and
// the exterior energy as a function of signed time.
struct ChannelProblem {
  int d = 3;
  double R = 1;
  RadialFn f, g;
  std::string f_desc = "zero", g_desc = "zero";
  double support_radius = 0;       // data negligible beyond this radius (inf for power data)
  std::function<double(double)> exterior_energy;
  std::shared_ptr<void> keep_alive;
};

ChannelProblem spectral_problem(const WaveSource& src, double R, const ChannelOptions& opts = {});
ChannelProblem special_problem(const SpecialSolution& s, double R, const ChannelOptions& opts = {});

struct EnergySample {
  double t = 0;   // signed
  double energy = 0;
};

struct LimitEstimate {
  double value = 0;
  double error = 0;      // spread of the last three extrapolations
  bool converged = false;
};

struct ChannelReport {
  int d = 3;
  double R = 1;
  std::string f_desc, g_desc;
  std::vector<EnergySample> energy_curve;  // sorted by signed t
  LimitEstimate limit_plus, limit_minus;
  ProjectionReport projection;
  double bound = 0;                        // half the projection total
  double scale = 0;                        // exterior energy at t = 0
  bool pure_data = false;
  bool inequality_holds = false;
  bool equality_case = false;              // meaningful only for pure data
  bool monotone = false;
  bool complete = false;
  std::string failure;                     // first failing step, empty on success

  // Flags that decide the exit status: monotone, inequality, converged limits,
  // and equality for pure data.
  bool all_verdicts() const;
};

ChannelReport channel_verify(const ChannelProblem& problem, const ChannelOptions& opts = {});
ChannelReport channel_verify(int d, double R, const RadialFn& f, const RadialFn& g, const ChannelOptions& opts = {});

// Polynomial extrapolation to h = 0 through (h_i, y_i).
double neville_at_zero(const std::vector<double>& h, const std::vector<double>& y);

// Extrapolated limit of samples E(t_j) on an increasing schedule.
LimitEstimate extrapolate_limit(const std::vector<double>& t, const std::vector<double>& e, int points,
                                double rel_tol, double abs_floor);

}  // namespace chan
