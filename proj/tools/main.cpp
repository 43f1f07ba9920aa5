// Command-line front end: coeffs, identities, ft, project, evolve, channel.
// Exit status: 0 success, 1 verification or numerical failure, 2 usage error.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "channel/channel.hpp"
#include "channel/coefficients.hpp"
#include "channel/distribution.hpp"
#include "channel/errors.hpp"
#include "channel/projection.hpp"
#include "channel/special_solution.hpp"
#include "channel/spectral.hpp"
#include "json.hpp"
#include "profile_json.hpp"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  int dim = 3;
  double R = 1.0;
  bool R_set = false;
  std::string f, g;
  int n = 0;
  bool psi = false;
  double t = 0;
  double tmax = 0;
  double tol = 0;
  std::string out, curve;
  long long seed = -1;
  int dmax = 41;
  int points = 401;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

void emit_json(const std::string& out, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_atomic(out, text);
}

json rational_json(const chan::Rational& q) { return chan::to_string(q); }
json gaussian_json(const chan::GaussianRational& z) {
  return {{"re", chan::to_string(z.re)}, {"im", chan::to_string(z.im)}};
}

json rmatrix_json(const chan::RMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int j = 0; j < m.n; ++j) {
      json terms = json::array();
      for (const auto& [p, c] : m(i, j).terms) terms.push_back({{"coef", chan::to_string(c)}, {"R_power", p}});
      row.push_back(terms);
    }
    rows.push_back(row);
  }
  return rows;
}

void print_rmatrix(const std::string& name, const chan::RMatrix& m) {
  std::cout << name << ":\n";
  for (int i = 0; i < m.n; ++i) {
    std::cout << "  [";
    for (int j = 0; j < m.n; ++j) std::cout << (j ? ", " : "") << chan::to_string(m(i, j));
    std::cout << "]\n";
  }
}

void require_odd_dim(int d, int min) {
  if (d < min || d % 2 == 0) throw UsageError("--dim must be an odd integer >= " + std::to_string(min));
}

// ---------------------------------------------------------------- coeffs

int run_coeffs(const Settings& s) {
  require_odd_dim(s.dim, 3);
  const int d = s.dim;
  const auto c = chan::compute_c(d);
  const auto dc = chan::compute_d(d);
  const auto gl = chan::gram_L2(d), gli = chan::gram_inverse_L2(d), gh = chan::gram_H1(d), ghi = chan::gram_inverse_H1(d);
  std::cout << "d = " << d << "\n";
  std::cout << "k = " << c.size() << ", c = [";
  for (std::size_t j = 0; j < c.size(); ++j) std::cout << (j ? ", " : "") << chan::to_string(c[j]);
  std::cout << "]\n";
  std::cout << "k_tilde = " << dc.size() << ", d_coef = [";
  for (std::size_t j = 0; j < dc.size(); ++j) std::cout << (j ? ", " : "") << chan::to_string(dc[j]);
  std::cout << "]\n";
  print_rmatrix("gram_L2", gl);
  print_rmatrix("gram_inverse_L2", gli);
  print_rmatrix("gram_H1", gh);
  print_rmatrix("gram_inverse_H1", ghi);
  if (!s.out.empty()) {
    json j;
    j["d"] = d;
    j["k"] = c.size();
    j["c"] = json::array();
    for (const auto& q : c) j["c"].push_back(rational_json(q));
    j["k_tilde"] = dc.size();
    j["d_coef"] = json::array();
    for (const auto& q : dc) j["d_coef"].push_back(rational_json(q));
    j["gram_L2"] = rmatrix_json(gl);
    j["gram_inverse_L2"] = rmatrix_json(gli);
    j["gram_H1"] = rmatrix_json(gh);
    j["gram_inverse_H1"] = rmatrix_json(ghi);
    emit_json(s.out, j);
  }
  return 0;
}

// ---------------------------------------------------------------- identities

int run_identities(const Settings& s) {
  if (s.dmax < 3) throw UsageError("--dmax must be >= 3");
  json results = json::array();
  std::string first_failure;
  for (int d = 3; d <= s.dmax; d += 2) {
    const auto rep = chan::verify_identities(d);
    const bool l2 = d / 4 == 0 || (chan::gram_L2(d) * chan::gram_inverse_L2(d)).is_identity();
    const bool h1 = (chan::gram_H1(d) * chan::gram_inverse_H1(d)).is_identity();
    bool pd = true;
    for (const auto& m : chan::leading_minors(chan::gram_H1(d).at_one())) pd = pd && m > 0;
    if (d / 4 > 0)
      for (const auto& m : chan::leading_minors(chan::gram_L2(d).at_one())) pd = pd && m > 0;
    const bool ok = rep.ok && l2 && h1 && pd;
    std::cout << "d=" << d << " identities " << (rep.ok ? "ok" : "FAIL (" + rep.failure + ")") << ", gram inverses "
              << (l2 && h1 ? "ok" : "FAIL") << ", positive minors " << (pd ? "ok" : "FAIL") << "\n";
    if (!ok && first_failure.empty())
      first_failure = "d=" + std::to_string(d) + ": " +
                      (!rep.ok ? rep.failure : (!(l2 && h1) ? "Gram matrix times inverse is not the identity" : "non-positive minor"));
    results.push_back({{"d", d}, {"identities", rep.ok}, {"failure", rep.failure}, {"gram_inverse_L2", l2},
                       {"gram_inverse_H1", h1}, {"positive_definite", pd}});
  }
  if (!s.out.empty()) emit_json(s.out, {{"dmax", s.dmax}, {"ok", first_failure.empty()}, {"results", results}});
  if (!first_failure.empty()) throw VerificationFailure(first_failure);
  return 0;
}

// ---------------------------------------------------------------- ft

int run_ft(const Settings& s) {
  if (s.n < 0) throw UsageError("--n must be non-negative");
  const auto D = s.psi ? chan::closed_ft_psi(s.n) : chan::closed_ft_phi(s.n);
  const std::string name = std::string(s.psi ? "F psi_" : "F phi_") + std::to_string(s.n);
  std::cout << name << " = " << chan::to_text(D) << "\n";
  json j;
  j["n"] = s.n;
  j["kind"] = s.psi ? "psi" : "phi";
  j["text"] = chan::to_text(D);
  j["scale"] = "pi";
  j["poly"] = json::array();
  for (const auto& c : D.poly) j["poly"].push_back(gaussian_json(c));
  j["delta_plus"] = gaussian_json(D.delta_plus);
  j["delta_minus"] = gaussian_json(D.delta_minus);
  j["dprime_plus"] = gaussian_json(D.dprime_plus);
  j["dprime_minus"] = gaussian_json(D.dprime_minus);
  if (s.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    emit_json(s.out, j);
  return 0;
}

// ---------------------------------------------------------------- data helpers

struct Data {
  cli::DataSpec f, g;
};

Data load_data(const Settings& s) {
  Data d;
  std::mt19937_64 rng(static_cast<unsigned long long>(s.seed));
  if (!s.f.empty())
    d.f = cli::parse_data(s.f);
  else if (s.seed >= 0)
    d.f = cli::random_data(rng);
  if (!s.g.empty())
    d.g = cli::parse_data(s.g);
  else if (s.seed >= 0)
    d.g = cli::random_data(rng);
  if (d.f.is_zero() && d.g.is_zero() && s.f.empty() && s.g.empty())
    throw UsageError("give --f and/or --g (or --seed for random data)");
  return d;
}

chan::RadialFn profile_fn(const cli::DataSpec& s) {
  if (s.kind != cli::DataSpec::Kind::Profile) throw UsageError("this command needs closed-form profile data");
  return s.profile.family == chan::Family::Zero ? chan::zero_fn() : chan::to_fn(s.profile);
}

chan::WaveSource make_source(int d, const Data& data) {
  const bool band = data.f.kind == cli::DataSpec::Kind::Band || data.g.kind == cli::DataSpec::Kind::Band;
  if (band) {
    auto bands = [](const cli::DataSpec& x) {
      if (x.kind == cli::DataSpec::Kind::Band) return x.bands;
      if (x.is_zero()) return std::vector<chan::BandTerm>{};
      throw UsageError("band data cannot be mixed with physical profiles");
    };
    return chan::band_source(bands(data.f), bands(data.g), d);
  }
  return chan::physical_source(profile_fn(data.f), profile_fn(data.g), d);
}

chan::QuadratureSpec quad_spec(const Settings& s) {
  chan::QuadratureSpec q;
  if (s.tol > 0) q.tol = s.tol;
  return q;
}

// ---------------------------------------------------------------- project

int run_project(const Settings& s) {
  require_odd_dim(s.dim, 1);
  if (!(s.R >= 0)) throw UsageError("--R must be non-negative");
  const Data data = load_data(s);
  chan::RadialFn f, g;
  auto to_radial = [&](const cli::DataSpec& x, bool is_f) {
    if (x.kind == cli::DataSpec::Kind::Special) {
      const auto sol = chan::special_solution(s.dim, x.special_index, x.special_kind);
      return is_f ? sol.initial_f(s.R) : sol.initial_g(s.R);
    }
    if (x.kind == cli::DataSpec::Kind::Band) {
      const auto src = chan::band_source(is_f ? x.bands : std::vector<chan::BandTerm>{}, is_f ? std::vector<chan::BandTerm>{} : x.bands,
                                         s.dim);
      return is_f ? src.f : src.g;
    }
    return profile_fn(x);
  };
  f = to_radial(data.f, true);
  g = to_radial(data.g, false);
  const auto q = quad_spec(s);
  const auto rep = chan::proj_norm_pair(f, g, s.dim, s.R, q);
  json j;
  j["d"] = s.dim;
  j["R"] = s.R;
  j["f"] = data.f.source;
  j["g"] = data.g.source;
  j["method"] = "closed-form";
  j["l2_part"] = rep.l2_part;
  j["h1_part"] = rep.h1_part;
  j["total"] = rep.total;
  j["g_norm"] = rep.g_norm;
  j["f_norm"] = rep.f_norm;
  j["lambda_L2"] = rep.lambda_L2;
  j["lambda_H1"] = rep.lambda_H1;
  if (s.R > 0) {
    j["gram_schmidt"] = {{"l2_part", chan::gram_schmidt_oracle(g, s.dim, s.R, chan::Space::L2, q)},
                         {"h1_part", chan::gram_schmidt_oracle(f, s.dim, s.R, chan::Space::H1, q)}};
  }
  std::cout << "d=" << s.dim << " R=" << num(s.R) << " l2_part=" << num(rep.l2_part) << " h1_part=" << num(rep.h1_part)
            << " total=" << num(rep.total) << "\n";
  if (!s.out.empty()) emit_json(s.out, j);
  return 0;
}

// ---------------------------------------------------------------- evolve

int run_evolve(const Settings& s) {
  require_odd_dim(s.dim, 3);
  if (!(s.R >= 0)) throw UsageError("--R must be non-negative");
  if (s.points < 2) throw UsageError("--points must be >= 2");
  const Data data = load_data(s);
  std::ostringstream csv;
  csv << "r,u,u_t,u_r\n";
  auto emit_row = [&](double r, const chan::WaveState& w) {
    csv << num(r) << "," << num(w.u) << "," << num(w.u_t) << "," << num(w.u_r) << "\n";
  };
  // Without --R the snapshot starts next to the origin.
  const double lo = s.R_set ? std::max(s.R, 1e-3) : 1e-3;
  if (data.f.kind == cli::DataSpec::Kind::Special || data.g.kind == cli::DataSpec::Kind::Special) {
    const auto& x = data.f.kind == cli::DataSpec::Kind::Special ? data.f : data.g;
    const auto sol = chan::special_solution(s.dim, x.special_index, x.special_kind);
    const double hi = lo + 10.0;
    for (int i = 0; i < s.points; ++i) {
      const double r = lo + (hi - lo) * i / (s.points - 1);
      emit_row(r, sol.eval(s.t, r));
    }
  } else {
    chan::SpectralSolution sol(make_source(s.dim, data));
    const auto h = sol.handle();
    const auto at = h.at_time(s.t);
    const double hi = std::max(h.outer_radius(s.t), lo + 1e-3);
    for (int i = 0; i < s.points; ++i) {
      const double r = lo + (hi - lo) * i / (s.points - 1);
      emit_row(r, at(r));
    }
  }
  if (s.out.empty())
    std::cout << csv.str();
  else
    write_atomic(s.out, csv.str());
  return 0;
}

// ---------------------------------------------------------------- channel

json report_json(const chan::ChannelReport& rep, const Data& data, const chan::ChannelOptions& opts) {
  json j;
  j["d"] = rep.d;
  j["R"] = rep.R;
  j["f"] = data.f.source;
  j["g"] = data.g.source;
  j["f_desc"] = rep.f_desc;
  j["g_desc"] = rep.g_desc;
  json curve = json::array();
  for (const auto& e : rep.energy_curve) curve.push_back({{"t", e.t}, {"exterior_energy", e.energy}});
  j["energy_curve"] = curve;
  auto lim = [](const chan::LimitEstimate& l) { return json{{"value", l.value}, {"error", l.error}, {"converged", l.converged}}; };
  j["limit_estimate_plus"] = lim(rep.limit_plus);
  j["limit_estimate_minus"] = lim(rep.limit_minus);
  j["projection"] = {{"l2_part", rep.projection.l2_part}, {"h1_part", rep.projection.h1_part}, {"total", rep.projection.total},
                     {"g_norm", rep.projection.g_norm},   {"f_norm", rep.projection.f_norm}};
  j["bound"] = rep.bound;
  j["scale"] = rep.scale;
  j["pure_data"] = rep.pure_data;
  j["verdicts"] = {{"inequality_holds", rep.inequality_holds},
                   {"equality_case", rep.equality_case},
                   {"monotone", rep.monotone},
                   {"limits_converged", rep.limit_plus.converged && rep.limit_minus.converged},
                   {"complete", rep.complete},
                   {"all", rep.all_verdicts()}};
  j["failure"] = rep.failure;
  j["options"] = {{"monotone_tol", opts.monotone_tol},
                  {"inequality_tol", opts.inequality_tol},
                  {"equality_rel", opts.equality_rel},
                  {"limit_rel", opts.limit_rel},
                  {"energy_quad_tol", opts.energy_quad.tol},
                  {"t_schedule", opts.t_schedule}};
  return j;
}

int run_channel(const Settings& s) {
  require_odd_dim(s.dim, 3);
  if (!(s.R >= 0)) throw UsageError("--R must be non-negative");
  if (s.tmax < 0) throw UsageError("--tmax must be positive");
  const Data data = load_data(s);
  chan::ChannelOptions opts;
  opts.tmax = s.tmax;
  if (s.tol > 0) opts.energy_quad.tol = s.tol;
  chan::ChannelProblem problem;
  const bool special = data.f.kind == cli::DataSpec::Kind::Special || data.g.kind == cli::DataSpec::Kind::Special;
  if (special) {
    if (!(data.f.is_zero() || data.g.is_zero())) throw UsageError("special data must be the only non-zero component");
    if (!(s.R > 0)) throw UsageError("special data need --R > 0");
    const auto& x = data.f.kind == cli::DataSpec::Kind::Special ? data.f : data.g;
    problem = chan::special_problem(chan::special_solution(s.dim, x.special_index, x.special_kind), s.R, opts);
  } else {
    problem = chan::spectral_problem(make_source(s.dim, data), s.R, opts);
    problem.f_desc = data.f.source.is_null() ? "zero" : data.f.source.dump();
    problem.g_desc = data.g.source.is_null() ? "zero" : data.g.source.dump();
  }
  const auto rep = chan::channel_verify(problem, opts);
  if (!s.out.empty()) emit_json(s.out, report_json(rep, data, opts));
  if (!s.curve.empty()) {
    std::ostringstream csv;
    csv << "t_signed,exterior_energy,bound\n";
    for (const auto& e : rep.energy_curve) csv << num(e.t) << "," << num(e.energy) << "," << num(rep.bound) << "\n";
    write_atomic(s.curve, csv.str());
  }
  std::cout << "d=" << rep.d << " R=" << num(rep.R) << " bound=" << num(rep.bound) << " limit+=" << num(rep.limit_plus.value)
            << " limit-=" << num(rep.limit_minus.value) << " monotone=" << rep.monotone
            << " inequality=" << rep.inequality_holds << " equality=" << rep.equality_case << "\n";
  if (!rep.all_verdicts()) throw VerificationFailure(rep.failure.empty() ? "channel verdicts not all true" : rep.failure);
  return 0;
}

// ---------------------------------------------------------------- config

const std::vector<std::string> kValueKeys = {"dim", "R", "f", "g", "n", "t", "tmax", "tol", "out", "curve", "seed", "dmax", "points"};

// Flags given in a JSON config are appended unless the same flag is on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  auto present = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  for (const auto& [key, value] : cfg.items()) {
    if (key == "psi") {
      if (!value.is_boolean()) throw UsageError("config key psi must be boolean");
      if (value.get<bool>() && !present("psi")) args.push_back("--psi");
      continue;
    }
    if (std::find(kValueKeys.begin(), kValueKeys.end(), key) == kValueKeys.end()) throw UsageError("unknown config key " + key);
    if (present(key)) continue;
    args.push_back("--" + key);
    if (value.is_string())
      args.push_back(value.get<std::string>());
    else if (value.is_object())
      args.push_back(value.dump());
    else if (value.is_number_integer())
      args.push_back(std::to_string(value.get<long long>()));
    else if (value.is_number())
      args.push_back(num(value.get<double>()));
    else
      throw UsageError("config key " + key + " has an unsupported type");
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Exterior energy and channel-of-energy experiments for radial waves in odd dimensions"};
  app.require_subcommand(1);
  app.set_config();  // disable CLI11's own config handling; --config is JSON, merged below
  std::string config_path;
  app.add_option("--config", config_path, "JSON file whose keys replace missing flags");
  app.add_option("--dim", s.dim, "odd spatial dimension");
  app.add_option("--R", s.R, "inner radius R");
  app.add_option("--f", s.f, "initial position profile (JSON file or inline object)");
  app.add_option("--g", s.g, "initial velocity profile (JSON file or inline object)");
  app.add_option("--n", s.n, "order of phi_n / psi_n");
  app.add_flag("--psi", s.psi, "use psi_n instead of phi_n");
  app.add_option("--t", s.t, "time for evolve");
  app.add_option("--tmax", s.tmax, "last time of the channel schedule");
  app.add_option("--tol", s.tol, "relative quadrature tolerance");
  app.add_option("--out", s.out, "output file (JSON or CSV)");
  app.add_option("--curve", s.curve, "CSV file for the exterior energy curve");
  app.add_option("--seed", s.seed, "seed for random data when a profile is omitted");
  app.add_option("--dmax", s.dmax, "largest dimension for identities");
  app.add_option("--points", s.points, "number of radial samples for evolve");
  std::vector<CLI::App*> subs;
  for (const char* name : {"coeffs", "identities", "ft", "project", "evolve", "channel"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    subs.push_back(sub);
  }
  subs[0]->description("c and d coefficient families, Gram matrices and inverses");
  subs[1]->description("exact identity and Gram inverse checks for odd d <= dmax");
  subs[2]->description("Fourier transform of phi_n or psi_n as an exact distribution");
  subs[3]->description("norm of the projection onto the complement of P(R)");
  subs[4]->description("solution snapshot u, u_t, u_r at time t");
  subs[5]->description("exterior energy curve, limits and verdicts");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    s.R_set = app["--R"]->count() > 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "coeffs") return run_coeffs(s);
    if (cmd == "identities") return run_identities(s);
    if (cmd == "ft") return run_ft(s);
    if (cmd == "project") return run_project(s);
    if (cmd == "evolve") return run_evolve(s);
    if (cmd == "channel") return run_channel(s);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const chan::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const chan::OutOfRange& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return 2;
  } catch (const chan::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
