// Command-line experiment runner: single simulations, temporal/spatial
// convergence sweeps, and long-horizon conservation studies for the damped
// cubic Schrödinger solvers in dnls_core.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>
#include <thread>

#include "dnls/field_io.hpp"
#include "dnls/schemes.hpp"

namespace {

using namespace dnls;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string scheme = "licfp";  // comma-separated list allowed in `conservation`
  std::vector<int> n = {16};
  std::vector<double> lengths;  // empty = 2*pi per axis
  double tau = 0.1;
  double t_final = 1.0;
  double beta = 2.0;
  double gamma = 1.0;
  std::vector<int> wave_k = {1};
  std::vector<double> amplitude = {1.0};
  double tol = 1e-14;
  int max_iters = 500;
  std::string solver = "splitting";
  long sample_every = 1;
  std::string out;
  std::string format = "csv";
  bool errors = true;
  std::string dump_fields;
  std::vector<double> taus;    // converge-time sweep
  std::vector<int> n_list;     // converge-space sweep
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_same_v<T, double>)
      s += fmt_double(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Flat key=value config files. Keys match the long option names; values with
// several entries are comma-separated. '#' starts a comment.

std::string to_key_values(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "scheme=" << c.scheme << '\n';
  os << "n=" << join(c.n) << '\n';
  if (!c.lengths.empty()) os << "lengths=" << join(c.lengths) << '\n';
  os << "tau=" << fmt_double(c.tau) << '\n';
  os << "t-final=" << fmt_double(c.t_final) << '\n';
  os << "beta=" << fmt_double(c.beta) << '\n';
  os << "gamma=" << fmt_double(c.gamma) << '\n';
  os << "wave-k=" << join(c.wave_k) << '\n';
  os << "amplitude=" << join(c.amplitude) << '\n';
  os << "tol=" << fmt_double(c.tol) << '\n';
  os << "max-iters=" << c.max_iters << '\n';
  os << "solver=" << c.solver << '\n';
  os << "sample-every=" << c.sample_every << '\n';
  if (!c.out.empty()) os << "out=" << c.out << '\n';
  os << "format=" << c.format << '\n';
  os << "errors=" << (c.errors ? "true" : "false") << '\n';
  if (!c.dump_fields.empty()) os << "dump-fields=" << c.dump_fields << '\n';
  if (!c.taus.empty()) os << "taus=" << join(c.taus) << '\n';
  if (!c.n_list.empty()) os << "n-list=" << join(c.n_list) << '\n';
  return os.str();
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const std::string& key) {
  std::vector<T> out;
  for (const std::string& p : split_csv(s)) {
    try {
      std::size_t pos = 0;
      if constexpr (std::is_same_v<T, double>) {
        out.push_back(std::stod(p, &pos));
      } else {
        out.push_back(static_cast<T>(std::stol(p, &pos)));
      }
      if (pos != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError("bad value '" + p + "' for key '" + key + "'");
    }
  }
  return out;
}

void apply_key_value(ExperimentConfig& c, const std::string& key,
                     const std::string& value) {
  auto as_double = [&] {
    auto v = parse_list<double>(value, key);
    if (v.size() != 1) throw ConfigError("key '" + key + "' expects one value");
    return v[0];
  };
  auto as_long = [&] { return static_cast<long>(as_double()); };

  if (key == "scheme") c.scheme = value;
  else if (key == "n") c.n = parse_list<int>(value, key);
  else if (key == "lengths") c.lengths = parse_list<double>(value, key);
  else if (key == "tau") c.tau = as_double();
  else if (key == "t-final") c.t_final = as_double();
  else if (key == "beta") c.beta = as_double();
  else if (key == "gamma") c.gamma = as_double();
  else if (key == "wave-k") c.wave_k = parse_list<int>(value, key);
  else if (key == "amplitude") c.amplitude = parse_list<double>(value, key);
  else if (key == "tol") c.tol = as_double();
  else if (key == "max-iters") c.max_iters = static_cast<int>(as_long());
  else if (key == "solver") c.solver = value;
  else if (key == "sample-every") c.sample_every = as_long();
  else if (key == "out") c.out = value;
  else if (key == "format") c.format = value;
  else if (key == "errors") {
    if (value == "true") c.errors = true;
    else if (value == "false") c.errors = false;
    else throw ConfigError("key 'errors' expects true or false");
  } else if (key == "dump-fields") c.dump_fields = value;
  else if (key == "taus") c.taus = parse_list<double>(value, key);
  else if (key == "n-list") c.n_list = parse_list<int>(value, key);
  else throw ConfigError("unknown config key '" + key + "'");
}

void load_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    apply_key_value(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

// ---------------------------------------------------------------------------
// Validation and assembly of run ingredients.

struct RunSetup {
  Grid3 grid;
  TimeGrid tgrid;
  PdeParams params;
  SolverConfig solver;
  ExactSolutionParams exact;
  SchemeKind scheme;
};

long steps_for(double t_final, double tau) {
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (t_final < 0.0) throw ConfigError("t-final must be >= 0");
  const long steps = std::lround(t_final / tau);
  if (std::abs(steps * tau - t_final) > 1e-9 * std::max(1.0, t_final))
    throw ConfigError("tau=" + fmt_double(tau) +
                      " does not divide t-final=" + fmt_double(t_final));
  return steps;
}

std::array<int, 3> grid_counts(const ExperimentConfig& c) {
  if (c.n.size() == 1) return {c.n[0], c.n[0], c.n[0]};
  if (c.n.size() == 3) return {c.n[0], c.n[1], c.n[2]};
  throw ConfigError("n expects 1 or 3 comma-separated values");
}

std::array<double, 3> grid_lengths(const ExperimentConfig& c) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (c.lengths.empty()) return {two_pi, two_pi, two_pi};
  if (c.lengths.size() == 1)
    return {c.lengths[0], c.lengths[0], c.lengths[0]};
  if (c.lengths.size() == 3) return {c.lengths[0], c.lengths[1], c.lengths[2]};
  throw ConfigError("lengths expects 1 or 3 comma-separated values");
}

std::array<int, 3> wave_numbers(const ExperimentConfig& c) {
  if (c.wave_k.size() == 1) return {c.wave_k[0], c.wave_k[0], c.wave_k[0]};
  if (c.wave_k.size() == 3) return {c.wave_k[0], c.wave_k[1], c.wave_k[2]};
  throw ConfigError("wave-k expects 1 or 3 comma-separated values");
}

SchemeKind parse_scheme(const std::string& name) {
  auto k = scheme_from_name(name);
  if (!k) throw ConfigError("unknown scheme '" + name + "' (licfp|ifd|rk3)");
  return *k;
}

RunSetup make_setup(const ExperimentConfig& c) {
  const auto counts = grid_counts(c);
  const auto lens = grid_lengths(c);
  const auto k = wave_numbers(c);

  RunSetup s{
      Grid3(counts[0], counts[1], counts[2], lens[0], lens[1], lens[2]),
      TimeGrid(c.tau, steps_for(c.t_final, c.tau)),
      PdeParams{c.beta, c.gamma},
      SolverConfig{},
      ExactSolutionParams{},
      parse_scheme(c.scheme)};

  s.solver.tol = c.tol;
  s.solver.max_iters = c.max_iters;
  if (c.solver == "splitting") s.solver.solver = LinearSolver::FourierSplitting;
  else if (c.solver == "jacobi") s.solver.solver = LinearSolver::PointJacobi;
  else throw ConfigError("unknown solver '" + c.solver + "' (splitting|jacobi)");

  if (c.amplitude.empty() || c.amplitude.size() > 2)
    throw ConfigError("amplitude expects one or two values (re[,im])");
  s.exact.amplitude =
      Complex(c.amplitude[0], c.amplitude.size() == 2 ? c.amplitude[1] : 0.0);
  s.exact.k1 = k[0];
  s.exact.k2 = k[1];
  s.exact.k3 = k[2];
  s.exact.pde = s.params;

  if (2 * std::abs(s.exact.k1) > s.grid.n1() ||
      2 * std::abs(s.exact.k2) > s.grid.n2() ||
      2 * std::abs(s.exact.k3) > s.grid.n3())
    throw ConfigError("wave-k exceeds the grid resolution limit N/2");

  if (c.sample_every < 1) throw ConfigError("sample-every must be >= 1");
  if (c.format != "csv" && c.format != "json")
    throw ConfigError("format must be csv or json");
  validate(s.params);
  validate(s.solver);
  return s;
}

// ---------------------------------------------------------------------------
// Output writers. Doubles are printed with 17 significant digits so that
// residuals at the 1e-14 scale survive the round trip.

void write_rows_csv(std::ostream& os, const std::vector<DiagnosticsRow>& rows) {
  os << "n,t,mass,energy,rm,re,err_l2,err_inf\n";
  for (const DiagnosticsRow& r : rows) {
    os << r.n << ',' << fmt_double(r.t) << ',' << fmt_double(r.mass) << ','
       << fmt_double(r.energy) << ',' << fmt_double(r.rm) << ','
       << fmt_double(r.re) << ',';
    if (r.err_l2) os << fmt_double(*r.err_l2);
    os << ',';
    if (r.err_inf) os << fmt_double(*r.err_inf);
    os << '\n';
  }
}

void write_rows_json(std::ostream& os, const std::vector<DiagnosticsRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const DiagnosticsRow& r : rows) {
    nlohmann::ordered_json o;
    o["n"] = r.n;
    o["t"] = r.t;
    o["mass"] = r.mass;
    o["energy"] = r.energy;
    o["rm"] = r.rm;
    o["re"] = r.re;
    if (r.err_l2) o["err_l2"] = *r.err_l2;
    if (r.err_inf) o["err_inf"] = *r.err_inf;
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

void write_rows(const ExperimentConfig& c, const std::string& path,
                const std::vector<DiagnosticsRow>& rows) {
  auto write = [&](std::ostream& os) {
    if (c.format == "json")
      write_rows_json(os, rows);
    else
      write_rows_csv(os, rows);
  };
  if (path.empty()) {
    write(std::cout);
  } else {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    write(os);
  }
}

std::function<void(long, const Field&)> snapshot_sink(
    const ExperimentConfig& c) {
  if (c.dump_fields.empty()) return {};
  const std::string prefix = c.dump_fields;
  const double tau = c.tau;
  return [prefix, tau](long step, const Field& u) {
    char name[32];
    std::snprintf(name, sizeof(name), "_n%08ld.fld", step);
    write_field_snapshot(prefix + name, u, step * tau);
  };
}

// ---------------------------------------------------------------------------
// Capped parallel sweep helper. Jobs run on up to DNLS_THREADS threads
// (default: hardware concurrency); results land in input order.

unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("DNLS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1)
      hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    else
      hw = 1;
  }
  return hw;
}

void run_jobs(std::vector<std::function<void()>>& jobs) {
  const unsigned cap = std::min<std::size_t>(thread_cap(), jobs.size());
  if (cap <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(cap);
  for (unsigned t = 0; t < cap; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < jobs.size();
           i = next.fetch_add(1))
        jobs[i]();
    });
  for (auto& th : pool) th.join();
}

struct SweepRow {
  double param = 0.0;
  bool ok = false;
  double err_l2 = 0.0;
  double err_inf = 0.0;
  std::string message;
};

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4e", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_run(const ExperimentConfig& c) {
  RunSetup s = make_setup(c);
  Field u0 = exact_u(0.0, s.exact, s.grid);
  std::optional<ExactSolutionParams> exact;
  if (c.errors) exact = s.exact;
  auto rows = run_to_time(u0, s.scheme, s.params, s.tgrid, s.solver,
                          c.sample_every, exact, snapshot_sink(c));
  write_rows(c, c.out, rows);
  return 0;
}

int cmd_converge_time(const ExperimentConfig& c) {
  if (c.taus.empty()) throw ConfigError("converge-time requires --taus");
  RunSetup base = make_setup(c);

  std::vector<double> taus = c.taus;
  std::sort(taus.begin(), taus.end(), std::greater<>());
  for (double t : taus) steps_for(c.t_final, t);  // validate up front

  std::vector<SweepRow> result(taus.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t i = 0; i < taus.size(); ++i)
    jobs.push_back([&, i] {
      SweepRow& row = result[i];
      row.param = taus[i];
      try {
        TimeGrid tg(taus[i], steps_for(c.t_final, taus[i]));
        Field u0 = exact_u(0.0, base.exact, base.grid);
        auto rows = run_to_time(u0, base.scheme, base.params, tg, base.solver,
                                std::max<long>(tg.steps, 1), base.exact);
        row.err_l2 = *rows.back().err_l2;
        row.err_inf = *rows.back().err_inf;
        row.ok = true;
      } catch (const std::exception& e) {
        row.message = e.what();
      }
    });
  run_jobs(jobs);

  // stdout table
  std::printf("%-12s %-12s %-9s %-12s %-9s\n", "tau", "err_l2", "rate_l2",
              "err_inf", "rate_inf");
  const SweepRow* prev = nullptr;
  std::ostringstream csv;
  csv << "tau,err_l2,rate_l2,err_inf,rate_inf\n";
  for (const SweepRow& r : result) {
    csv << fmt_double(r.param) << ',';
    if (!r.ok) {
      std::printf("%-12s failed: %s\n", fmt_short(r.param).c_str(),
                  r.message.c_str());
      csv << ",,,\n";
      prev = nullptr;
      continue;
    }
    std::string rate_l2 = "-", rate_inf = "-";
    if (prev) {
      rate_l2 = fmt_short(
          rate_between(prev->param, prev->err_l2, r.param, r.err_l2));
      rate_inf = fmt_short(
          rate_between(prev->param, prev->err_inf, r.param, r.err_inf));
    }
    std::printf("%-12s %-12s %-9s %-12s %-9s\n", fmt_short(r.param).c_str(),
                fmt_short(r.err_l2).c_str(), rate_l2.c_str(),
                fmt_short(r.err_inf).c_str(), rate_inf.c_str());
    csv << fmt_double(r.err_l2) << ',' << (prev ? rate_l2 : "") << ','
        << fmt_double(r.err_inf) << ',' << (prev ? rate_inf : "") << '\n';
    prev = &r;
  }
  if (!c.out.empty()) {
    std::ofstream os(c.out, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + c.out);
    os << csv.str();
  }
  const bool any_ok =
      std::any_of(result.begin(), result.end(), [](auto& r) { return r.ok; });
  return any_ok ? 0 : 3;
}

int cmd_converge_space(const ExperimentConfig& c) {
  if (c.n_list.empty()) throw ConfigError("converge-space requires --n-list");
  std::vector<SweepRow> result(c.n_list.size());
  std::vector<ExperimentConfig> configs;
  for (int n : c.n_list) {
    ExperimentConfig probe = c;
    probe.n = {n};
    make_setup(probe);  // validates resolution of wave-k on every grid
    configs.push_back(probe);
  }

  std::vector<std::function<void()>> jobs;
  for (std::size_t i = 0; i < configs.size(); ++i)
    jobs.push_back([&, i] {
      SweepRow& row = result[i];
      row.param = configs[i].n[0];
      try {
        RunSetup s = make_setup(configs[i]);
        Field u0 = exact_u(0.0, s.exact, s.grid);
        auto rows =
            run_to_time(u0, s.scheme, s.params, s.tgrid, s.solver,
                        std::max<long>(s.tgrid.steps, 1), s.exact);
        row.err_l2 = *rows.back().err_l2;
        row.err_inf = *rows.back().err_inf;
        row.ok = true;
      } catch (const std::exception& e) {
        row.message = e.what();
      }
    });
  run_jobs(jobs);

  std::printf("%-8s %-12s %-12s\n", "n", "err_l2", "err_inf");
  std::ostringstream csv;
  csv << "n,err_l2,err_inf\n";
  for (const SweepRow& r : result) {
    csv << static_cast<int>(r.param) << ',';
    if (!r.ok) {
      std::printf("%-8d failed: %s\n", static_cast<int>(r.param),
                  r.message.c_str());
      csv << ",\n";
      continue;
    }
    std::printf("%-8d %-12s %-12s\n", static_cast<int>(r.param),
                fmt_short(r.err_l2).c_str(), fmt_short(r.err_inf).c_str());
    csv << fmt_double(r.err_l2) << ',' << fmt_double(r.err_inf) << '\n';
  }
  if (!c.out.empty()) {
    std::ofstream os(c.out, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + c.out);
    os << csv.str();
  }
  const bool any_ok =
      std::any_of(result.begin(), result.end(), [](auto& r) { return r.ok; });
  return any_ok ? 0 : 3;
}

std::string suffixed_path(const std::string& path, const std::string& tag) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "_" + tag;
  return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

int cmd_conservation(const ExperimentConfig& c) {
  std::vector<std::string> schemes = split_csv(c.scheme);
  if (schemes.empty()) throw ConfigError("conservation requires a scheme list");
  for (const std::string& name : schemes) parse_scheme(name);  // validate all

  std::printf("%-8s %-14s %-14s\n", "scheme", "max_rm", "max_re");
  for (const std::string& name : schemes) {
    ExperimentConfig one = c;
    one.scheme = name;
    RunSetup s = make_setup(one);
    Field u0 = exact_u(0.0, s.exact, s.grid);
    std::optional<ExactSolutionParams> exact;
    if (c.errors) exact = s.exact;
    auto rows = run_to_time(u0, s.scheme, s.params, s.tgrid, s.solver,
                            c.sample_every, exact, snapshot_sink(one));
    double max_rm = 0.0, max_re = 0.0;
    for (const auto& r : rows) {
      max_rm = std::max(max_rm, r.rm);
      max_re = std::max(max_re, r.re);
    }
    std::printf("%-8s %-14s %-14s\n", name.c_str(), fmt_short(max_rm).c_str(),
                fmt_short(max_re).c_str());
    if (!c.out.empty())
      write_rows(one,
                 schemes.size() == 1 ? c.out : suffixed_path(c.out, name),
                 rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  std::string config_path, emit_config;

  // The config file forms the baseline; explicit flags override it, so it is
  // applied before CLI11 parses the command line.
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    try {
      if (a == "--config" && i + 1 < argc)
        load_config_file(cfg, argv[i + 1]);
      else if (a.rfind("--config=", 0) == 0)
        load_config_file(cfg, a.substr(9));
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    }
  }

  CLI::App app{
      "Structure-preserving solvers for the damped cubic Schrödinger "
      "equation on periodic 3-D grids"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "flat key=value config file (flags override it)");
    sub->add_option("--emit-config", emit_config,
                    "write the effective configuration to this file and exit");
    sub->add_option("--scheme", cfg.scheme,
                    "licfp | ifd | rk3 (comma list in `conservation`)");
    sub->add_option("--n", cfg.n, "grid points per axis (one or three values)")
        ->delimiter(',')
        ->expected(1, 3);
    sub->add_option("--lengths", cfg.lengths,
                    "domain side lengths (default 2*pi each)")
        ->delimiter(',')
        ->expected(1, 3);
    sub->add_option("--tau", cfg.tau, "time step");
    sub->add_option("--t-final", cfg.t_final, "final time (multiple of tau)");
    sub->add_option("--beta", cfg.beta, "cubic nonlinearity coefficient");
    sub->add_option("--gamma", cfg.gamma, "damping coefficient (>= 0)");
    sub->add_option("--wave-k", cfg.wave_k,
                    "plane-wave mode numbers of the initial data")
        ->delimiter(',')
        ->expected(1, 3);
    sub->add_option("--amplitude", cfg.amplitude,
                    "complex amplitude re[,im] of the initial data")
        ->delimiter(',')
        ->expected(1, 2);
    sub->add_option("--tol", cfg.tol, "inner solver tolerance");
    sub->add_option("--max-iters", cfg.max_iters, "inner solver sweep limit");
    sub->add_option("--solver", cfg.solver,
                    "linear solver for the implicit schemes: splitting | jacobi");
    sub->add_option("--sample-every", cfg.sample_every,
                    "diagnostics sampling stride");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv | json");
    sub->add_flag("--errors,!--no-errors", cfg.errors,
                  "include error columns vs the analytic solution");
    sub->add_option("--dump-fields", cfg.dump_fields,
                    "write raw field snapshots with this path prefix");
  };

  CLI::App* run = app.add_subcommand(
      "run", "march one configuration and tabulate diagnostics");
  add_common(run);
  CLI::App* ctime = app.add_subcommand(
      "converge-time", "temporal error sweep over a list of time steps");
  add_common(ctime);
  ctime->add_option("--taus", cfg.taus, "time steps to sweep (comma list)")
      ->delimiter(',');
  CLI::App* cspace = app.add_subcommand(
      "converge-space", "spatial error sweep over a list of grid sizes");
  add_common(cspace);
  cspace->add_option("--n-list", cfg.n_list, "grid sizes to sweep (comma list)")
      ->delimiter(',');
  CLI::App* cons = app.add_subcommand(
      "conservation", "long-horizon mass/energy residual study");
  add_common(cons);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!emit_config.empty()) {
      std::ofstream os(emit_config, std::ios::trunc);
      if (!os) throw ConfigError("cannot open " + emit_config);
      os << to_key_values(cfg);
      return 0;
    }
    if (run->parsed()) return cmd_run(cfg);
    if (ctime->parsed()) return cmd_converge_time(cfg);
    if (cspace->parsed()) return cmd_converge_space(cfg);
    if (cons->parsed()) return cmd_conservation(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "numerical failure at step " << e.step << ": " << e.what()
              << " (residual " << fmt_short(e.residual) << ")\n";
    return 3;
  } catch (const InstabilityError& e) {
    std::cerr << "numerical failure at step " << e.step << ": " << e.what()
              << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
