#include "dnls/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dnls {

void validate(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol))
    throw std::invalid_argument("solver tolerance must be positive");
  if (cfg.max_iters < 1)
    throw std::invalid_argument("solver max_iters must be >= 1");
}

SolverError::SolverError(const std::string& what, int iterations_,
                         double residual_, long step_)
    : std::runtime_error(what),
      iterations(iterations_),
      residual(residual_),
      step(step_) {}

InstabilityError::InstabilityError(const std::string& what, long step_)
    : std::runtime_error(what), step(step_) {}

namespace {

std::vector<double> abs2(const Field& u) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = std::norm(u[i]);
  return v;
}

bool all_finite(const Field& u) {
  for (const Complex& z : u.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// ||(I - i*tau*Lap - i*tau*coeff*diag(V)) x - rhs||_h
double shifted_residual_norm(const Field& x, const Field& rhs,
                             const std::vector<double>& potential, double tau,
                             double coeff, const SpectralOps& ops) {
  Field lap = ops.laplacian(x);
  detail::Kahan s;
  const Complex itau(0.0, tau);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Complex r =
        x[i] - itau * (lap[i] + coeff * potential[i] * x[i]) - rhs[i];
    s.add(std::norm(r));
  }
  return std::sqrt(x.grid.cell_volume() * s.value());
}

StepOutcome solve_shifted_splitting(const Field& rhs,
                                    const std::vector<double>& potential,
                                    double tau, double coeff,
                                    const SolverConfig& cfg,
                                    const SpectralOps& ops) {
  const double target = cfg.tol * std::max(1.0, norm_h(rhs));
  auto resolvent = [tau](double lam) {
    return 1.0 / Complex(1.0, -tau * lam);
  };

  Field x = ops.filter_spectral(rhs, resolvent);
  const Complex itc(0.0, tau * coeff);
  Field y(rhs.grid);
  for (int iter = 1;; ++iter) {
    const double res = shifted_residual_norm(x, rhs, potential, tau, coeff, ops);
    if (res <= target) return {std::move(x), iter, res};
    if (iter >= cfg.max_iters)
      throw SolverError("shifted solve (splitting) did not reach tolerance " +
                            std::to_string(cfg.tol) + " after " +
                            std::to_string(iter) + " sweeps",
                        iter, res);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      y[i] = rhs[i] + itc * potential[i] * x[i];
    x = ops.filter_spectral(y, resolvent);
  }
}

StepOutcome solve_shifted_jacobi(const Field& rhs,
                                 const std::vector<double>& potential,
                                 double tau, double coeff,
                                 const SolverConfig& cfg,
                                 const SpectralOps& ops) {
  const double target = cfg.tol * std::max(1.0, norm_h(rhs));
  const LaplacianEigs& e = ops.eigs();
  auto mean = [](const std::vector<double>& v) {
    detail::Kahan s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
  };
  // The grid-space matrix of the spectral Laplacian has the constant diagonal
  // mean(lambda_x) + mean(lambda_y) + mean(lambda_z).
  const double diag_lap =
      mean(e.spectral_x) + mean(e.spectral_y) + mean(e.spectral_z);

  const Complex itau(0.0, tau);
  Field x(rhs.grid);
  for (std::size_t i = 0; i < rhs.size(); ++i)
    x[i] = rhs[i] / (1.0 - itau * (diag_lap + coeff * potential[i]));

  Field r(rhs.grid);
  for (int iter = 1;; ++iter) {
    Field lap = ops.laplacian(x);
    detail::Kahan s;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      r[i] = rhs[i] - (x[i] - itau * (lap[i] + coeff * potential[i] * x[i]));
      s.add(std::norm(r[i]));
    }
    const double res = std::sqrt(rhs.grid.cell_volume() * s.value());
    if (res <= target) return {std::move(x), iter, res};
    if (iter >= cfg.max_iters || !all_finite(x))
      throw SolverError("shifted solve (Jacobi) did not reach tolerance " +
                            std::to_string(cfg.tol) + " after " +
                            std::to_string(iter) + " sweeps",
                        iter, res);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      x[i] += r[i] / (1.0 - itau * (diag_lap + coeff * potential[i]));
  }
}

}  // namespace

StepOutcome solve_shifted(const Field& rhs, const std::vector<double>& potential,
                          double tau, double coeff, const SolverConfig& cfg,
                          const SpectralOps& ops) {
  detail::require_same_grid(rhs.grid, ops.grid());
  if (potential.size() != rhs.size())
    throw GridMismatchError("potential size does not match the grid");
  validate(cfg);
  if (cfg.solver == LinearSolver::PointJacobi)
    return solve_shifted_jacobi(rhs, potential, tau, coeff, cfg, ops);
  return solve_shifted_splitting(rhs, potential, tau, coeff, cfg, ops);
}

Field startup_predictor(const Field& u0, const PdeParams& p, double tau,
                        const SpectralOps& ops) {
  Field lap = ops.laplacian(u0);
  Field out(u0.grid);
  const Complex half_step(0.0, 0.5 * tau);
  for (std::size_t i = 0; i < u0.size(); ++i)
    out[i] = u0[i] + half_step * (lap[i] + p.beta * std::norm(u0[i]) * u0[i]);
  return out;
}

StepOutcome startup_step(const Field& u0, const PdeParams& p, double tau,
                         const SolverConfig& cfg, const SpectralOps& ops) {
  const Field predictor = startup_predictor(u0, p, tau, ops);
  const double coeff = p.beta * std::exp(-p.gamma * tau);  // e^{-2 gamma tau/2}
  // Midpoint form: (I - i(tau/2)(Lap_h + coeff |P|^2)) W = U^0, U^1 = 2W - U^0.
  StepOutcome mid =
      solve_shifted(u0, abs2(predictor), 0.5 * tau, coeff, cfg, ops);
  Field u1(u0.grid);
  for (std::size_t i = 0; i < u0.size(); ++i)
    u1[i] = 2.0 * mid.u[i] - u0[i];
  return {std::move(u1), mid.iterations, mid.residual};
}

StepOutcome li_cfp_step(const Field& u_cur, const Field& u_prev, double t_n,
                        double tau, const PdeParams& p, const SolverConfig& cfg,
                        const SpectralOps& ops) {
  detail::require_same_grid(u_cur, u_prev);
  const double coeff = p.beta * std::exp(-2.0 * p.gamma * t_n);
  StepOutcome mid = solve_shifted(u_prev, abs2(u_cur), tau, coeff, cfg, ops);
  Field u_next(u_cur.grid);
  for (std::size_t i = 0; i < u_next.size(); ++i)
    u_next[i] = 2.0 * mid.u[i] - u_prev[i];
  return {std::move(u_next), mid.iterations, mid.residual};
}

StepOutcome ifd_step(const Field& u_cur, double t_n, double tau,
                     const PdeParams& p, const SolverConfig& cfg,
                     const SpectralOps& ops) {
  detail::require_same_grid(u_cur.grid, ops.grid());
  validate(cfg);
  const double coeff = 0.25 * p.beta * std::exp(-2.0 * p.gamma * (t_n + 0.5 * tau));
  const double inv_tau = 1.0 / tau;
  auto resolvent = [inv_tau](double lam) {
    return 1.0 / Complex(0.5 * lam, inv_tau);
  };
  const std::vector<double> cur2 = abs2(u_cur);

  Field w = u_cur;  // fixed-point iterate for the midpoint U^{n+1/2}
  Field rhs(u_cur.grid);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Complex u_new = 2.0 * w[i] - u_cur[i];
      rhs[i] = Complex(0.0, inv_tau) * u_cur[i] -
               coeff * (std::norm(u_new) + cur2[i]) * w[i];
    }
    Field w_next = ops.filter_fd(rhs, resolvent);
    detail::Kahan s;
    for (std::size_t i = 0; i < w.size(); ++i)
      s.add(std::norm(w_next[i] - w[i]));
    const double diff = std::sqrt(u_cur.grid.cell_volume() * s.value());
    w = std::move(w_next);
    if (diff <= cfg.tol) {
      Field u_next(u_cur.grid);
      for (std::size_t i = 0; i < w.size(); ++i)
        u_next[i] = 2.0 * w[i] - u_cur[i];
      return {std::move(u_next), iter, diff};
    }
  }
  throw SolverError("fixed-point iteration did not contract to tolerance " +
                        std::to_string(cfg.tol) + " within " +
                        std::to_string(cfg.max_iters) + " sweeps",
                    cfg.max_iters, -1.0);
}

Field nls_rhs(double t, const Field& u, const PdeParams& p,
              const SpectralOps& ops) {
  Field lap = ops.laplacian(u);
  const double c = p.beta * std::exp(-2.0 * p.gamma * t);
  Field out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = Complex(0.0, 1.0) * (lap[i] + c * std::norm(u[i]) * u[i]);
  return out;
}

Field rk3_step(const Field& u_cur, double t_n, double tau, const PdeParams& p,
               const SpectralOps& ops) {
  const std::size_t n = u_cur.size();
  Field k1 = nls_rhs(t_n, u_cur, p, ops);
  Field stage(u_cur.grid);
  for (std::size_t i = 0; i < n; ++i)
    stage[i] = u_cur[i] + 0.5 * tau * k1[i];
  Field k2 = nls_rhs(t_n + 0.5 * tau, stage, p, ops);
  for (std::size_t i = 0; i < n; ++i)
    stage[i] = u_cur[i] - tau * k1[i] + 2.0 * tau * k2[i];
  Field k3 = nls_rhs(t_n + tau, stage, p, ops);
  Field out(u_cur.grid);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = u_cur[i] + tau / 6.0 * (k1[i] + 4.0 * k2[i] + k3[i]);
  if (!all_finite(out))
    throw InstabilityError(
        "explicit step produced a non-finite field; reduce the time step");
  return out;
}

std::string_view scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::LiCfp: return "licfp";
    case SchemeKind::Ifd: return "ifd";
    case SchemeKind::Rk3: return "rk3";
  }
  return "?";
}

std::optional<SchemeKind> scheme_from_name(std::string_view name) {
  if (name == "licfp") return SchemeKind::LiCfp;
  if (name == "ifd") return SchemeKind::Ifd;
  if (name == "rk3") return SchemeKind::Rk3;
  return std::nullopt;
}

SchemeRun::SchemeRun(SchemeKind kind, Field initial, PdeParams params,
                     TimeGrid tg, SolverConfig cfg)
    : kind_(kind),
      params_(params),
      tgrid_(tg),
      cfg_(cfg),
      ops_(initial.grid),
      cur_(std::move(initial)),
      prev_(cur_) {
  validate(params_);
  validate(cfg_);
  pair_cross_ = cross_quartic_sum(prev_, cur_);
}

StepStats SchemeRun::advance() {
  if (done()) throw std::logic_error("advance() called past the final step");
  const double t_n = time();
  const double tau = tgrid_.tau;
  try {
    StepOutcome out = [&] {
      switch (kind_) {
        case SchemeKind::LiCfp:
          return step_ == 0
                     ? startup_step(cur_, params_, tau, cfg_, ops_)
                     : li_cfp_step(cur_, prev_, t_n, tau, params_, cfg_, ops_);
        case SchemeKind::Ifd:
          return ifd_step(cur_, t_n, tau, params_, cfg_, ops_);
        case SchemeKind::Rk3:
        default:
          return StepOutcome{rk3_step(cur_, t_n, tau, params_, ops_), 0, 0.0};
      }
    }();

    // Damping-history accumulation, before the pair rotates.
    const double decay_gap = -std::expm1(-2.0 * params_.gamma * tau);
    if (kind_ == SchemeKind::Ifd) {
      history_.add(0.5 * params_.beta *
                   std::exp(-2.0 * params_.gamma * (t_n - 0.5 * tau)) *
                   decay_gap * cross_quartic_sum(cur_, cur_));
    } else if (step_ >= 1) {
      history_.add(0.5 * params_.beta *
                   std::exp(-2.0 * params_.gamma * (t_n - tau)) * decay_gap *
                   pair_cross_);
    }

    prev_ = std::move(cur_);
    cur_ = std::move(out.u);
    ++step_;
    if (kind_ != SchemeKind::Ifd) pair_cross_ = cross_quartic_sum(prev_, cur_);
    return {out.iterations, out.residual};
  } catch (SolverError& e) {
    e.step = step_;
    throw;
  } catch (InstabilityError& e) {
    e.step = step_;
    throw;
  }
}

double SchemeRun::energy() const {
  if (kind_ == SchemeKind::Ifd)
    return ifd_energy(cur_, step_, tgrid_.tau, params_, history_.value());
  const double t_pair = tgrid_.time_at(std::max(step_ - 1, 0L));
  return licfp_energy(cur_, prev_, t_pair, params_, history_.value(), ops_);
}

std::vector<DiagnosticsRow> run_to_time(
    const Field& initial, SchemeKind kind, const PdeParams& params,
    const TimeGrid& tg, const SolverConfig& cfg, long sample_every,
    const std::optional<ExactSolutionParams>& exact,
    const std::function<void(long, const Field&)>& snapshot_sink) {
  if (sample_every < 1)
    throw std::invalid_argument("sample_every must be >= 1");

  SchemeRun run(kind, initial, params, tg, cfg);
  std::vector<DiagnosticsRow> rows;
  rows.reserve(static_cast<std::size_t>(tg.steps / sample_every) + 2);

  double m0 = 0.0, e0 = 0.0;
  bool have_ref = false;
  auto residual_vs = [](double v, double ref) {
    return ref != 0.0 ? std::abs((v - ref) / ref) : std::abs(v - ref);
  };
  auto emit = [&](long n, const Field& u, double energy) {
    DiagnosticsRow row;
    row.n = n;
    row.t = tg.time_at(n);
    row.mass = mass(u);
    row.energy = energy;
    if (!have_ref) {
      m0 = row.mass;
      e0 = row.energy;
      have_ref = true;
    }
    row.rm = residual_vs(row.mass, m0);
    row.re = residual_vs(row.energy, e0);
    if (exact) {
      auto [l2, linf] = error_norms(u, row.t, *exact);
      row.err_l2 = l2;
      row.err_inf = linf;
    }
    if (snapshot_sink) snapshot_sink(n, u);
    rows.push_back(std::move(row));
  };
  auto sampled = [&](long n) { return n % sample_every == 0; };

  const long steps = tg.steps;
  if (steps == 0) {
    emit(0, run.current(), run.energy());
    return rows;
  }

  if (kind == SchemeKind::Ifd) {
    emit(0, run.current(), run.energy());
    while (!run.done()) {
      run.advance();
      const long k = run.step_index();
      if (k == steps || sampled(k)) emit(k, run.current(), run.energy());
    }
  } else {
    // Pair-based energies: the row at step n reports the energy of the
    // (U^{n+1}, U^n) pair, so it is emitted right after step n+1 exists. The
    // final row reuses the last defined pair.
    while (!run.done()) {
      run.advance();
      const long k = run.step_index();
      if (sampled(k - 1)) emit(k - 1, run.previous(), run.energy());
      if (k == steps) emit(steps, run.current(), run.energy());
    }
  }
  return rows;
}

}  // namespace dnls
