#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "dnls/diagnostics.hpp"

namespace dnls {

enum class LinearSolver {
  FourierSplitting,  // exact shifted-Laplacian inverse per sweep (default)
  PointJacobi,       // plain pointwise Jacobi on the grid-space system
};

struct SolverConfig {
  double tol = 1e-14;
  int max_iters = 500;
  LinearSolver solver = LinearSolver::FourierSplitting;
};

void validate(const SolverConfig& cfg);

/// Iterative linear or fixed-point solve did not reach tolerance.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, int iterations, double residual,
              long step = -1);
  int iterations;
  double residual;
  long step;  // time-step index when raised inside a run, else -1
};

/// Explicit stepping produced a non-finite field (time step too large).
class InstabilityError : public std::runtime_error {
public:
  InstabilityError(const std::string& what, long step = -1);
  long step;
};

struct StepOutcome {
  Field u;
  int iterations = 0;
  double residual = 0.0;  // satisfies the solve's stopping rule on success
};

struct StepStats {
  int iterations = 0;
  double residual = 0.0;
};

/// Solves (I - i*tau*Lap_h - i*tau*coeff*diag(potential)) x = rhs.
///
/// FourierSplitting iterates
///   x <- (I - i*tau*Lap_h)^{-1} (rhs + i*tau*coeff*potential.*x),
/// the inverse applied exactly mode-wise as 1/(1 - i*tau*lambda(k)); it
/// contracts at rate ~ tau*|coeff|*max(potential). PointJacobi splits off the
/// full diagonal of the grid-space matrix instead. Both stop when the true
/// residual ||A x - rhs||_h <= tol * max(1, ||rhs||_h) and throw SolverError
/// after max_iters.
StepOutcome solve_shifted(const Field& rhs, const std::vector<double>& potential,
                          double tau, double coeff, const SolverConfig& cfg,
                          const SpectralOps& ops);

/// Half-step explicit predictor that makes the first Crank-Nicolson step
/// linear: U0 + (tau/2) i (Lap_h U0 + beta |U0|^2 U0), taken at t = 0.
Field startup_predictor(const Field& u0, const PdeParams& p, double tau,
                        const SpectralOps& ops);

/// First step of the three-level scheme: the modified Crank-Nicolson step
///   i (U^1 - U^0)/tau + Lap_h W + beta e^{-gamma tau} |P|^2 W = 0,
/// W = (U^1+U^0)/2 and P the startup predictor. The midpoint system
/// (I - i(tau/2)(Lap_h + beta e^{-gamma tau} diag|P|^2)) W = U^0 is solved by
/// solve_shifted; U^1 = 2W - U^0. Preserves ||U^1||_h = ||U^0||_h.
StepOutcome startup_step(const Field& u0, const PdeParams& p, double tau,
                         const SolverConfig& cfg, const SpectralOps& ops);

/// One three-level leapfrog/Crank-Nicolson step: solves
///   (I - i*tau*(Lap_h + beta e^{-2 gamma t_n} diag|U^n|^2)) W = U^{n-1}
/// and returns U^{n+1} = 2W - U^{n-1}. Linearly implicit: the cubic term is
/// frozen at the known middle level, and the shift matrix is skew-Hermitian,
/// so the system is always uniquely solvable and both the mass chain
/// ||U^{n+1}||_h = ||U^{n-1}||_h and the discrete energy are exact.
StepOutcome li_cfp_step(const Field& u_cur, const Field& u_prev, double t_n,
                        double tau, const PdeParams& p, const SolverConfig& cfg,
                        const SpectralOps& ops);

/// One step of the implicit Crank-Nicolson finite-difference scheme
///   i (U^{n+1}-U^n)/tau + Lap_1h W + (beta/2) e^{-2 gamma t_{n+1/2}}
///     (|U^{n+1}|^2 + |U^n|^2) W = 0,   W = (U^{n+1}+U^n)/2,
/// via fixed-point iteration on W with the cubic factor lagged; each sweep
/// solves (i/tau + Lap_1h/2) W = b exactly in Fourier space through the
/// finite-difference eigenvalues. Stops when the iterate change
/// ||W^{s+1} - W^s||_h <= tol. Returns U^{n+1} = 2W - U^n.
StepOutcome ifd_step(const Field& u_cur, double t_n, double tau,
                     const PdeParams& p, const SolverConfig& cfg,
                     const SpectralOps& ops);

/// f(t,U) = i (Lap_h U + beta e^{-2 gamma t} |U|^2 U), the gauge-equation
/// right-hand side used by the explicit integrator.
Field nls_rhs(double t, const Field& u, const PdeParams& p,
              const SpectralOps& ops);

/// Classical third-order Runge-Kutta step; throws InstabilityError when the
/// result is non-finite. Conditionally stable: |tau * lambda_max| must stay
/// within roughly sqrt(3) (lambda_max = 3 mu^2 (N/2)^2 on an isotropic grid).
Field rk3_step(const Field& u_cur, double t_n, double tau, const PdeParams& p,
               const SpectralOps& ops);

enum class SchemeKind { LiCfp, Ifd, Rk3 };

std::string_view scheme_name(SchemeKind k);
std::optional<SchemeKind> scheme_from_name(std::string_view name);

/// Marching state of one trajectory: the (current, previous) field pair, the
/// step index, and the damping-history accumulator feeding the discrete
/// energy. Stepping is strictly sequential; distinct runs may execute in
/// parallel.
class SchemeRun {
public:
  SchemeRun(SchemeKind kind, Field initial, PdeParams params, TimeGrid tg,
            SolverConfig cfg);

  /// Advances one time step (the first LI-CFP step performs the predictor +
  /// modified Crank-Nicolson startup). Returns the inner-solve statistics
  /// (iterations = 0 for RK3). Throws SolverError/InstabilityError tagged
  /// with the failing step index.
  StepStats advance();

  bool done() const { return step_ >= tgrid_.steps; }
  long step_index() const { return step_; }
  double time() const { return tgrid_.time_at(step_); }
  const Field& current() const { return cur_; }
  const Field& previous() const { return prev_; }
  SchemeKind kind() const { return kind_; }
  const PdeParams& params() const { return params_; }
  const TimeGrid& time_grid() const { return tgrid_; }
  const SpectralOps& ops() const { return ops_; }
  double history_sum() const { return history_.value(); }

  /// The scheme's own energy functional at the newest defined index:
  /// the pair energy E^{n-1} of (U^n, U^{n-1}) for the three-level scheme and
  /// RK3 (E^0's pair degenerates to (U^0,U^0) before the first step), and the
  /// two-level energy E^n for IFD.
  double energy() const;

private:
  SchemeKind kind_;
  PdeParams params_;
  TimeGrid tgrid_;
  SolverConfig cfg_;
  SpectralOps ops_;
  Field cur_;
  Field prev_;
  long step_ = 0;
  detail::Kahan history_;
  double pair_cross_ = 0.0;  // h_cell sum |U^{n-1}|^2 |U^n|^2 of the live pair
};

/// Marches `initial` to T = steps*tau, emitting one DiagnosticsRow at step 0,
/// every sample_every-th step, and the final step. Errors vs the exact
/// solution are attached when `exact` is set; `snapshot_sink`, when non-empty,
/// receives the gauge field at every sampled step. Residual columns are
/// relative to the step-0 row (absolute if the reference is exactly zero).
/// Identical inputs produce bit-identical rows.
std::vector<DiagnosticsRow> run_to_time(
    const Field& initial, SchemeKind kind, const PdeParams& params,
    const TimeGrid& tg, const SolverConfig& cfg, long sample_every,
    const std::optional<ExactSolutionParams>& exact = std::nullopt,
    const std::function<void(long, const Field&)>& snapshot_sink = {});

}  // namespace dnls
