#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "dnls/operators.hpp"

namespace dnls {

/// Nonlinearity strength beta and damping gamma >= 0 of
/// i psi_t + Lap psi + beta |psi|^2 psi + i gamma psi = 0.
/// All schemes march the gauge variable u = e^{gamma t} psi, for which the
/// damping becomes the decaying coefficient beta e^{-2 gamma t} and the mass
/// ||u||^2 is exactly conserved.
struct PdeParams {
  double beta = 2.0;
  double gamma = 1.0;
};

void validate(const PdeParams& p);

/// Discrete total mass ||U||_h^2.
double mass(const Field& u);

/// h_cell * sum_j |a_j|^2 |b_j|^2, the quartic cross term appearing in the
/// three-level energy and its damping history.
double cross_quartic_sum(const Field& a, const Field& b);

/// Three-level discrete energy for the pair (U^{n+1}, U^n):
///   1/2 |U^{n+1}|_h^2 + 1/2 |U^n|_h^2
///   - (beta/2) e^{-2 gamma t_n} h_cell sum |U^n|^2 |U^{n+1}|^2
///   - history_sum,
/// with the spectral semi-norm |.|_h. history_sum is the accumulated damping
/// history sum_{l=1..n} (beta/2) e^{-2 gamma t_{l-1}} (1 - e^{-2 gamma tau})
/// h_cell sum |U^{l-1}|^2 |U^l|^2, maintained incrementally by the stepper.
double licfp_energy(const Field& u_next, const Field& u_cur, double t_n,
                    const PdeParams& p, double history_sum,
                    const SpectralOps& ops);

/// Two-level finite-difference energy at step n:
///   |U^n|_{1,h}^2 - (beta/2) e^{-2 gamma t_{n-1/2}} ||U^n||_{h,4}^4
///   - history_sum,
/// with the finite-difference semi-norm |.|_{1,h}. history_sum accumulates
/// (beta/2) e^{-2 gamma t_{l-3/2}} (1 - e^{-2 gamma tau}) ||U^{l-1}||_{h,4}^4
/// for l = 1..n; at l = 1 the exponent index is t_{-1/2} = -tau/2.
double ifd_energy(const Field& u, long n, double tau, const PdeParams& p,
                  double history_sum);

/// Damped plane wave
///   psi(t,x) = K e^{-gamma t} e^{i(k.x - delta(t))},
///   delta(t) = |k|^2 t + (beta |K|^2 / (2 gamma)) (e^{-2 gamma t} - 1),
/// an exact solution of the equation for integer mode numbers. k1,k2,k3 are
/// mode indices; the physical wave numbers are k_r * 2*pi/l_r, so the wave is
/// periodic on any box by construction.
struct ExactSolutionParams {
  Complex amplitude{1.0, 0.0};
  int k1 = 1, k2 = 1, k3 = 1;
  PdeParams pde{};
};

/// delta(t); the gamma = 0 limit |k|^2 t - beta |K|^2 t is evaluated
/// analytically (no small-gamma cancellation).
double phase_shift(double t, const ExactSolutionParams& ex, const Grid3& g);

/// psi(t, .) sampled on the grid. Throws if a mode exceeds the grid's
/// resolution limit N_r/2.
Field exact_psi(double t, const ExactSolutionParams& ex, const Grid3& g);

/// Gauge variable u(t, .) = e^{gamma t} psi(t, .); u(0, .) is the initial
/// datum handed to every scheme.
Field exact_u(double t, const ExactSolutionParams& ex, const Grid3& g);

/// (||psi^n - Psi^n||_h, ||psi^n - Psi^n||_{h,inf}) where Psi^n = e^{-gamma t} U^n
/// maps the numerical gauge variable back to the physical wave function.
std::pair<double, double> error_norms(const Field& u_numeric, double t,
                                      const ExactSolutionParams& ex);

/// RM = |(M^n - M^0)/M^0|, RE = |(E^n - E^0)/E^0|. A zero reference throws;
/// report absolute residuals in that case.
std::pair<double, double> relative_residuals(double m_n, double m_0,
                                             double e_n, double e_0);

/// Observed order between two (step-size, error) samples:
/// ln(e1/e2) / ln(tau1/tau2). Step sizes must be distinct and positive,
/// errors positive.
double rate_between(double tau1, double err1, double tau2, double err2);

struct RatePoint {
  double param;  // tau (temporal sweeps) or N (spatial sweeps)
  double err_l2;
  double err_inf;
  std::optional<double> rate_l2;   // vs previous row
  std::optional<double> rate_inf;
};
using RateTable = std::vector<RatePoint>;

/// Tabulates pairwise observed rates for a sweep ordered as given.
RateTable convergence_rate(
    const std::vector<std::array<double, 3>>& param_errl2_errinf);

/// One output record of a time-marching run. err_* are present only when an
/// exact solution is configured.
struct DiagnosticsRow {
  long n = 0;
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double rm = 0.0;
  double re = 0.0;
  std::optional<double> err_l2;
  std::optional<double> err_inf;
};

}  // namespace dnls
