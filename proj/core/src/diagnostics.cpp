#include "dnls/diagnostics.hpp"

#include <cmath>
#include <string>

namespace dnls {

void validate(const PdeParams& p) {
  if (!std::isfinite(p.beta))
    throw std::invalid_argument("beta must be finite");
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma))
    throw std::invalid_argument("gamma must be finite and >= 0");
}

double mass(const Field& u) {
  detail::Kahan s;
  for (const Complex& z : u.values) s.add(std::norm(z));
  return u.grid.cell_volume() * s.value();
}

double cross_quartic_sum(const Field& a, const Field& b) {
  detail::require_same_grid(a, b);
  detail::Kahan s;
  for (std::size_t i = 0; i < a.size(); ++i)
    s.add(std::norm(a[i]) * std::norm(b[i]));
  return a.grid.cell_volume() * s.value();
}

double licfp_energy(const Field& u_next, const Field& u_cur, double t_n,
                    const PdeParams& p, double history_sum,
                    const SpectralOps& ops) {
  const double grad2 = 0.5 * ops.minus_laplacian_form(u_next) +
                       0.5 * ops.minus_laplacian_form(u_cur);
  const double quartic = 0.5 * p.beta * std::exp(-2.0 * p.gamma * t_n) *
                         cross_quartic_sum(u_cur, u_next);
  return grad2 - quartic - history_sum;
}

double ifd_energy(const Field& u, long n, double tau, const PdeParams& p,
                  double history_sum) {
  const double t_half = (static_cast<double>(n) - 0.5) * tau;
  const double quartic = 0.5 * p.beta * std::exp(-2.0 * p.gamma * t_half) *
                         cross_quartic_sum(u, u);
  return seminorm_1h_squared(u) - quartic - history_sum;
}

namespace {

void check_resolvable(const ExactSolutionParams& ex, const Grid3& g) {
  if (2 * std::abs(ex.k1) > g.n1() || 2 * std::abs(ex.k2) > g.n2() ||
      2 * std::abs(ex.k3) > g.n3())
    throw std::invalid_argument(
        "wave mode exceeds the grid resolution limit N/2 (k=(" +
        std::to_string(ex.k1) + "," + std::to_string(ex.k2) + "," +
        std::to_string(ex.k3) + "))");
}

}  // namespace

double phase_shift(double t, const ExactSolutionParams& ex, const Grid3& g) {
  const double kx = ex.k1 * g.mu1();
  const double ky = ex.k2 * g.mu2();
  const double kz = ex.k3 * g.mu3();
  const double k2 = kx * kx + ky * ky + kz * kz;
  const double amp2 = std::norm(ex.amplitude);
  if (ex.pde.gamma == 0.0) return (k2 - ex.pde.beta * amp2) * t;
  return k2 * t + ex.pde.beta * amp2 / (2.0 * ex.pde.gamma) *
                      std::expm1(-2.0 * ex.pde.gamma * t);
}

Field exact_u(double t, const ExactSolutionParams& ex, const Grid3& g) {
  validate(ex.pde);
  check_resolvable(ex, g);
  const double kx = ex.k1 * g.mu1();
  const double ky = ex.k2 * g.mu2();
  const double kz = ex.k3 * g.mu3();
  const double delta = phase_shift(t, ex, g);
  return sample_field(g, [&](double x, double y, double z) {
    return ex.amplitude *
           std::exp(Complex(0.0, kx * x + ky * y + kz * z - delta));
  });
}

Field exact_psi(double t, const ExactSolutionParams& ex, const Grid3& g) {
  Field u = exact_u(t, ex, g);
  const double decay = std::exp(-ex.pde.gamma * t);
  for (Complex& z : u.values) z *= decay;
  return u;
}

std::pair<double, double> error_norms(const Field& u_numeric, double t,
                                      const ExactSolutionParams& ex) {
  Field diff = exact_psi(t, ex, u_numeric.grid);
  const double decay = std::exp(-ex.pde.gamma * t);
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] -= decay * u_numeric[i];
  return {norm_h(diff), norm_inf(diff)};
}

std::pair<double, double> relative_residuals(double m_n, double m_0,
                                             double e_n, double e_0) {
  if (m_0 == 0.0 || e_0 == 0.0)
    throw std::domain_error(
        "zero reference mass or energy: relative residuals are undefined, "
        "report absolute residuals instead");
  return {std::abs((m_n - m_0) / m_0), std::abs((e_n - e_0) / e_0)};
}

double rate_between(double tau1, double err1, double tau2, double err2) {
  if (!(tau1 > 0.0) || !(tau2 > 0.0) || tau1 == tau2)
    throw std::domain_error("rate requires distinct positive step sizes");
  if (!(err1 > 0.0) || !(err2 > 0.0))
    throw std::domain_error("rate requires positive errors");
  return std::log(err1 / err2) / std::log(tau1 / tau2);
}

RateTable convergence_rate(
    const std::vector<std::array<double, 3>>& param_errl2_errinf) {
  RateTable table;
  table.reserve(param_errl2_errinf.size());
  for (const auto& r : param_errl2_errinf) {
    RatePoint pt{r[0], r[1], r[2], std::nullopt, std::nullopt};
    if (!table.empty()) {
      const RatePoint& prev = table.back();
      pt.rate_l2 = rate_between(prev.param, prev.err_l2, pt.param, pt.err_l2);
      pt.rate_inf =
          rate_between(prev.param, prev.err_inf, pt.param, pt.err_inf);
    }
    table.push_back(pt);
  }
  return table;
}

}  // namespace dnls
