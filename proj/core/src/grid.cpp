#include "dnls/grid.hpp"

#include <cmath>
#include <string>

#include "dnls/operators.hpp"

namespace dnls {

namespace {

void check_axis(int n, double l, const char* name) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(std::string("grid count ") + name +
                                " must be even and >= 2, got " +
                                std::to_string(n));
  if (!(l > 0.0) || !std::isfinite(l))
    throw std::invalid_argument(std::string("grid length ") + name +
                                " must be positive and finite");
}

}  // namespace

Grid3::Grid3(int n1, int n2, int n3, double l1, double l2, double l3)
    : n1_(n1), n2_(n2), n3_(n3), l1_(l1), l2_(l2), l3_(l3) {
  check_axis(n1, l1, "N1");
  check_axis(n2, l2, "N2");
  check_axis(n3, l3, "N3");
}

Grid3 Grid3::cube(int n, double l) { return Grid3(n, n, n, l, l, l); }

TimeGrid::TimeGrid(double tau_, long steps_) : tau(tau_), steps(steps_) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("time step must be positive and finite");
  if (steps < 0) throw std::invalid_argument("step count must be >= 0");
}

namespace detail {

void require_same_grid(const Grid3& a, const Grid3& b) {
  if (!(a == b)) throw GridMismatchError("fields live on different grids");
}

}  // namespace detail

Complex inner_product(const Field& u, const Field& v) {
  detail::require_same_grid(u, v);
  detail::Kahan re, im;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex p = u[i] * std::conj(v[i]);
    re.add(p.real());
    im.add(p.imag());
  }
  const double w = u.grid.cell_volume();
  return {w * re.value(), w * im.value()};
}

double norm_h(const Field& u) {
  detail::Kahan s;
  for (const Complex& z : u.values) s.add(std::norm(z));
  return std::sqrt(u.grid.cell_volume() * s.value());
}

double norm_hp(const Field& u, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("norm_hp requires finite p >= 1");
  detail::Kahan s;
  for (const Complex& z : u.values) s.add(std::pow(std::abs(z), p));
  return std::pow(u.grid.cell_volume() * s.value(), 1.0 / p);
}

double norm_inf(const Field& u) {
  double m = 0.0;
  for (const Complex& z : u.values) m = std::max(m, std::abs(z));
  return m;
}

double seminorm_1h_squared(const Field& u) {
  const Grid3& g = u.grid;
  const double ih1 = 1.0 / g.h1(), ih2 = 1.0 / g.h2(), ih3 = 1.0 / g.h3();
  detail::Kahan s;
  for (int j3 = 0; j3 < g.n3(); ++j3) {
    const int j3p = (j3 + 1) % g.n3();
    for (int j2 = 0; j2 < g.n2(); ++j2) {
      const int j2p = (j2 + 1) % g.n2();
      for (int j1 = 0; j1 < g.n1(); ++j1) {
        const int j1p = (j1 + 1) % g.n1();
        const Complex c = u.at(j1, j2, j3);
        s.add(std::norm((u.at(j1p, j2, j3) - c) * ih1));
        s.add(std::norm((u.at(j1, j2p, j3) - c) * ih2));
        s.add(std::norm((u.at(j1, j2, j3p) - c) * ih3));
      }
    }
  }
  return g.cell_volume() * s.value();
}

double seminorm_1h(const Field& u) { return std::sqrt(seminorm_1h_squared(u)); }

double seminorm_h_squared(const Field& u) {
  return SpectralOps(u.grid).minus_laplacian_form(u);
}

double seminorm_h(const Field& u) { return std::sqrt(seminorm_h_squared(u)); }

}  // namespace dnls
