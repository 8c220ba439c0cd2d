#include "dnls/operators.hpp"

#include <cmath>

namespace dnls {

namespace {

std::vector<double> spectral_axis(int n, double mu) {
  std::vector<double> lam(n);
  for (int k = 0; k < n; ++k) {
    const int m = (k <= n / 2) ? k : k - n;
    lam[k] = -mu * mu * static_cast<double>(m) * m;
  }
  return lam;
}

std::vector<double> fd_axis(int n, double h) {
  std::vector<double> lam(n);
  const double c = -4.0 / (h * h);
  for (int k = 0; k < n; ++k) {
    const double s = std::sin(std::numbers::pi * k / n);
    lam[k] = c * s * s;
  }
  lam[0] = 0.0;  // exact zero for the constant mode
  return lam;
}

}  // namespace

LaplacianEigs spectral_eigs(const Grid3& g) {
  LaplacianEigs e;
  e.spectral_x = spectral_axis(g.n1(), g.mu1());
  e.spectral_y = spectral_axis(g.n2(), g.mu2());
  e.spectral_z = spectral_axis(g.n3(), g.mu3());
  e.fd_x = fd_axis(g.n1(), g.h1());
  e.fd_y = fd_axis(g.n2(), g.h2());
  e.fd_z = fd_axis(g.n3(), g.h3());
  return e;
}

Field SpectralOps::laplacian(const Field& u) const {
  return filter_spectral(u, [](double lam) { return lam; });
}

double SpectralOps::minus_laplacian_form(const Field& u) const {
  detail::require_same_grid(u.grid, grid_);
  std::vector<Complex> hat(u.size());
  fft_.forward(u.values, hat);
  detail::Kahan s;
  std::size_t i = 0;
  for (int k3 = 0; k3 < grid_.n3(); ++k3)
    for (int k2 = 0; k2 < grid_.n2(); ++k2)
      for (int k1 = 0; k1 < grid_.n1(); ++k1, ++i)
        s.add(-(eigs_.spectral_x[k1] + eigs_.spectral_y[k2] +
                eigs_.spectral_z[k3]) *
              std::norm(hat[i]));
  return grid_.cell_volume() / static_cast<double>(u.size()) * s.value();
}

Field apply_spectral_laplacian(const Field& u, const LaplacianEigs& eigs) {
  const Grid3& g = u.grid;
  if (eigs.spectral_x.size() != static_cast<std::size_t>(g.n1()) ||
      eigs.spectral_y.size() != static_cast<std::size_t>(g.n2()) ||
      eigs.spectral_z.size() != static_cast<std::size_t>(g.n3()))
    throw GridMismatchError("eigenvalue tables do not match the field's grid");

  Fft3 fft(g);
  std::vector<Complex> hat(u.size());
  fft.forward(u.values, hat);
  std::size_t i = 0;
  for (int k3 = 0; k3 < g.n3(); ++k3)
    for (int k2 = 0; k2 < g.n2(); ++k2)
      for (int k1 = 0; k1 < g.n1(); ++k1, ++i)
        hat[i] *= eigs.spectral_x[k1] + eigs.spectral_y[k2] +
                  eigs.spectral_z[k3];
  Field w(g);
  fft.inverse(hat, w.values);
  return w;
}

Field apply_fd_laplacian(const Field& u) {
  const Grid3& g = u.grid;
  const double c1 = 1.0 / (g.h1() * g.h1());
  const double c2 = 1.0 / (g.h2() * g.h2());
  const double c3 = 1.0 / (g.h3() * g.h3());
  Field w(g);
  for (int j3 = 0; j3 < g.n3(); ++j3) {
    const int j3p = (j3 + 1) % g.n3(), j3m = (j3 + g.n3() - 1) % g.n3();
    for (int j2 = 0; j2 < g.n2(); ++j2) {
      const int j2p = (j2 + 1) % g.n2(), j2m = (j2 + g.n2() - 1) % g.n2();
      for (int j1 = 0; j1 < g.n1(); ++j1) {
        const int j1p = (j1 + 1) % g.n1(), j1m = (j1 + g.n1() - 1) % g.n1();
        const Complex c = u.at(j1, j2, j3);
        w.at(j1, j2, j3) =
            c1 * (u.at(j1p, j2, j3) - 2.0 * c + u.at(j1m, j2, j3)) +
            c2 * (u.at(j1, j2p, j3) - 2.0 * c + u.at(j1, j2m, j3)) +
            c3 * (u.at(j1, j2, j3p) - 2.0 * c + u.at(j1, j2, j3m));
      }
    }
  }
  return w;
}

}  // namespace dnls
