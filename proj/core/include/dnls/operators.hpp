#pragma once

#include <utility>
#include <vector>

#include "dnls/fft.hpp"
#include "dnls/grid.hpp"

namespace dnls {

/// Per-axis eigenvalue tables of the two discrete Laplacians, indexed by the
/// DFT output index k = 0..N_r-1.
///
///   spectral_*[k] = -mu_r^2 * m(k)^2,  m(k) = k for k <= N/2, k-N above
///                   (the Nyquist entry keeps -mu_r^2 (N/2)^2: the second
///                   derivative is even, no Nyquist zeroing),
///   fd_*[k]       = -(4/h_r^2) sin^2(k*pi/N_r).
///
/// Every entry is <= 0 and entry 0 is exactly 0 (constant mode).
struct LaplacianEigs {
  std::vector<double> spectral_x, spectral_y, spectral_z;
  std::vector<double> fd_x, fd_y, fd_z;
};

LaplacianEigs spectral_eigs(const Grid3& g);

/// FFT-based application of the spectral Laplacian and of arbitrary Fourier
/// multipliers in its eigenbasis. One instance per grid; methods are pure and
/// safe to call concurrently from different threads.
class SpectralOps {
public:
  explicit SpectralOps(const Grid3& g)
      : grid_(g), eigs_(spectral_eigs(g)), fft_(g) {}

  const Grid3& grid() const { return grid_; }
  const LaplacianEigs& eigs() const { return eigs_; }
  const Fft3& fft() const { return fft_; }

  /// w = F^-1[(lx(k1)+ly(k2)+lz(k3)) F u] with the spectral tables; equals
  /// the dense Kronecker-sum operator applied to u.
  Field laplacian(const Field& u) const;

  /// <-Lap_h u, u>_h as the eigenvalue-weighted Fourier sum
  /// (h_cell/Ntot) * sum_k (-lambda_k) |u_hat_k|^2; exactly real and >= 0.
  double minus_laplacian_form(const Field& u) const;

  /// w = F^-1[ g(lambda(k)) .* F u ] where lambda is the per-mode sum of the
  /// chosen per-axis table. g maps a real eigenvalue to a complex multiplier.
  template <class G>
  Field filter_spectral(const Field& u, G&& g) const {
    return filter(u, eigs_.spectral_x, eigs_.spectral_y, eigs_.spectral_z,
                  std::forward<G>(g));
  }
  template <class G>
  Field filter_fd(const Field& u, G&& g) const {
    return filter(u, eigs_.fd_x, eigs_.fd_y, eigs_.fd_z, std::forward<G>(g));
  }

private:
  template <class G>
  Field filter(const Field& u, const std::vector<double>& lx,
               const std::vector<double>& ly, const std::vector<double>& lz,
               G&& g) const {
    detail::require_same_grid(u.grid, grid_);
    std::vector<Complex> hat(u.size());
    fft_.forward(u.values, hat);
    std::size_t i = 0;
    for (int k3 = 0; k3 < grid_.n3(); ++k3)
      for (int k2 = 0; k2 < grid_.n2(); ++k2)
        for (int k1 = 0; k1 < grid_.n1(); ++k1, ++i)
          hat[i] *= g(lx[k1] + ly[k2] + lz[k3]);
    Field w(grid_);
    fft_.inverse(hat, w.values);
    return w;
  }

  Grid3 grid_;
  LaplacianEigs eigs_;
  Fft3 fft_;
};

/// Spectral Laplacian through caller-supplied eigenvalue tables (the tables
/// must come from spectral_eigs of u's grid).
Field apply_spectral_laplacian(const Field& u, const LaplacianEigs& eigs);

/// Second-order 7-point periodic stencil
/// (U_{j+1} - 2U_j + U_{j-1})/h^2 summed over the three axes.
Field apply_fd_laplacian(const Field& u);

}  // namespace dnls
