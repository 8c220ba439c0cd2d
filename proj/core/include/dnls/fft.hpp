#pragma once

#include <span>

#include "dnls/grid.hpp"

namespace dnls {

/// Unnormalized forward / 1/(N1*N2*N3)-normalized inverse 3-D complex DFT on
/// the x-fastest layout (forward kernel e^{-2*pi*i*k.j/N}).
///
/// Plans are cached process-wide per grid shape, so construction is cheap
/// after first use; execution is thread-safe and deterministic (plans are
/// created with FFTW_ESTIMATE, never measured).
class Fft3 {
public:
  explicit Fft3(const Grid3& g);

  /// out_k = sum_j in_j e^{-2 pi i k.j/N}; in and out must be distinct
  /// buffers of length grid size.
  void forward(std::span<const Complex> in, std::span<Complex> out) const;

  /// Inverse of forward(), including the 1/(N1*N2*N3) factor.
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;

private:
  int n1_, n2_, n3_;
  void* fwd_;  // fftw_plan, non-owning (cache-owned)
  void* bwd_;
};

}  // namespace dnls
