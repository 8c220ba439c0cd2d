#include "dnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace dnls {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// The FFTW planner is not thread-safe; executing existing plans is. Plans are
// created once per grid shape with FFTW_UNALIGNED so they run on any buffer,
// and kept for the life of the process.
PlanPair& plans_for(int n1, int n2, int n3) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.try_emplace({n1, n2, n3});
  if (inserted) {
    const std::size_t n = static_cast<std::size_t>(n1) * n2 * n3;
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    // x (n1) is the contiguous axis, so it is FFTW's last dimension.
    it->second.fwd = fftw_plan_dft_3d(n3, n2, n1, a, b, FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    it->second.bwd = fftw_plan_dft_3d(n3, n2, n1, a, b, FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
  }
  return it->second;
}

fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

Fft3::Fft3(const Grid3& g) : n1_(g.n1()), n2_(g.n2()), n3_(g.n3()) {
  PlanPair& p = plans_for(n1_, n2_, n3_);
  fwd_ = p.fwd;
  bwd_ = p.bwd;
}

void Fft3::forward(std::span<const Complex> in, std::span<Complex> out) const {
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(in.data()),
                   as_fftw(out.data()));
}

void Fft3::inverse(std::span<const Complex> in, std::span<Complex> out) const {
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(in.data()),
                   as_fftw(out.data()));
  const double scale =
      1.0 / (static_cast<double>(n1_) * n2_ * n3_);
  for (Complex& z : out) z *= scale;
}

}  // namespace dnls
