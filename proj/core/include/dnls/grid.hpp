#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dnls {

using Complex = std::complex<double>;

/// Thrown when an operation mixes fields living on different grids.
class GridMismatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform periodic collocation grid on [0,l1] x [0,l2] x [0,l3].
///
/// Each axis has an even number of points N_r >= 2 with spacing h_r = l_r/N_r;
/// the point x_j = j*h_r for j = 0..N_r-1 (the right endpoint is identified
/// with 0). Odd point counts are rejected: the symmetric treatment of the
/// Nyquist mode in the trigonometric interpolant requires even N_r.
class Grid3 {
public:
  Grid3(int n1, int n2, int n3, double l1, double l2, double l3);

  /// Isotropic n^3 grid, default side length 2*pi.
  static Grid3 cube(int n, double l = 2.0 * std::numbers::pi);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n3() const { return n3_; }
  double l1() const { return l1_; }
  double l2() const { return l2_; }
  double l3() const { return l3_; }
  double h1() const { return l1_ / n1_; }
  double h2() const { return l2_ / n2_; }
  double h3() const { return l3_ / n3_; }
  /// Cell volume h1*h2*h3, the weight of every grid sum.
  double cell_volume() const { return h1() * h2() * h3(); }
  /// Fundamental wave numbers 2*pi/l_r.
  double mu1() const { return 2.0 * std::numbers::pi / l1_; }
  double mu2() const { return 2.0 * std::numbers::pi / l2_; }
  double mu3() const { return 2.0 * std::numbers::pi / l3_; }

  std::size_t size() const {
    return static_cast<std::size_t>(n1_) * n2_ * n3_;
  }

  /// Linear index with j1 (x) fastest, then j2, then j3. All operator and
  /// solver code assumes this flattening; it matches the Kronecker ordering
  /// C (x) B (x) A with A acting along x.
  std::size_t index(int j1, int j2, int j3) const {
    return static_cast<std::size_t>(j1) +
           static_cast<std::size_t>(n1_) * (static_cast<std::size_t>(j2) +
                                            static_cast<std::size_t>(n2_) * j3);
  }

  double x1(int j) const { return j * h1(); }
  double x2(int j) const { return j * h2(); }
  double x3(int j) const { return j * h3(); }

  friend bool operator==(const Grid3&, const Grid3&) = default;

private:
  int n1_, n2_, n3_;
  double l1_, l2_, l3_;
};

/// Uniform partition of [0,T] with step tau and T = steps*tau.
/// steps == 0 is allowed (a run that only emits its initial sample).
struct TimeGrid {
  double tau;
  long steps;

  TimeGrid(double tau_, long steps_);
  double final_time() const { return steps * tau; }
  double time_at(long n) const { return n * tau; }
};

/// Complex-valued grid function, stored x-fastest (see Grid3::index).
struct Field {
  Grid3 grid;
  std::vector<Complex> values;

  explicit Field(const Grid3& g) : grid(g), values(g.size()) {}

  std::size_t size() const { return values.size(); }
  Complex& operator[](std::size_t i) { return values[i]; }
  const Complex& operator[](std::size_t i) const { return values[i]; }
  Complex& at(int j1, int j2, int j3) { return values[grid.index(j1, j2, j3)]; }
  const Complex& at(int j1, int j2, int j3) const {
    return values[grid.index(j1, j2, j3)];
  }
};

/// Samples f(x,y,z) at every collocation point.
template <class F>
Field sample_field(const Grid3& g, F&& f) {
  Field u(g);
  for (int j3 = 0; j3 < g.n3(); ++j3)
    for (int j2 = 0; j2 < g.n2(); ++j2)
      for (int j1 = 0; j1 < g.n1(); ++j1)
        u.at(j1, j2, j3) = f(g.x1(j1), g.x2(j2), g.x3(j3));
  return u;
}

/// <U,V>_h = h1 h2 h3 * sum_j U_j * conj(V_j).
Complex inner_product(const Field& u, const Field& v);

/// Discrete L2 norm: sqrt(h_cell * sum |U_j|^2).
double norm_h(const Field& u);

/// Discrete Lp norm (h_cell * sum |U_j|^p)^(1/p), p >= 1 finite.
double norm_hp(const Field& u, double p);

/// Max norm over grid points.
double norm_inf(const Field& u);

/// Finite-difference H1 semi-norm: sqrt of the cell-weighted sum of squared
/// forward differences along all three axes, with periodic wraparound.
double seminorm_1h(const Field& u);
double seminorm_1h_squared(const Field& u);

/// Spectral H1 semi-norm sqrt(<-Lap_h U, U>_h), evaluated as a nonnegative
/// eigenvalue-weighted sum over Fourier coefficients. Quadratic-form values
/// below -1e-12*||U||_h^2 indicate a broken operator and throw.
double seminorm_h(const Field& u);
double seminorm_h_squared(const Field& u);

namespace detail {

/// Neumaier-compensated accumulator; all grid reductions run through this so
/// conservation residuals stay near machine precision and results are
/// independent of optimization-level reassociation.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

void require_same_grid(const Grid3& a, const Grid3& b);
inline void require_same_grid(const Field& a, const Field& b) {
  require_same_grid(a.grid, b.grid);
}

}  // namespace detail

}  // namespace dnls
