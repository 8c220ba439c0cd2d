#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numbers>

#include "dnls/operators.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace dnls;
using dnls::testing::field_rel_diff;
using dnls::testing::plane_wave;
using dnls::testing::random_field;
using dnls::testing::rel_diff;

TEST_CASE("eigenvalue tables on a 4-point axis of length 2pi") {
  Grid3 g = Grid3::cube(4);
  LaplacianEigs e = spectral_eigs(g);

  REQUIRE(e.spectral_x.size() == 4);
  CHECK(e.spectral_x[0] == 0.0);
  CHECK(e.spectral_x[1] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(e.spectral_x[2] == doctest::Approx(-4.0).epsilon(1e-15));  // Nyquist
  CHECK(e.spectral_x[3] == doctest::Approx(-1.0).epsilon(1e-15));

  // sin^2(k pi/4) = {0, 1/2, 1, 1/2}, prefactor 4/h^2 = 16/pi^2
  const double c = 16.0 / (std::numbers::pi * std::numbers::pi);
  CHECK(e.fd_x[0] == 0.0);
  CHECK(e.fd_x[1] == doctest::Approx(-c / 2).epsilon(1e-14));
  CHECK(e.fd_x[2] == doctest::Approx(-c).epsilon(1e-14));
  CHECK(e.fd_x[3] == doctest::Approx(-c / 2).epsilon(1e-14));
}

TEST_CASE("eigenvalue tables: signs and constant mode") {
  Grid3 g(8, 4, 2, 1.0, 3.0, 2.0 * std::numbers::pi);
  LaplacianEigs e = spectral_eigs(g);
  for (const auto* tab : {&e.spectral_x, &e.spectral_y, &e.spectral_z,
                          &e.fd_x, &e.fd_y, &e.fd_z}) {
    CHECK((*tab)[0] == 0.0);
    for (double lam : *tab) CHECK(lam <= 0.0);
  }
  CHECK(e.spectral_x.size() == 8);
  CHECK(e.spectral_y.size() == 4);
  CHECK(e.spectral_z.size() == 2);
}

TEST_CASE("eigenvalue sandwich between the two Laplacians") {
  for (int n : {2, 4, 8, 16}) {
    Grid3 g = Grid3::cube(n);  // l = 2pi
    LaplacianEigs e = spectral_eigs(g);
    const double lower = 4.0 / (std::numbers::pi * std::numbers::pi);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(e.fd_x[k]) <= std::abs(e.spectral_x[k]) * (1 + 1e-14));
      CHECK(lower * std::abs(e.spectral_x[k]) <=
            std::abs(e.fd_x[k]) * (1 + 1e-14) + 1e-300);
    }
  }
}

TEST_CASE("spectral Laplacian annihilates constants and resolves plane waves") {
  Grid3 g = Grid3::cube(8);
  SpectralOps ops(g);

  Field c = sample_field(g, [](double, double, double) {
    return Complex(3.0, -2.0);
  });
  CHECK(norm_inf(ops.laplacian(c)) < 1e-13);

  Field wave = plane_wave(g, 1, 1, 1);
  Field lap = ops.laplacian(wave);
  Field expected(g);
  for (std::size_t i = 0; i < wave.size(); ++i) expected[i] = -3.0 * wave[i];
  CHECK(field_rel_diff(lap, expected) < 1e-12);
}

TEST_CASE("FFT application equals the dense Kronecker operator") {
  const Grid3 grids[] = {Grid3::cube(2), Grid3::cube(4),
                         Grid3(4, 2, 2, 2.0 * std::numbers::pi, 1.0, 3.0)};
  for (const Grid3& g : grids) {
    SpectralOps ops(g);
    auto dense_sp = oracle::dense_spectral_laplacian(g);
    auto dense_fd = oracle::dense_fd_laplacian(g);
    for (unsigned seed = 0; seed < 20; ++seed) {
      Field u = random_field(g, seed);
      Field viaffT = ops.laplacian(u);
      Field viaDense = oracle::from_vector(g, dense_sp * oracle::to_vector(u));
      CHECK(field_rel_diff(viaffT, viaDense) < 1e-12);

      Field fd = apply_fd_laplacian(u);
      Field fdDense = oracle::from_vector(g, dense_fd * oracle::to_vector(u));
      CHECK(field_rel_diff(fd, fdDense) < 1e-12);
    }
  }
}

TEST_CASE("finite-difference stencil on plane waves") {
  Grid3 g = Grid3::cube(8);
  Field c = sample_field(g, [](double, double, double) { return 1.0; });
  CHECK(norm_inf(apply_fd_laplacian(c)) < 1e-13);

  Field wave = plane_wave(g, 1, 0, 0);
  const double h = g.h1();
  const double lam = -(4.0 / (h * h)) * std::pow(std::sin(h / 2), 2);
  Field applied = apply_fd_laplacian(wave);
  Field expected(g);
  for (std::size_t i = 0; i < wave.size(); ++i) expected[i] = lam * wave[i];
  CHECK(field_rel_diff(applied, expected) < 1e-12);
  // matches the eigenvalue table at mode 1
  CHECK(rel_diff(lam, spectral_eigs(g).fd_x[1]) < 1e-14);
}

TEST_CASE("both Laplacians are Hermitian and negative semi-definite") {
  Grid3 g = Grid3::cube(4);
  SpectralOps ops(g);
  for (unsigned seed = 0; seed < 20; ++seed) {
    Field u = random_field(g, seed);
    const double nh = norm_h(u);
    const double m2 = nh * nh;
    Field lap_sp = ops.laplacian(u);
    Field lap_fd = apply_fd_laplacian(u);
    Complex q_sp = inner_product(lap_sp, u);
    Complex q_fd = inner_product(lap_fd, u);
    CHECK(-q_sp.real() >= -1e-12 * m2);
    CHECK(-q_fd.real() >= -1e-12 * m2);
    CHECK(std::abs(q_sp.imag()) <= 1e-12 * m2);
    CHECK(std::abs(q_fd.imag()) <= 1e-12 * m2);
  }
}

TEST_CASE("dense operators: Hermitian, zero row sums, eigenvalues") {
  Grid3 g2 = Grid3::cube(2);
  auto fd2 = oracle::dense_fd_laplacian(g2);
  for (Eigen::Index r = 0; r < fd2.rows(); ++r)
    CHECK(std::abs(fd2.row(r).sum()) < 1e-12);

  Grid3 g = Grid3::cube(4);
  auto sp = oracle::dense_spectral_laplacian(g);
  CHECK((sp - sp.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index r = 0; r < sp.rows(); ++r)
    CHECK(std::abs(sp.row(r).sum()) < 1e-11);

  // spectrum = all sums lambda_x(k1)+lambda_y(k2)+lambda_z(k3)
  LaplacianEigs e = spectral_eigs(g);
  std::vector<double> expected;
  for (double lx : e.spectral_x)
    for (double ly : e.spectral_y)
      for (double lz : e.spectral_z) expected.push_back(lx + ly + lz);
  std::sort(expected.begin(), expected.end());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sp);
  REQUIRE(es.info() == Eigen::Success);
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(std::abs(es.eigenvalues()[static_cast<Eigen::Index>(i)] -
                   expected[i]) < 1e-10);
}

TEST_CASE("dense oracle size guard") {
  Grid3 g(20, 20, 12, 1.0, 1.0, 1.0);  // order 4800 > 4096
  CHECK_THROWS_AS(oracle::dense_spectral_laplacian(g), std::invalid_argument);
  CHECK_THROWS_AS(oracle::dense_fd_laplacian(g), std::invalid_argument);
}

TEST_CASE("free-function apply validates table shapes") {
  Grid3 g = Grid3::cube(4);
  LaplacianEigs wrong = spectral_eigs(Grid3::cube(8));
  Field u = random_field(g, 7);
  CHECK_THROWS_AS(apply_spectral_laplacian(u, wrong), GridMismatchError);
  Field ok = apply_spectral_laplacian(u, spectral_eigs(g));
  CHECK(field_rel_diff(ok, SpectralOps(g).laplacian(u)) < 1e-14);
}
