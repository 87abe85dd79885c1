#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qstab/spectral.hpp"

using namespace qstab;
using qtest::bump_fixture;
using qtest::gaussian_bump;

namespace {

std::complex<double> quad(const CVec& f, const CVec& g, double h) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return h * acc;
}

}  // namespace

TEST_CASE("flat well on (0,pi): eigenvalues approach k^2") {
  const Grid grid(0.0, M_PI, 4000);
  const auto basis = build_basis(grid, Vec::Zero(4000), 5);
  for (int k = 1; k <= 5; ++k) {
    const double rel = std::abs(basis.eigenvalues[k - 1] / (k * k) - 1.0);
    CHECK(rel <= 1e-4);
  }
}

TEST_CASE("constant potential shifts the spectrum and keeps the modes") {
  const Grid grid(0.0, M_PI, 1000);
  const double c = 7.5;
  const auto base = build_basis(grid, Vec::Zero(1000), 6);
  const auto shifted = build_basis(grid, Vec::Constant(1000, c), 6);
  for (int k = 0; k < 6; ++k) {
    CHECK(std::abs(shifted.eigenvalues[k] - base.eigenvalues[k] - c) <= 1e-8);
    CHECK((shifted.eigenvectors.col(k) - base.eigenvectors.col(k)).cwiseAbs().maxCoeff() <=
          1e-8);
  }
}

TEST_CASE("bump potential matches the refined-grid oracle") {
  // self-convergence oracle: the same spectrum on a grid with h/2
  const Grid coarse(0.0, 1.0, 4000), fine(0.0, 1.0, 8000);
  const auto b1 = build_basis(coarse, gaussian_bump(coarse), 12);
  const auto b2 = build_basis(fine, gaussian_bump(fine), 12);
  for (int k = 0; k < 12; ++k) {
    const double rel = std::abs(b1.eigenvalues[k] / b2.eigenvalues[k] - 1.0);
    CHECK(rel <= 1e-5);
  }
}

TEST_CASE("discrete orthonormality of the basis") {
  const auto& fx = bump_fixture();
  const Mat gram = fx.grid.h * (fx.basis.eigenvectors.transpose() * fx.basis.eigenvectors);
  const Mat err = gram - Mat::Identity(fx.basis.k_modes, fx.basis.k_modes);
  CHECK(err.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Rayleigh quotients reproduce the eigenvalues") {
  const auto& fx = bump_fixture();
  for (int k = 0; k < fx.basis.k_modes; ++k) {
    const CVec ek = fx.basis.eigenvectors.col(k).cast<std::complex<double>>();
    const double rq = quad(apply_operator(fx.basis, ek), ek, fx.grid.h).real();
    CHECK(std::abs(rq - fx.basis.eigenvalues[k]) <=
          1e-8 * (1.0 + std::abs(fx.basis.eigenvalues[k])));
  }
}

TEST_CASE("spectrum ordering is strict at the bottom") {
  const auto& fx = bump_fixture();
  CHECK(fx.basis.eigenvalues[1] - fx.basis.eigenvalues[0] > 0.0);
  for (int k = 1; k < fx.basis.k_modes; ++k)
    CHECK(fx.basis.eigenvalues[k] >= fx.basis.eigenvalues[k - 1]);
}

TEST_CASE("eigenvalues converge at second order under grid refinement") {
  const Grid g1(0.0, 1.0, 999), g2(0.0, 1.0, 1999), g3(0.0, 1.0, 3999);
  const auto b1 = build_basis(g1, gaussian_bump(g1), 16);
  const auto b2 = build_basis(g2, gaussian_bump(g2), 16);
  const auto b3 = build_basis(g3, gaussian_bump(g3), 16);
  for (int k = 0; k < 4; ++k) {  // k <= K/4
    const double r = (b1.eigenvalues[k] - b2.eigenvalues[k]) /
                     (b2.eigenvalues[k] - b3.eigenvalues[k]);
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
  }
}

TEST_CASE("to_grid reproduces basis columns") {
  const auto& fx = bump_fixture();
  const CVec grid_vals = to_grid(qtest::unit_mode(fx.basis.k_modes, 1), fx.basis);
  const CVec expect = fx.basis.eigenvectors.col(0).cast<std::complex<double>>();
  CHECK((grid_vals - expect).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("grid round trip is the identity") {
  const auto& fx = bump_fixture();
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const State z = qtest::random_sphere(fx.basis.k_modes, rng);
    const State back = from_grid(to_grid(z, fx.basis), fx.basis);
    CHECK((back.c - z.c).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("Parseval: unit coefficients give unit discrete L2 norm") {
  const auto& fx = bump_fixture();
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 5; ++rep) {
    const State z = qtest::random_sphere(fx.basis.k_modes, rng);
    const CVec vals = to_grid(z, fx.basis);
    const double norm = std::sqrt(quad(vals, vals, fx.grid.h).real());
    CHECK(std::abs(norm - 1.0) <= 1e-10);
  }
}

TEST_CASE("from_grid picks out a basis column") {
  const auto& fx = bump_fixture();
  const State c2 = from_grid(fx.basis.eigenvectors.col(1).cast<std::complex<double>>(),
                             fx.basis);
  for (int k = 0; k < fx.basis.k_modes; ++k) {
    const double expect = (k == 1) ? 1.0 : 0.0;
    CHECK(std::abs(c2.c[k] - expect) <= 1e-12);
  }
}

TEST_CASE("from_grid annihilates modes beyond the truncation") {
  const auto& fx = bump_fixture();
  const int K = fx.basis.k_modes;
  const auto larger = build_basis(fx.grid, gaussian_bump(fx.grid), K + 1);
  const State c = from_grid(larger.eigenvectors.col(K).cast<std::complex<double>>(),
                            fx.basis);
  CHECK(c.c.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("from_grid is linear") {
  const auto& fx = bump_fixture();
  std::mt19937_64 rng(13);
  const CVec f = to_grid(qtest::random_sphere(fx.basis.k_modes, rng), fx.basis);
  const CVec g = to_grid(qtest::random_sphere(fx.basis.k_modes, rng), fx.basis);
  const std::complex<double> a{0.3, -1.1}, b{-0.7, 0.2};
  const State lhs = from_grid(a * f + b * g, fx.basis);
  const CVec rhs = a * from_grid(f, fx.basis).c + b * from_grid(g, fx.basis).c;
  CHECK((lhs.c - rhs).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("sobolev norms of single modes") {
  const auto& fx = bump_fixture();
  const auto n1 = sobolev_norms(qtest::unit_mode(fx.basis.k_modes, 1), fx.basis);
  const double lam1 = fx.basis.eigenvalues[0];
  CHECK(n1.l2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n1.h1_proxy == doctest::Approx(std::sqrt(1.0 + std::abs(lam1))).epsilon(1e-12));
  CHECK(n1.h2_proxy == doctest::Approx(std::sqrt(1.0 + lam1 * lam1)).epsilon(1e-12));
}

TEST_CASE("flat well on (0,pi): ground-state h2 proxy is sqrt(2)") {
  const Grid grid(0.0, M_PI, 4000);
  const auto basis = build_basis(grid, Vec::Zero(4000), 3);
  const auto n = sobolev_norms(qtest::unit_mode(3, 1), basis);
  CHECK(n.h2_proxy == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("norm proxies are ordered when the spectrum is nonnegative") {
  const auto& fx = bump_fixture();
  REQUIRE(fx.basis.eigenvalues[0] >= 0.0);
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    const auto n = sobolev_norms(qtest::random_sphere(fx.basis.k_modes, rng), fx.basis);
    CHECK(n.h2_proxy >= n.h1_proxy);
    CHECK(n.h1_proxy >= n.l2);
    CHECK(n.l2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("basis construction rejects bad input") {
  CHECK_THROWS_AS(Grid(1.0, 0.0, 100), SpecError);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 0), SpecError);
  const Grid grid(0.0, 1.0, 100);
  CHECK_THROWS_AS(build_basis(grid, Vec::Zero(99), 4), SpecError);
  CHECK_THROWS_AS(build_basis(grid, Vec::Zero(100), 101), SpecError);
  CHECK_THROWS_AS(build_basis(grid, Vec::Zero(100), 0), SpecError);
  Vec bad = Vec::Zero(100);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(build_basis(grid, bad, 4), SpecError);
}

TEST_CASE("grid/coefficient transforms reject mismatched sizes") {
  const auto& fx = bump_fixture();
  State wrong;
  wrong.c = CVec::Zero(fx.basis.k_modes + 1);
  CHECK_THROWS_AS(to_grid(wrong, fx.basis), SpecError);
  CHECK_THROWS_AS(from_grid(CVec::Zero(7), fx.basis), SpecError);
}

TEST_CASE("eigenvalue table is a k,lambda_k CSV") {
  const auto& fx = bump_fixture();
  const std::string csv = eigenvalue_csv(fx.basis);
  CHECK(csv.rfind("k,lambda_k\n1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == fx.basis.k_modes + 1);
}
