#include "qstab/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace qstab {

void require_sphere(const State& z, const char* where) {
  const double n = z.norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw NumericError(std::string(where) + ": state is not on the unit sphere (||z|| = " +
                       std::to_string(n) + ")");
}

namespace {

// Mixed real-matrix x complex-vector product.
template <typename MatExpr>
CVec apply_real(const MatExpr& M, const CVec& v) {
  Vec re = M * v.real().matrix();
  Vec im = M * v.imag().matrix();
  CVec out(re.size());
  for (Eigen::Index i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

}  // namespace

SpectralBasis build_basis(const Grid& grid, const Vec& potential, int k_modes) {
  const int m = grid.m_points;
  if (potential.size() != m)
    throw SpecError("build_basis: potential has " + std::to_string(potential.size()) +
                    " samples, grid has " + std::to_string(m) + " nodes");
  if (k_modes < 1 || k_modes > m)
    throw SpecError("build_basis: require 1 <= k_modes <= m_points");
  if (!potential.allFinite())
    throw SpecError("build_basis: potential contains non-finite entries");

  const double inv_h2 = 1.0 / (grid.h * grid.h);
  std::vector<double> diag(m), off(std::max(m - 1, 1));
  for (int i = 0; i < m; ++i) diag[i] = 2.0 * inv_h2 + potential[i];
  for (int i = 0; i + 1 < m; ++i) off[i] = -inv_h2;

  // one extra eigenvalue (when available) to certify that λ_1 is simple
  const int k_solve = std::min(k_modes + 1, m);
  std::vector<double> w(m);
  Mat z(m, k_solve);
  std::vector<lapack_int> isuppz(2 * std::max(k_solve, 1));
  lapack_int found = 0;
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', m, diag.data(), off.data(),
                                   0.0, 0.0, 1, k_solve, 0.0, &found, w.data(), z.data(),
                                   m, isuppz.data());
  if (info != 0)
    throw NumericError("build_basis: eigensolver failed to converge (dstevr info = " +
                       std::to_string(info) + ")");
  if (found < k_solve)
    throw NumericError("build_basis: eigensolver returned " + std::to_string(found) +
                       " of " + std::to_string(k_solve) + " requested eigenpairs");
  if (k_solve >= 2 && w[1] - w[0] <= 1e-12)
    throw NumericError("build_basis: ground state is degenerate (lambda_2 - lambda_1 = " +
                       std::to_string(w[1] - w[0]) + ")");

  SpectralBasis basis;
  basis.grid = grid;
  basis.k_modes = k_modes;
  basis.potential = potential;
  basis.eigenvalues = Eigen::Map<Vec>(w.data(), k_modes);
  basis.eigenvectors = z.leftCols(k_modes);

  // discrete-L2 normalization and the sign convention: the first component
  // above 1e-12 * max|e_k| is made positive
  const double scale = 1.0 / std::sqrt(grid.h);
  for (int k = 0; k < k_modes; ++k) {
    auto col = basis.eigenvectors.col(k);
    col *= scale;
    const double thresh = 1e-12 * col.cwiseAbs().maxCoeff();
    for (int i = 0; i < m; ++i) {
      if (std::abs(col[i]) > thresh) {
        if (col[i] < 0.0) col = -col;
        break;
      }
    }
  }
  return basis;
}

CVec to_grid(const State& state, const SpectralBasis& basis) {
  if (state.c.size() != basis.k_modes)
    throw SpecError("to_grid: state has " + std::to_string(state.c.size()) +
                    " coefficients, basis has " + std::to_string(basis.k_modes) + " modes");
  return apply_real(basis.eigenvectors, state.c);
}

State from_grid(const CVec& values, const SpectralBasis& basis) {
  if (values.size() != basis.grid.m_points)
    throw SpecError("from_grid: values have " + std::to_string(values.size()) +
                    " samples, grid has " + std::to_string(basis.grid.m_points) + " nodes");
  State out;
  out.c = basis.grid.h * apply_real(basis.eigenvectors.transpose(), values);
  return out;
}

CVec apply_operator(const SpectralBasis& basis, const CVec& grid_values) {
  const int m = basis.grid.m_points;
  if (grid_values.size() != m)
    throw SpecError("apply_operator: expected " + std::to_string(m) + " grid values");
  const double inv_h2 = 1.0 / (basis.grid.h * basis.grid.h);
  CVec out(m);
  for (int i = 0; i < m; ++i) {
    std::complex<double> acc = (2.0 * inv_h2 + basis.potential[i]) * grid_values[i];
    if (i > 0) acc -= inv_h2 * grid_values[i - 1];
    if (i + 1 < m) acc -= inv_h2 * grid_values[i + 1];
    out[i] = acc;
  }
  return out;
}

SobolevNorms sobolev_norms(const State& state, const SpectralBasis& basis) {
  if (state.c.size() != basis.k_modes)
    throw SpecError("sobolev_norms: coefficient/basis size mismatch");
  SobolevNorms n;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < basis.k_modes; ++k) {
    const double p = std::norm(state.c[k]);
    const double lam = basis.eigenvalues[k];
    s0 += p;
    s1 += (1.0 + std::abs(lam)) * p;
    s2 += (1.0 + lam * lam) * p;
  }
  n.l2 = std::sqrt(s0);
  n.h1_proxy = std::sqrt(s1);
  n.h2_proxy = std::sqrt(s2);
  return n;
}

std::string eigenvalue_csv(const SpectralBasis& basis) {
  std::string out = "k,lambda_k\n";
  char buf[64];
  for (int k = 0; k < basis.k_modes; ++k) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", k + 1, basis.eigenvalues[k]);
    out += buf;
  }
  return out;
}

}  // namespace qstab
