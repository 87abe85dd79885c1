#pragma once

// Spectral frame for the operator A = -Δ + V on an interval (a,b) with
// homogeneous Dirichlet boundary conditions.
//
// The interval is discretized by second-order central finite differences on a
// uniform grid of interior nodes x_i = a + i*h, i = 1..m, h = (b-a)/(m+1).
// A becomes the symmetric tridiagonal matrix
//
//     T = tridiag(-1/h^2, 2/h^2 + V(x_i), -1/h^2),
//
// whose lowest k_modes eigenpairs (λ_k, e_k) define the computational basis.
// All inner products are the discrete L2 pairing <f,g> = h * Σ_i f_i conj(g_i)
// (trapezoidal rule with zero boundary values), under which T is self-adjoint
// and its eigenvectors are exactly orthogonal.
//
// States are truncated coefficient vectors c_k = <z, e_k>.

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "qstab/errors.hpp"

namespace qstab {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;

struct Grid {
  double a = 0.0;       // left endpoint
  double b = 1.0;       // right endpoint, b > a
  int m_points = 0;     // number of interior nodes
  double h = 0.0;       // spacing (b-a)/(m_points+1)

  Grid() = default;
  Grid(double a_, double b_, int m) : a(a_), b(b_), m_points(m) {
    if (!(b > a)) throw SpecError("grid: require b > a");
    if (m < 1) throw SpecError("grid: require m_points >= 1");
    h = (b - a) / (m + 1);
  }

  // interior node x_i for i = 0..m_points-1
  double x(int i) const { return a + (i + 1) * h; }
  Vec nodes() const {
    Vec xs(m_points);
    for (int i = 0; i < m_points; ++i) xs[i] = x(i);
    return xs;
  }
};

// Wavefunction in the truncated eigenbasis, c_k = <z, e_k>.
// On the L2 sphere S, Σ|c_k|^2 = 1.
struct State {
  CVec c;
  double norm() const { return c.norm(); }
};

// Throws NumericError unless | ||z|| - 1 | <= 1e-9.
void require_sphere(const State& z, const char* where);

struct SpectralBasis {
  Grid grid;
  int k_modes = 0;
  Vec eigenvalues;    // λ_1 < λ_2 <= ... <= λ_K, ascending
  Mat eigenvectors;   // m_points x k_modes; column k holds e_k at the nodes,
                      // discrete-L2 normalized, first nonzero component > 0
  Vec potential;      // V at the nodes (kept for grid-space operator applies)
};

// Computes the lowest k_modes eigenpairs of T. Throws SpecError on bad sizes,
// NumericError if the eigensolver fails or λ_2 - λ_1 <= 1e-12 (the ground
// state must be simple).
SpectralBasis build_basis(const Grid& grid, const Vec& potential, int k_modes);

// Σ_k c_k e_k evaluated at the grid nodes.
CVec to_grid(const State& state, const SpectralBasis& basis);

// Truncated projection c_k = h * Σ_i values_i e_k(x_i).
State from_grid(const CVec& values, const SpectralBasis& basis);

// Applies the discrete operator T = -Δ + V to grid values (Dirichlet:
// values vanish beyond both ends).
CVec apply_operator(const SpectralBasis& basis, const CVec& grid_values);

struct SobolevNorms {
  double l2 = 0.0;
  double h1_proxy = 0.0;   // graph norm of A^(1/2): sqrt(Σ (1+|λ_k|)|c_k|^2)
  double h2_proxy = 0.0;   // graph norm of A:       sqrt(Σ (1+λ_k^2)|c_k|^2)
};

// Graph-norm proxies for the H1/H2 norms (equivalent for bounded V).
SobolevNorms sobolev_norms(const State& state, const SpectralBasis& basis);

// CSV table "k,lambda_k" of the retained spectrum.
std::string eigenvalue_csv(const SpectralBasis& basis);

}  // namespace qstab
