#pragma once

// Control operator Q (a real multiplication operator) expressed in the
// eigenbasis, plus the diagonal action of A = -Δ + V and the projector
// P_1 z = z - <z,e_1> e_1 onto the complement of the ground state.

#include <Eigen/Dense>

#include "qstab/spectral.hpp"

namespace qstab {

struct ControlOperator {
  Vec grid_values;    // Q at the interior nodes
  Mat q_matrix;       // K x K, Q_jk = <Q e_j, e_k>, symmetric
  Vec q_eigenvalues;  // spectrum of q_matrix, ascending
  Mat q_eigenvectors; // orthogonal factor R with q_matrix = R diag R^T;
                      // precomputed once so exp(-i u t Q) is a rotation,
                      // a diagonal phase, and a rotation back
};

// Q_jk = h * Σ_i Q(x_i) e_j(x_i) e_k(x_i), symmetrized as (M + M^T)/2 before
// the eigendecomposition. Throws SpecError on size mismatch, NumericError if
// the eigendecomposition fails to reconstruct q_matrix to 1e-10.
ControlOperator assemble_control(const Vec& q_values, const SpectralBasis& basis);

// (A z)_k = λ_k c_k. Unnormalized coefficient vector.
CVec apply_A(const State& state, const SpectralBasis& basis);

// (P_1 z)_k: zeroes the first coefficient, leaves the rest.
CVec project_p1(const State& state);

// q_matrix * c for complex c (two real matvecs).
CVec apply_q(const ControlOperator& control, const CVec& c);

}  // namespace qstab
