#include "qstab/operators.hpp"

#include <Eigen/Eigenvalues>

namespace qstab {

ControlOperator assemble_control(const Vec& q_values, const SpectralBasis& basis) {
  const int m = basis.grid.m_points;
  const int K = basis.k_modes;
  if (q_values.size() != m)
    throw SpecError("assemble_control: control has " + std::to_string(q_values.size()) +
                    " samples, grid has " + std::to_string(m) + " nodes");
  if (!q_values.allFinite())
    throw SpecError("assemble_control: control contains non-finite entries");

  ControlOperator op;
  op.grid_values = q_values;
  Mat weighted = q_values.asDiagonal() * basis.eigenvectors;      // m x K
  Mat M = basis.grid.h * (basis.eigenvectors.transpose() * weighted);
  op.q_matrix = 0.5 * (M + M.transpose());

  Eigen::SelfAdjointEigenSolver<Mat> es(op.q_matrix);
  if (es.info() != Eigen::Success)
    throw NumericError("assemble_control: eigendecomposition of the control matrix failed");
  op.q_eigenvalues = es.eigenvalues();
  // one Newton polish, R <- R (3I - R^T R)/2, tightens orthogonality so the
  // rotate/phase/rotate-back exponential stays unitary over long runs
  Mat R = es.eigenvectors();
  op.q_eigenvectors = R * (1.5 * Mat::Identity(K, K) - 0.5 * (R.transpose() * R));

  const Mat rebuilt = op.q_eigenvectors *
                      op.q_eigenvalues.asDiagonal() *
                      op.q_eigenvectors.transpose();
  if ((rebuilt - op.q_matrix).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericError("assemble_control: eigendecomposition does not reconstruct the "
                       "control matrix to 1e-10");
  return op;
}

CVec apply_A(const State& state, const SpectralBasis& basis) {
  if (state.c.size() != basis.k_modes)
    throw SpecError("apply_A: coefficient/basis size mismatch");
  CVec out(state.c.size());
  for (int k = 0; k < basis.k_modes; ++k) out[k] = basis.eigenvalues[k] * state.c[k];
  return out;
}

CVec project_p1(const State& state) {
  CVec out = state.c;
  if (out.size() > 0) out[0] = 0.0;
  return out;
}

CVec apply_q(const ControlOperator& control, const CVec& c) {
  if (c.size() != control.q_matrix.rows())
    throw SpecError("apply_q: coefficient/operator size mismatch");
  Vec re = control.q_matrix * c.real().matrix();
  Vec im = control.q_matrix * c.imag().matrix();
  CVec out(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

}  // namespace qstab
