#include "qstab/feedback.hpp"

#include <cmath>
#include <complex>

namespace qstab {

namespace {

using Cx = std::complex<double>;

// <f,g> = h * Σ f_i conj(g_i)
Cx quad(const CVec& f, const CVec& g, double h) {
  Cx acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return h * acc;
}

Cx quad(const CVec& f, const Vec& g, double h) {
  Cx acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) acc += f[i] * g[i];
  return h * acc;
}

}  // namespace

double lyapunov(const State& state, const SpectralBasis& basis,
                const FeedbackParams& params) {
  require_sphere(state, "lyapunov");
  if (state.c.size() != basis.k_modes)
    throw SpecError("lyapunov: coefficient/basis size mismatch");
  double tail = 0.0;
  for (int k = 1; k < basis.k_modes; ++k) {
    const double lam = basis.eigenvalues[k];
    tail += lam * lam * std::norm(state.c[k]);
  }
  return params.alpha * tail + 1.0 - std::norm(state.c[0]);
}

double feedback(const State& state, const SpectralBasis& basis,
                const ControlOperator& control, const FeedbackParams& params) {
  require_sphere(state, "feedback");
  if (state.c.size() != basis.k_modes)
    throw SpecError("feedback: coefficient/basis size mismatch");
  const CVec d = apply_q(control, state.c);
  Cx acc = 0.0;
  for (int k = 1; k < basis.k_modes; ++k) {
    const double lam = basis.eigenvalues[k];
    acc += lam * lam * d[k] * std::conj(state.c[k]);
  }
  acc = params.alpha * acc - d[0] * std::conj(state.c[0]);
  return -params.delta * acc.imag();
}

ControlDerivatives control_derivatives(const Vec& q_values, const Grid& grid,
                                       double q_left, double q_right) {
  const int m = grid.m_points;
  if (q_values.size() != m)
    throw SpecError("control_derivatives: sample/grid size mismatch");
  ControlDerivatives d;
  d.dq.resize(m);
  d.ddq.resize(m);
  const double h = grid.h;
  auto at = [&](int i) {
    if (i < 0) return q_left;
    if (i >= m) return q_right;
    return q_values[i];
  };
  for (int i = 0; i < m; ++i) {
    d.dq[i] = (at(i + 1) - at(i - 1)) / (2.0 * h);
    d.ddq[i] = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
  }
  return d;
}

double feedback_tilde(const State& state, const SpectralBasis& basis,
                      const ControlOperator& control,
                      const FeedbackParams& params,
                      const ControlDerivatives& derivs) {
  require_sphere(state, "feedback_tilde");
  const int m = basis.grid.m_points;
  const double h = basis.grid.h;
  if (derivs.dq.size() != m || derivs.ddq.size() != m)
    throw SpecError("feedback_tilde: derivative samples do not match the grid");

  const CVec zg = to_grid(state, basis);
  const Vec e1 = basis.eigenvectors.col(0);
  CVec qz(m);
  for (int i = 0; i < m; ++i) qz[i] = control.grid_values[i] * zg[i];

  const Cx b1 = quad(qz, e1, h);  // <Qz, e_1>
  const Cx c1 = quad(zg, e1, h);  // <z, e_1>

  CVec p1qz = qz;
  for (int i = 0; i < m; ++i) p1qz[i] -= b1 * e1[i];

  const CVec t_p1qz = apply_operator(basis, p1qz);
  const CVec t_e1 = apply_operator(basis, e1.cast<Cx>());
  const CVec t_z = apply_operator(basis, zg);

  // -2 (dQ)(dz) - (ddQ) z with the same centered stencil (z = 0 beyond ends)
  CVec comm(m);
  const double inv2h = 1.0 / (2.0 * h);
  for (int i = 0; i < m; ++i) {
    const Cx zm = (i > 0) ? zg[i - 1] : Cx(0.0);
    const Cx zp = (i + 1 < m) ? zg[i + 1] : Cx(0.0);
    const Cx dz = (zp - zm) * inv2h;
    comm[i] = -2.0 * derivs.dq[i] * dz - derivs.ddq[i] * zg[i];
  }

  CVec neg_c1_te1(m), neg_b1_te1(m);
  for (int i = 0; i < m; ++i) {
    neg_c1_te1[i] = -c1 * t_e1[i];
    neg_b1_te1[i] = -b1 * t_e1[i];
  }

  const Cx term1 = quad(t_p1qz, neg_c1_te1, h);
  const Cx term2 = quad(neg_b1_te1, t_z, h);
  const Cx term3 = quad(comm, t_z, h);
  const Cx term4 = b1 * std::conj(c1);

  const Cx acc = params.alpha * (term1 + term2 + term3) - term4;
  return -params.delta * acc.imag();
}

TargetDistance distance_to_target(const State& state, const SpectralBasis& basis) {
  require_sphere(state, "distance_to_target");
  if (state.c.size() != basis.k_modes)
    throw SpecError("distance_to_target: coefficient/basis size mismatch");
  TargetDistance d;
  const Cx c1 = state.c[0];
  const double a1 = std::abs(c1);
  d.overlap = a1 * a1;
  d.l2 = std::sqrt(std::max(0.0, 2.0 - 2.0 * a1));
  // phase-aligned difference: w_1 = (|c_1| - 1) e^{i θ*}, w_k = c_k otherwise
  double s = (1.0 + std::abs(basis.eigenvalues[0])) * (1.0 - a1) * (1.0 - a1);
  for (int k = 1; k < basis.k_modes; ++k)
    s += (1.0 + std::abs(basis.eigenvalues[k])) * std::norm(state.c[k]);
  d.h1 = std::sqrt(s);
  return d;
}

double alpha_star(const State& state0, const SpectralBasis& basis) {
  require_sphere(state0, "alpha_star");
  if (state0.c.size() != basis.k_modes)
    throw SpecError("alpha_star: coefficient/basis size mismatch");
  const double p1 = std::norm(state0.c[0]);
  if (p1 <= 0.0)
    throw NumericError("alpha_star: <z0,e_1> = 0, the condition V(z0) < 1 cannot hold");
  double tail = 0.0;
  for (int k = 1; k < basis.k_modes; ++k) {
    const double lam = basis.eigenvalues[k];
    tail += lam * lam * std::norm(state0.c[k]);
  }
  if (tail <= 0.0)
    throw NumericError("alpha_star: z0 is already on the target circle");
  return p1 / tail;
}

}  // namespace qstab
