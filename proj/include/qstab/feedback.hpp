#pragma once

// Lyapunov function and feedback law for ground-state stabilization of
//
//     i dz/dt = A z + u(z) Q z,     A = -Δ + V,
//
// on the L2 sphere, with the inner product convention <f,g> = ∫ f conj(g).
//
// Lyapunov function (α > 0):
//
//     V(z) = α ||A P_1 z||^2 + 1 - |<z,e_1>|^2
//          = α Σ_{k>=2} λ_k^2 |c_k|^2 + 1 - |c_1|^2,
//
// nonnegative on the sphere and zero exactly on the target circle
// C = { c e_1 : |c| = 1 }. The feedback
//
//     u(z) = -δ Im[ α <A P_1(Qz), A P_1 z> - <Qz,e_1><e_1,z> ]
//
// makes dV/dt = -(2/δ) u(z)^2 along closed-loop trajectories, so V is
// non-increasing. In coefficients, with d = Q c:
//
//     u = -δ Im[ α Σ_{k>=2} λ_k^2 d_k conj(c_k) - d_1 conj(c_1) ].

#include <Eigen/Dense>

#include "qstab/operators.hpp"
#include "qstab/spectral.hpp"

namespace qstab {

struct FeedbackParams {
  double alpha = 0.0;  // Lyapunov weight, > 0
  double delta = 0.0;  // feedback gain, > 0

  FeedbackParams() = default;
  FeedbackParams(double a, double d) : alpha(a), delta(d) {
    if (!(a > 0.0) || !(d > 0.0))
      throw SpecError("feedback params: require alpha > 0 and delta > 0");
  }
};

// V(z); requires z on the sphere (norm within 1e-9).
double lyapunov(const State& state, const SpectralBasis& basis,
                const FeedbackParams& params);

// u(z) in the spectral form above; requires z on the sphere.
double feedback(const State& state, const SpectralBasis& basis,
                const ControlOperator& control, const FeedbackParams& params);

// Node samples of ∇Q and ΔQ for the grid form of the feedback.
struct ControlDerivatives {
  Vec dq;   // central difference of Q
  Vec ddq;  // second central difference of Q
};

// Central differences of the node samples. q_left/q_right are the boundary
// values Q(a), Q(b) used by the stencils at the first and last node.
ControlDerivatives control_derivatives(const Vec& q_values, const Grid& grid,
                                       double q_left, double q_right);

// Rewritten feedback evaluated on the grid representation. Expanding
// A(Qz) = Q Az - 2 ∇Q·∇z - (ΔQ) z and dropping <Q Az, Az> (real because Q
// is real) leaves four terms:
//
//   u~(z) = -δ Im[ α <A P_1(Qz), A(-<z,e_1> e_1)>
//                + α <A(-<Qz,e_1> e_1), A z>
//                + α <-2 ∇Q·∇z - (ΔQ) z, A z>
//                - <Qz,e_1><e_1,z> ].
//
// Every A-apply here is the grid tridiagonal operator and every pairing the
// grid quadrature, so this is an independent evaluation path used to
// cross-validate the spectral form. Agreement is limited only by the O(h^2)
// consistency of the difference stencils (exact for affine Q).
double feedback_tilde(const State& state, const SpectralBasis& basis,
                      const ControlOperator& control,
                      const FeedbackParams& params,
                      const ControlDerivatives& derivs);

struct TargetDistance {
  double l2 = 0.0;       // min_θ ||z - e^{iθ} e_1|| = sqrt(2 - 2|c_1|)
  double h1 = 0.0;       // (1+|λ_k|)-weighted norm of z - e^{iθ*} e_1
  double overlap = 0.0;  // |c_1|^2
};

// Phase-aligned distances to the target circle, θ* = arg(c_1).
// Convention: θ* = 0 when c_1 = 0.
TargetDistance distance_to_target(const State& state, const SpectralBasis& basis);

// α* = |c_1|^2 / Σ_{k>=2} λ_k^2 |c_k|^2, the supremum of weights α with
// V(z_0) < 1. Callers should use a fraction of it (default policy 0.5 α*).
// Throws NumericError when c_1 = 0 or when z_0 is already on the target
// circle (zero denominator).
double alpha_star(const State& state0, const SpectralBasis& basis);

}  // namespace qstab
