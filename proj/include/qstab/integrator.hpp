#pragma once

// Norm-preserving propagation of i dz/dt = A z + u Q z in the truncated
// eigenbasis by Strang splitting:
//
//     c <- exp(-i Λ dt/2) c;  c <- exp(-i u dt Q) c;  c <- exp(-i Λ dt/2) c,
//
// where the control factor uses the precomputed eigendecomposition of the
// Q matrix (rotate, phase, rotate back). Each factor is unitary, so the norm
// is preserved to roundoff over arbitrarily long runs.
//
// Closed-loop stepping freezes u per step. The default policy evaluates the
// feedback at the half-step midpoint state (free half-step, then half of the
// control substep with a provisional gain); this centers the frozen control
// on the substep that changes the Lyapunov function and keeps the dissipation
// identity residual second order in dt.

#include <string>
#include <vector>

#include "qstab/feedback.hpp"
#include "qstab/operators.hpp"
#include "qstab/spectral.hpp"

namespace qstab {

enum class UEval {
  start_of_step,       // u evaluated at z_n (ablation; first-order residual)
  half_step_midpoint,  // u evaluated at the step midpoint state (default)
};

struct IntegratorConfig {
  double dt = 1e-3;
  double t_final = 10.0;
  int record_stride = 1;  // record every n-th step
  UEval u_eval = UEval::half_step_midpoint;
};

struct TrajectoryPoint {
  double t = 0.0;
  double u = 0.0;         // control applied on [t, t+dt); final row: value in
                          // effect at t (closed loop: instantaneous feedback)
  double lyapunov = 0.0;
  double norm = 0.0;
  double overlap = 0.0;   // |<z,e_1>|^2
  double h1_dist = 0.0;
  double h2_proxy = 0.0;
  double cum_u2 = 0.0;    // Σ u_i^2 dt over steps before t
};

struct TrajectoryRecord {
  std::vector<TrajectoryPoint> points;
  std::vector<double> applied_u;  // one entry per step (replay input)
  State final_state;
  double final_overlap = 0.0;
  double final_lyapunov = 0.0;
  double max_norm_drift = 0.0;           // max over steps of | ||z|| - 1 |
  double cum_u2 = 0.0;                   // Σ u_n^2 dt over the whole run
  long long monotonicity_violations = 0; // steps with ΔV > 1e-8 dt
  std::vector<std::string> warnings;
};

// One Strang step with the given frozen control value.
// Throws NumericError if u_value is not finite.
State step(const State& state, double u_value, double dt,
           const SpectralBasis& basis, const ControlOperator& control);

// Closed loop: u chosen per config.u_eval each step. Records every
// record_stride steps plus the final state. Aborts with NumericError if the
// Lyapunov function increases by more than 1e-6 dt in one step (integration
// error or sign bug, not physics).
TrajectoryRecord evolve_closed_loop(const State& state0,
                                    const FeedbackParams& params,
                                    const IntegratorConfig& config,
                                    const SpectralBasis& basis,
                                    const ControlOperator& control);

// Open loop with prescribed piecewise-constant u (one value per step).
// u_samples must cover all round(t_final/dt) steps. params is used only to
// evaluate the recorded Lyapunov values.
TrajectoryRecord evolve_open_loop(const State& state0,
                                  const std::vector<double>& u_samples,
                                  const FeedbackParams& params,
                                  const IntegratorConfig& config,
                                  const SpectralBasis& basis,
                                  const ControlOperator& control);

// CSV with columns (exact order):
//   t,u,lyapunov,norm,overlap,h1_dist,h2_proxy,cum_u2
// All numerics with 17 significant digits (round-trip exact for doubles).
std::string trajectory_csv(const TrajectoryRecord& record);

}  // namespace qstab
