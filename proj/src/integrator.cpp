#include "qstab/integrator.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>

namespace qstab {

namespace {

using Cx = std::complex<double>;

// Fixed phase factors exp(-i λ_k dt/2) for the two free half-steps. The same
// factors multiply every mode twice per step for the whole run, so even a
// sub-ulp modulus bias accumulates linearly and shows up as norm drift after
// 1e5 steps. The start factor takes the rounding of the extended-precision
// unit value whose double modulus is closest to 1; the end factor is then
// tuned (over a few-ulp neighborhood of its components) so that the modulus
// of the per-step product start*end is 1 to ~1e-17.
struct HalfPhases {
  CVec start, end;
};

HalfPhases half_phases(const Vec& lam, double dt) {
  HalfPhases w;
  w.start.resize(lam.size());
  w.end.resize(lam.size());
  auto candidates = [](long double x) {
    std::array<double, 5> c;
    c[0] = static_cast<double>(x);
    c[1] = std::nextafter(c[0], -2.0);
    c[2] = std::nextafter(c[0], 2.0);
    c[3] = std::nextafter(c[1], -2.0);
    c[4] = std::nextafter(c[2], 2.0);
    return c;
  };
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const long double th = -static_cast<long double>(lam[k]) *
                           static_cast<long double>(dt) / 2.0L;
    const long double nn = sqrtl(cosl(th) * cosl(th) + sinl(th) * sinl(th));
    const long double cr = cosl(th) / nn, si = sinl(th) / nn;
    const auto res = candidates(cr), ims = candidates(si);

    double best_re = res[0], best_im = ims[0];
    long double best = 1.0L;
    for (const double re : res)
      for (const double im : ims) {
        const long double err = fabsl(static_cast<long double>(re) * re +
                                      static_cast<long double>(im) * im - 1.0L);
        if (err < best) {
          best = err;
          best_re = re;
          best_im = im;
        }
      }
    w.start[k] = {best_re, best_im};

    const long double s2 = static_cast<long double>(best_re) * best_re +
                           static_cast<long double>(best_im) * best_im;
    best = 1.0L;
    for (const double re : res)
      for (const double im : ims) {
        const long double err = fabsl(s2 * (static_cast<long double>(re) * re +
                                            static_cast<long double>(im) * im) -
                                      1.0L);
        if (err < best) {
          best = err;
          best_re = re;
          best_im = im;
        }
      }
    w.end[k] = {best_re, best_im};
  }
  return w;
}

class Propagator {
 public:
  Propagator(const SpectralBasis& basis, const ControlOperator& control, double dt)
      : control_(control), dt_(dt), half_(half_phases(basis.eigenvalues, dt)) {}

  void free_half(CVec& c) const {
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= half_.start[k];
  }

  void free_half_end(CVec& c) const {
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= half_.end[k];
  }

  // exp(-i u t Q) c via the orthogonal factor: rotate, phase, rotate back
  CVec control_phase(const CVec& c, double ut) const {
    const Mat& R = control_.q_eigenvectors;
    Vec yr = R.transpose() * c.real().matrix();
    Vec yi = R.transpose() * c.imag().matrix();
    const Eigen::Index K = c.size();
    CVec y(K);
    for (Eigen::Index k = 0; k < K; ++k)
      y[k] = Cx(yr[k], yi[k]) * std::polar(1.0, -control_.q_eigenvalues[k] * ut);
    Vec zr = R * y.real().matrix();
    Vec zi = R * y.imag().matrix();
    CVec out(K);
    for (Eigen::Index k = 0; k < K; ++k) out[k] = {zr[k], zi[k]};
    return out;
  }

  CVec strang(const CVec& c, double u) const {
    CVec tmp = c;
    free_half(tmp);
    tmp = control_phase(tmp, u * dt_);
    free_half_end(tmp);
    return tmp;
  }

 private:
  const ControlOperator& control_;
  double dt_;
  HalfPhases half_;
};

long long step_count(const IntegratorConfig& config) {
  if (!(config.dt > 0.0)) throw SpecError("integrator: require dt > 0");
  if (!(config.t_final >= config.dt))
    throw SpecError("integrator: require dt <= t_final");
  if (config.record_stride < 1)
    throw SpecError("integrator: require record_stride >= 1");
  return std::llround(config.t_final / config.dt);
}

TrajectoryPoint make_point(double t, double u, double V, const State& z,
                           const SpectralBasis& basis, double cum_u2) {
  TrajectoryPoint p;
  p.t = t;
  p.u = u;
  p.lyapunov = V;
  p.norm = z.norm();
  const TargetDistance d = distance_to_target(z, basis);
  p.overlap = d.overlap;
  p.h1_dist = d.h1;
  p.h2_proxy = sobolev_norms(z, basis).h2_proxy;
  p.cum_u2 = cum_u2;
  return p;
}

// Shared propagation loop. next_u(state_at_step_start, prop, n) yields the
// frozen control for each step. Closed-loop runs get the abort-on-V-increase
// tripwire and an instantaneous feedback value on the final record row;
// prescribed controls may legitimately raise V, so open loop gets neither.
template <typename NextU>
TrajectoryRecord evolve(const State& state0, const FeedbackParams& params,
                        const IntegratorConfig& config, const SpectralBasis& basis,
                        const ControlOperator& control, NextU&& next_u, bool closed_loop) {
  require_sphere(state0, "evolve");
  const long long n_steps = step_count(config);
  const Propagator prop(basis, control, config.dt);

  TrajectoryRecord rec;
  const double lam_max = basis.eigenvalues.cwiseAbs().maxCoeff();
  if (config.dt * lam_max > M_PI) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "time step under-resolves the top mode: dt*max|lambda| = %.3g > pi",
                  config.dt * lam_max);
    rec.warnings.emplace_back(buf);
  }
  if (std::abs(n_steps * config.dt - config.t_final) >
      1e-9 * std::max(1.0, config.t_final))
    rec.warnings.emplace_back("t_final is not an integer multiple of dt; using " +
                              std::to_string(n_steps) + " steps");

  rec.applied_u.reserve(n_steps);
  State z = state0;
  double V_prev = lyapunov(z, basis, params);
  double cum = 0.0;

  for (long long n = 0; n < n_steps; ++n) {
    const double u = next_u(z, prop, n);
    if (!std::isfinite(u))
      throw NumericError("evolve: control value is not finite at step " + std::to_string(n));
    if (n % config.record_stride == 0)
      rec.points.push_back(make_point(n * config.dt, u, V_prev, z, basis, cum));

    z.c = prop.strang(z.c, u);
    rec.applied_u.push_back(u);
    cum += u * u * config.dt;
    rec.max_norm_drift = std::max(rec.max_norm_drift, std::abs(z.norm() - 1.0));

    const double V = lyapunov(z, basis, params);
    const double dV = V - V_prev;
    if (dV > 1e-8 * config.dt) {
      ++rec.monotonicity_violations;
      if (closed_loop && dV > 1e-6 * config.dt) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "Lyapunov increase %.3e exceeds 1e-6*dt = %.3e at step %lld "
                      "(t = %.6g); integration error or sign bug",
                      dV, 1e-6 * config.dt, n, n * config.dt);
        throw NumericError(buf);
      }
    }
    V_prev = V;
  }

  rec.final_state = z;
  rec.final_lyapunov = V_prev;
  rec.cum_u2 = cum;
  const double u_last = rec.applied_u.empty() ? 0.0 : rec.applied_u.back();
  const double u_final = closed_loop ? feedback(z, basis, control, params) : u_last;
  rec.points.push_back(make_point(n_steps * config.dt, u_final, V_prev, z, basis, cum));
  rec.final_overlap = rec.points.back().overlap;
  return rec;
}

}  // namespace

State step(const State& state, double u_value, double dt, const SpectralBasis& basis,
           const ControlOperator& control) {
  if (!std::isfinite(u_value)) throw NumericError("step: control value is not finite");
  if (!(dt > 0.0)) throw SpecError("step: require dt > 0");
  if (state.c.size() != basis.k_modes)
    throw SpecError("step: coefficient/basis size mismatch");
  const Propagator prop(basis, control, dt);
  State out;
  out.c = prop.strang(state.c, u_value);
  return out;
}

TrajectoryRecord evolve_closed_loop(const State& state0, const FeedbackParams& params,
                                    const IntegratorConfig& config,
                                    const SpectralBasis& basis,
                                    const ControlOperator& control) {
  const double dt = config.dt;
  auto next_u = [&](const State& z, const Propagator& prop, long long) -> double {
    if (config.u_eval == UEval::start_of_step)
      return feedback(z, basis, control, params);
    // midpoint state: free half-step, then half of the control substep with
    // a provisional gain; re-evaluating there centers the frozen control on
    // the substep that changes the Lyapunov function
    State half;
    half.c = z.c;
    prop.free_half(half.c);
    const double u0 = feedback(half, basis, control, params);
    State mid;
    mid.c = prop.control_phase(half.c, u0 * dt / 2.0);
    return feedback(mid, basis, control, params);
  };
  return evolve(state0, params, config, basis, control, next_u, /*closed_loop=*/true);
}

TrajectoryRecord evolve_open_loop(const State& state0, const std::vector<double>& u_samples,
                                  const FeedbackParams& params,
                                  const IntegratorConfig& config,
                                  const SpectralBasis& basis,
                                  const ControlOperator& control) {
  const long long n_steps = step_count(config);
  if (static_cast<long long>(u_samples.size()) < n_steps)
    throw SpecError("evolve_open_loop: " + std::to_string(u_samples.size()) +
                    " control samples do not cover " + std::to_string(n_steps) + " steps");
  auto next_u = [&](const State&, const Propagator&, long long n) -> double {
    return u_samples[static_cast<size_t>(n)];
  };
  return evolve(state0, params, config, basis, control, next_u, /*closed_loop=*/false);
}

std::string trajectory_csv(const TrajectoryRecord& record) {
  std::string out = "t,u,lyapunov,norm,overlap,h1_dist,h2_proxy,cum_u2\n";
  char buf[256];
  for (const auto& p : record.points) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.t, p.u, p.lyapunov, p.norm, p.overlap, p.h1_dist, p.h2_proxy,
                  p.cum_u2);
    out += buf;
  }
  return out;
}

}  // namespace qstab
