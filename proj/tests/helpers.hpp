#pragma once

// Shared fixtures for the unit tests: the gaussian-bump well (the certified
// generic pair) and the flat well, both on (0,1) with the dipole control.

#include <cmath>
#include <random>

#include "qstab/feedback.hpp"
#include "qstab/operators.hpp"
#include "qstab/spectral.hpp"

namespace qtest {

using namespace qstab;

inline Vec gaussian_bump(const Grid& g, double amp = 20.0, double ctr = 0.4,
                         double wid = 50.0) {
  Vec v(g.m_points);
  for (int i = 0; i < g.m_points; ++i) {
    const double x = g.x(i);
    v[i] = amp * std::exp(-wid * (x - ctr) * (x - ctr));
  }
  return v;
}

inline Vec coordinate(const Grid& g) {
  Vec v(g.m_points);
  for (int i = 0; i < g.m_points; ++i) v[i] = g.x(i);
  return v;
}

struct Fixture {
  Grid grid;
  SpectralBasis basis;
  ControlOperator control;
};

// bump well, m = 2000, K = 16, Q = x
inline const Fixture& bump_fixture() {
  static const Fixture f = [] {
    Fixture fx;
    fx.grid = Grid(0.0, 1.0, 2000);
    fx.basis = build_basis(fx.grid, gaussian_bump(fx.grid), 16);
    fx.control = assemble_control(coordinate(fx.grid), fx.basis);
    return fx;
  }();
  return f;
}

// flat well, m = 2000, K = 8, Q = x
inline const Fixture& flat_fixture() {
  static const Fixture f = [] {
    Fixture fx;
    fx.grid = Grid(0.0, 1.0, 2000);
    fx.basis = build_basis(fx.grid, Vec::Zero(2000), 8);
    fx.control = assemble_control(coordinate(fx.grid), fx.basis);
    return fx;
  }();
  return f;
}

// deterministic complex Gaussians (Box-Muller over mt19937_64)
inline State random_sphere(int k_modes, std::mt19937_64& rng) {
  auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
  State z;
  z.c.resize(k_modes);
  for (int i = 0; i < k_modes; ++i) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = 2.0 * M_PI * uniform();
    z.c[i] = {r * std::cos(th), r * std::sin(th)};
  }
  z.c /= z.norm();
  return z;
}

inline State unit_mode(int k_modes, int mode /*1-based*/) {
  State z;
  z.c = CVec::Zero(k_modes);
  z.c[mode - 1] = 1.0;
  return z;
}

inline State two_mode_mix(int k_modes) {
  State z;
  z.c = CVec::Zero(k_modes);
  z.c[0] = z.c[1] = 1.0 / std::sqrt(2.0);
  return z;
}

// 0.5 * alpha_star for the canonical (e1+e2)/sqrt(2) start
inline FeedbackParams fixture_params(const Fixture& fx, double delta = 1.0) {
  const State z0 = two_mode_mix(fx.basis.k_modes);
  return FeedbackParams(0.5 * alpha_star(z0, fx.basis), delta);
}

}  // namespace qtest
