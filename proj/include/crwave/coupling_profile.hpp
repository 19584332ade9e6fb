#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crwave::emitter {

// Rising coupling ramp for shaped emission. The instantaneous decay rate
// 4 g(t)^2 / v_g grows as e^x / (2 - e^x) with x = 4 g_max^2 (t - t_m) / v_g,
// which integrates to ln 2 of accumulated emission over the whole ramp: half
// the excitation leaves during the rise, half on the plateau, and the emitted
// packet comes out symmetric in time. Past t_m the coupling sits at g_max.
inline double profile_emit(double g_max, double t_m, double v_g, double t) {
  if (t >= t_m) return g_max;
  const double r = std::exp(4.0 * g_max * g_max * (t - t_m) / v_g);
  return g_max * std::sqrt(r / (2.0 - r));
}

// Falling ramp for shaped absorption, the exact time mirror of the emission
// ramp about t_m + t_0 where t_0 is the packet travel delay. Delegating to
// profile_emit at the reflected time makes the mirror identity
// profile_absorb(t_m + t_0 + s) = profile_emit(t_m - s) hold bitwise.
inline double profile_absorb(double g_max, double t_m, double t_0, double v_g, double t) {
  return profile_emit(g_max, t_m, v_g, 2.0 * t_m + t_0 - t);
}

enum class ProfileKind { constant, shaped_emit, shaped_absorb };

// Time-dependent coupling of one atom to the waveguide. Shaped kinds carry
// the ramp midpoint t_m (and for absorption the travel delay t_0) plus the
// group velocity that sets the ramp rate.
struct CouplingProfile {
  ProfileKind kind = ProfileKind::constant;
  double g = 0.0;
  double t_m = 0.0;
  double t_0 = 0.0;
  double v_g = 1.0;

  static CouplingProfile constant(double g) {
    CouplingProfile p;
    p.kind = ProfileKind::constant;
    p.g = g;
    return p;
  }

  static CouplingProfile shaped_emit(double g_max, double t_m, double v_g) {
    CouplingProfile p;
    p.kind = ProfileKind::shaped_emit;
    p.g = g_max;
    p.t_m = t_m;
    p.v_g = v_g;
    return p;
  }

  static CouplingProfile shaped_absorb(double g_max, double t_m, double t_0, double v_g) {
    CouplingProfile p;
    p.kind = ProfileKind::shaped_absorb;
    p.g = g_max;
    p.t_m = t_m;
    p.t_0 = t_0;
    p.v_g = v_g;
    return p;
  }

  double value(double t) const {
    switch (kind) {
      case ProfileKind::constant: return g;
      case ProfileKind::shaped_emit: return profile_emit(g, t_m, v_g, t);
      case ProfileKind::shaped_absorb: return profile_absorb(g, t_m, t_0, v_g, t);
    }
    return g;
  }

  // Supremum of |value| over all times; both ramps are bounded by g_max.
  double max_magnitude() const { return std::abs(g); }

  // Times where the profile is continuous but not differentiable, for use as
  // quadrature breakpoints and integrator step alignment.
  std::vector<double> switch_times() const {
    switch (kind) {
      case ProfileKind::constant: return {};
      case ProfileKind::shaped_emit: return {t_m};
      case ProfileKind::shaped_absorb: return {t_m + t_0};
    }
    return {};
  }

  void validate() const {
    if (!std::isfinite(g)) throw std::invalid_argument("coupling magnitude must be finite");
    if (kind == ProfileKind::constant) return;
    if (!std::isfinite(t_m) || t_m < 0.0)
      throw std::invalid_argument("ramp midpoint must be finite and nonnegative");
    if (!std::isfinite(v_g) || v_g <= 0.0)
      throw std::invalid_argument("ramp group velocity must be positive");
    if (kind == ProfileKind::shaped_absorb && (!std::isfinite(t_0) || t_0 < 0.0))
      throw std::invalid_argument("travel delay must be finite and nonnegative");
  }
};

}  // namespace crwave::emitter
