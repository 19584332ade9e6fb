#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "crwave/coupling_profile.hpp"
#include "crwave/quadrature.hpp"

namespace crwave::emitter {

// Two atoms coupled to consecutive site pairs (l1, l1+1) and (l2, l2+1) of a
// shared chiral waveguide. The first radiates, the second absorbs; the site
// separation over the group velocity fixes the retardation between them.
struct EmitterPair {
  int l1 = 0;
  int l2 = 0;
  CouplingProfile g1;
  CouplingProfile g2;
  double v_g = 1.0;

  double t0() const { return (l2 - l1) / v_g; }

  void validate() const {
    if (l1 + 1 >= l2)
      throw std::invalid_argument("coupling regions must not overlap: need l1 + 1 < l2");
    if (!std::isfinite(v_g) || v_g <= 0.0)
      throw std::invalid_argument("group velocity must be positive");
    g1.validate();
    g2.validate();
  }
};

// Excited-state amplitude of a single radiating atom in the Markovian
// weak-coupling limit: b1(t) = exp(-int_0^t 2 |g1(tau)|^2 / v_g dtau). The
// amplitude is real in the rotating frame; the complex return keeps the
// signature uniform with the two-atom amplitude. The integral runs through
// adaptive quadrature for every profile kind, so the constant-profile closed
// form exp(-2 g^2 t / v_g) doubles as an integration sanity check.
inline std::complex<double> analytic_b1(const CouplingProfile& g1, double v_g, double t) {
  if (!std::isfinite(v_g) || v_g <= 0.0)
    throw std::invalid_argument("group velocity must be positive");
  g1.validate();
  if (t <= 0.0) return {1.0, 0.0};
  const double accumulated = integrate_with_breakpoints(
      [&](double tau) {
        const double g = g1.value(tau);
        return 2.0 * g * g / v_g;
      },
      0.0, t, g1.switch_times());
  return {std::exp(-accumulated), 0.0};
}

namespace detail {

inline double rate_integral(const CouplingProfile& p, double v_g, double a, double b) {
  return integrate_with_breakpoints(
      [&](double tau) {
        const double g = p.value(tau);
        return 2.0 * g * g / v_g;
      },
      a, b, p.switch_times());
}

}  // namespace detail

// Excited-state amplitude of the absorbing atom. The radiated amplitude
// reaches it after the delay t0, is weighted by the emitter's survival
// amplitude at the retarded time, and decays under the absorber's own
// emission between pickup and observation:
//
//   b2(t) = -int_{t0}^{t} dt' (4 g2(t') g1(t'-t0) / v_g)
//             * b1(t'-t0) * exp(-int_{t'}^{t} 2 |g2(tau)|^2 / v_g dtau)
//
// Constant profiles admit closed forms; the general case is evaluated by
// nested adaptive quadrature with ramp switch times as breakpoints.
inline std::complex<double> analytic_b2(const EmitterPair& pair, double t) {
  pair.validate();
  const double t0 = pair.t0();
  if (t <= t0) return {0.0, 0.0};
  const double v = pair.v_g;

  if (pair.g1.kind == ProfileKind::constant && pair.g2.kind == ProfileKind::constant) {
    const double ga = pair.g1.g;
    const double gb = pair.g2.g;
    const double delta = t - t0;
    const double scale = std::max(std::abs(ga), std::abs(gb));
    if (std::abs(ga - gb) <= 1e-9 * scale) {
      const double val = -(4.0 * ga * ga / v) * delta * std::exp(-2.0 * ga * ga * delta / v);
      return {val, 0.0};
    }
    const double ea = std::exp(-2.0 * ga * ga * delta / v);
    const double eb = std::exp(-2.0 * gb * gb * delta / v);
    const double val = -(2.0 * ga * gb / (gb * gb - ga * ga)) * (ea - eb);
    return {val, 0.0};
  }

  // breakpoints of the outer integrand: the absorber's own switch times plus
  // the emitter's shifted by the retardation
  std::vector<double> cuts = pair.g2.switch_times();
  for (double s : pair.g1.switch_times()) cuts.push_back(s + t0);

  const double tail_total = detail::rate_integral(pair.g2, v, t0, t);
  const double val = integrate_with_breakpoints(
      [&](double tp) {
        const double w1 = pair.g1.value(tp - t0);
        const double w2 = pair.g2.value(tp);
        const double b1 = analytic_b1(pair.g1, v, tp - t0).real();
        const double tail = tail_total - detail::rate_integral(pair.g2, v, t0, tp);
        return (4.0 * w2 * w1 / v) * b1 * std::exp(-tail);
      },
      t0, t, cuts);
  return {-val, 0.0};
}

struct PeakAbsorption {
  double t_peak = 0.0;
  double value = 0.0;
};

// Location and height of the absorption maximum for equal constant couplings:
// the transferred population peaks at t0 + v_g / (2 g^2) with value 4 / e^2,
// independent of the coupling strength and the delay.
inline PeakAbsorption peak_absorption(double g, double v_g, double t0) {
  if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("coupling must be positive");
  if (!(v_g > 0.0) || !std::isfinite(v_g))
    throw std::invalid_argument("group velocity must be positive");
  PeakAbsorption p;
  p.t_peak = t0 + v_g / (2.0 * g * g);
  p.value = 4.0 / (std::numbers::e * std::numbers::e);
  return p;
}

// Reflectance of a strongly coupled atom near resonance.
inline double lorentzian_reflection(double delta, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("decay rate must be positive");
  return gamma * gamma / (delta * delta + gamma * gamma);
}

// Oscillation frequency of a probe atom exchanging its excitation with the
// photon mode confined between two atomic mirrors.
inline double rabi_prediction(double g3) {
  if (!(g3 > 0.0) || !std::isfinite(g3)) throw std::invalid_argument("coupling must be positive");
  return 2.0 * g3;
}

// Decay rate of the photon held between two atomic mirrors with single-pass
// reflection probability r and separation d sites: each traversal takes d/v_g
// and keeps a fraction r, so <n> ~ r^(v_g t / d) = exp(-kappa t) with
// kappa = -(v_g / d) ln r.
inline double mirror_cavity_kappa(double r, double d, double v_g) {
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("reflection probability must lie in (0, 1]");
  if (!(d >= 1.0)) throw std::invalid_argument("mirror separation must be at least one site");
  if (!(v_g > 0.0) || !std::isfinite(v_g))
    throw std::invalid_argument("group velocity must be positive");
  return -(v_g / d) * std::log(r);
}

}  // namespace crwave::emitter
