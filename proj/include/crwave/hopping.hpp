#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace crwave::design {

// One coupling channel of the resonator chain: sites separated by `offset` j
// interact with amplitude h and phase theta, contributing
// -h e^{i theta} a^dag_l a_{l+j} + h.c. to the Hamiltonian.
struct HoppingTerm {
  int offset = 1;          // j, in sites
  double amplitude = 0.0;  // h, in units of the reference rate
  double phase = 0.0;      // theta, radians
};

// Full hopping specification of a waveguide: on-site frequency plus a list of
// range-j channels. The dispersion relation it generates is
//   omega(k) = omega0 - sum_j 2 h_j cos(j k + theta_j).
struct HoppingSet {
  double omega0 = 0.0;
  std::vector<HoppingTerm> terms;

  int max_offset() const {
    int j = 0;
    for (const auto& t : terms) j = std::max(j, t.offset);
    return j;
  }

  void validate() const {
    if (terms.empty()) throw std::invalid_argument("hopping set has no terms");
    if (!std::isfinite(omega0)) throw std::invalid_argument("omega0 is not finite");
    std::set<int> seen;
    for (const auto& t : terms) {
      if (t.offset < 1)
        throw std::invalid_argument("hopping offset must be a positive site count, got " +
                                    std::to_string(t.offset));
      if (!seen.insert(t.offset).second)
        throw std::invalid_argument("duplicate hopping offset " + std::to_string(t.offset));
      if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase))
        throw std::invalid_argument("non-finite hopping amplitude or phase at offset " +
                                    std::to_string(t.offset));
    }
  }
};

inline double omega_of_k(const HoppingSet& hops, double k) {
  double w = hops.omega0;
  for (const auto& t : hops.terms) w -= 2.0 * t.amplitude * std::cos(t.offset * k + t.phase);
  return w;
}

// Analytic derivative d omega / d k.
inline double group_velocity(const HoppingSet& hops, double k) {
  double v = 0.0;
  for (const auto& t : hops.terms)
    v += 2.0 * t.amplitude * t.offset * std::sin(t.offset * k + t.phase);
  return v;
}

namespace detail {

inline double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// cos(x + m pi/2) without accumulating the quarter-turn phase in floating point.
inline double cos_shift(double x, int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return std::cos(x);
    case 1: return -std::sin(x);
    case 2: return -std::cos(x);
    default: return std::sin(x);
  }
}

}  // namespace detail

// Taylor coefficients of omega(k) about `point`, i.e. the list {t_0 .. t_max_order}
// with omega(point + u) = sum_m t_m u^m. Derivatives of the cosine sum are exact:
//   t_m = delta_{m,0} omega0 - sum_j 2 h_j j^m cos(j point + theta_j + m pi/2) / m!.
// Supported expansion points are 0 and +-pi/2, and max_order must not exceed 2J
// (beyond that order the J channels cannot be controlled independently anyway).
inline std::vector<double> taylor_coefficients(const HoppingSet& hops, double point,
                                               int max_order) {
  hops.validate();
  constexpr double kPointTol = 1e-12;
  const double half_pi = std::numbers::pi / 2.0;
  const bool supported = std::abs(point) <= kPointTol ||
                         std::abs(std::abs(point) - half_pi) <= kPointTol;
  if (!supported)
    throw std::invalid_argument("taylor expansion supported only at k = 0 and k = +-pi/2");
  if (max_order < 0 || max_order > 2 * hops.max_offset())
    throw std::invalid_argument("taylor max_order must lie in [0, 2 J]");

  std::vector<double> coeffs(static_cast<size_t>(max_order) + 1, 0.0);
  for (int m = 0; m <= max_order; ++m) {
    double s = (m == 0) ? hops.omega0 : 0.0;
    for (const auto& t : hops.terms) {
      const double jm = std::pow(static_cast<double>(t.offset), m);
      s -= 2.0 * t.amplitude * jm * detail::cos_shift(t.offset * point + t.phase, m) /
           detail::factorial(m);
    }
    coeffs[static_cast<size_t>(m)] = s;
  }
  return coeffs;
}

// Odd-order expansion channel about k = 0: the coefficient of k^{2i-1} produced
// by the sine parts of the hoppings,
//   C_i = sum_j 2 h_j sin(theta_j) (-1)^{i+1} j^{2i-1} / (2i-1)!.
// Equals taylor_coefficients(hops, 0, .)[2i-1] for any phases.
inline double sine_series_coefficient(const HoppingSet& hops, int i) {
  if (i < 1) throw std::invalid_argument("sine channel index starts at 1");
  const double sign = (i % 2 == 1) ? 1.0 : -1.0;
  double c = 0.0;
  for (const auto& t : hops.terms)
    c += 2.0 * t.amplitude * std::sin(t.phase) * sign *
         std::pow(static_cast<double>(t.offset), 2 * i - 1) / detail::factorial(2 * i - 1);
  return c;
}

// Even-order expansion channel about k = 0 from the cosine parts,
//   D_i = sum_j 2 h_j cos(theta_j) (-1)^i j^{2i} / (2i)!.
// The dispersion expands as omega = omega0 + sum_i C_i k^{2i-1} - sum_i D_i k^{2i},
// so taylor_coefficients(hops, 0, .)[2i] equals -D_i (plus omega0 at order zero).
inline double cosine_series_coefficient(const HoppingSet& hops, int i) {
  if (i < 0) throw std::invalid_argument("cosine channel index starts at 0");
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  double d = 0.0;
  for (const auto& t : hops.terms)
    d += 2.0 * t.amplitude * std::cos(t.phase) * sign *
         std::pow(static_cast<double>(t.offset), 2 * i) / detail::factorial(2 * i);
  return d;
}

}  // namespace crwave::design
