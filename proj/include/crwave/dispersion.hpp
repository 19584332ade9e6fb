#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "crwave/hopping.hpp"

namespace crwave::design {

enum class TargetKind { chiral_linear, symmetric_linear, quadratic, cubic, polynomial };

// Dispersion shape the inverse solvers aim for. The linear kinds fix the slope
// v_g (chiral about k = 0, symmetric about k = +-pi/2); quadratic and cubic fix
// the curvature q_g respectively the cubic coefficient c_g about k = 0; the
// polynomial kind carries explicit coefficients alpha_i of sum_i alpha_i k^i.
struct DispersionTarget {
  TargetKind kind = TargetKind::chiral_linear;
  double v_g = 1.0;
  double q_g = 1.0;
  double c_g = 1.0;
  std::vector<double> poly;

  static DispersionTarget chiral_linear(double v_g) {
    DispersionTarget t;
    t.kind = TargetKind::chiral_linear;
    t.v_g = v_g;
    return t;
  }
  static DispersionTarget symmetric_linear(double v_g) {
    DispersionTarget t;
    t.kind = TargetKind::symmetric_linear;
    t.v_g = v_g;
    return t;
  }
  static DispersionTarget quadratic(double q_g) {
    DispersionTarget t;
    t.kind = TargetKind::quadratic;
    t.q_g = q_g;
    return t;
  }
  static DispersionTarget cubic(double c_g) {
    DispersionTarget t;
    t.kind = TargetKind::cubic;
    t.c_g = c_g;
    return t;
  }
  static DispersionTarget polynomial(std::vector<double> coeffs) {
    DispersionTarget t;
    t.kind = TargetKind::polynomial;
    t.poly = std::move(coeffs);
    return t;
  }

  // Expansion point of the design conditions.
  double design_point() const {
    return kind == TargetKind::symmetric_linear ? std::numbers::pi / 2.0 : 0.0;
  }

  // Target curve relative to omega0. The symmetric-linear target is the right
  // branch, slope +v_g through (+pi/2, 0); its mirror image covers -pi/2.
  double evaluate(double k) const {
    switch (kind) {
      case TargetKind::chiral_linear: return v_g * k;
      case TargetKind::symmetric_linear: return v_g * (k - std::numbers::pi / 2.0);
      case TargetKind::quadratic: return q_g * k * k;
      case TargetKind::cubic: return c_g * k * k * k;
      case TargetKind::polynomial: {
        double acc = 0.0;
        for (size_t i = poly.size(); i-- > 0;) acc = acc * k + poly[i];
        return acc;
      }
    }
    return 0.0;
  }

  void validate() const {
    switch (kind) {
      case TargetKind::chiral_linear:
      case TargetKind::symmetric_linear:
        if (v_g == 0.0 || !std::isfinite(v_g))
          throw std::invalid_argument("linear target needs a nonzero finite slope");
        break;
      case TargetKind::quadratic:
        if (q_g == 0.0 || !std::isfinite(q_g))
          throw std::invalid_argument("quadratic target needs a nonzero finite curvature");
        break;
      case TargetKind::cubic:
        if (c_g == 0.0 || !std::isfinite(c_g))
          throw std::invalid_argument("cubic target needs a nonzero finite coefficient");
        break;
      case TargetKind::polynomial: {
        bool any = false;
        for (double a : poly) {
          if (!std::isfinite(a)) throw std::invalid_argument("polynomial coefficient not finite");
          if (a != 0.0) any = true;
        }
        if (!any) throw std::invalid_argument("polynomial target is identically zero");
        break;
      }
    }
  }
};

struct KInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double k) const { return k >= lo && k <= hi; }
  double width() const { return hi - lo; }
};

namespace detail {

inline double dispersion_range(const HoppingSet& hops, int samples = 4096) {
  const double pi = std::numbers::pi;
  double wmin = std::numeric_limits<double>::infinity();
  double wmax = -wmin;
  for (int i = 0; i <= samples; ++i) {
    const double k = -pi + 2.0 * pi * i / samples;
    const double w = omega_of_k(hops, k);
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  return wmax - wmin;
}

}  // namespace detail

// Largest symmetric interval about the target's design point on which the
// dispersion tracks the target curve within rel_tol times the full dispersion
// range over the Brillouin zone. Found by marching a dense grid outward from
// the design point (at least 4096 samples across the candidate interval) and
// bisecting the first crossing down to 1e-6 in k.
inline KInterval linear_window(const HoppingSet& hops, const DispersionTarget& target,
                               double rel_tol) {
  hops.validate();
  target.validate();
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");

  const double pi = std::numbers::pi;
  const double p = target.design_point();
  const double base = hops.omega0;
  const double tol = rel_tol * detail::dispersion_range(hops);
  const double u_max = pi - std::abs(p);

  auto deviation = [&](double u) {
    const double right = std::abs(omega_of_k(hops, p + u) - base - target.evaluate(p + u));
    const double left = std::abs(omega_of_k(hops, p - u) - base - target.evaluate(p - u));
    return std::max(right, left);
  };

  const int steps = 2048;
  double inside = 0.0;
  double outside = -1.0;
  for (int i = 1; i <= steps; ++i) {
    const double u = u_max * i / steps;
    if (deviation(u) > tol) {
      outside = u;
      break;
    }
    inside = u;
  }
  if (outside < 0.0) return {p - u_max, p + u_max};

  while (outside - inside > 1e-6) {
    const double mid = 0.5 * (inside + outside);
    (deviation(mid) > tol ? outside : inside) = mid;
  }
  return {p - inside, p + inside};
}

struct DispersionSample {
  double k = 0.0;
  double omega = 0.0;
  double v = 0.0;
};

struct DispersionSummary {
  double v_design = 0.0;  // group velocity at the target's design point
  double v_edge = 0.0;    // |group velocity| at the zone edge k = pi
  KInterval window;
  std::vector<DispersionSample> samples;
};

inline DispersionSummary summarize_dispersion(const HoppingSet& hops,
                                              const DispersionTarget& target, double rel_tol,
                                              int n_samples = 1024) {
  if (n_samples < 2) throw std::invalid_argument("need at least two dispersion samples");
  DispersionSummary s;
  s.v_design = group_velocity(hops, target.design_point());
  s.v_edge = std::abs(group_velocity(hops, std::numbers::pi));
  s.window = linear_window(hops, target, rel_tol);
  const double pi = std::numbers::pi;
  s.samples.reserve(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double k = -pi + 2.0 * pi * i / (n_samples - 1);
    s.samples.push_back({k, omega_of_k(hops, k), group_velocity(hops, k)});
  }
  return s;
}

}  // namespace crwave::design
