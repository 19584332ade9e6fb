#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace crwave::emitter {

namespace detail {

template <typename F>
double simpson_recurse(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson integration to an absolute tolerance. The recursion depth
// cap bounds work on pathological integrands; smooth ones terminate early.
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-10) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol);
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Same, with the integrand known to have kinks at the listed interior points.
// Splitting there keeps the adaptive rule from burning depth resolving them.
// The distinct name avoids overload ambiguity between a braced breakpoint
// list and the tolerance parameter.
template <typename F>
double integrate_with_breakpoints(F&& f, double a, double b,
                                  const std::vector<double>& breakpoints, double tol = 1e-10) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_with_breakpoints(f, b, a, breakpoints, tol);
  std::vector<double> cuts;
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  double lo = a;
  const double piece_tol = tol / static_cast<double>(cuts.size() + 1);
  for (double p : cuts) {
    total += integrate(f, lo, p, piece_tol);
    lo = p;
  }
  total += integrate(f, lo, b, piece_tol);
  return total;
}

}  // namespace crwave::emitter
