#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "crwave/dispersion.hpp"
#include "crwave/hopping.hpp"

namespace crwave::design {

namespace detail {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline bigint int_pow(int base, int exp) {
  bigint r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline bigint int_factorial(int m) {
  bigint r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

// Gaussian elimination with partial pivoting over exact rationals. The design
// matrices are small near-Vandermonde systems whose floating-point solves lose
// digits, so the exact path is the default for every hand-sized problem.
inline std::vector<rational> solve_exact(std::vector<std::vector<rational>> M,
                                         std::vector<rational> rhs) {
  const size_t n = M.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(M[r][col]) > abs(M[pivot][col])) pivot = r;
    if (M[pivot][col] == 0) throw std::domain_error("design system is singular");
    std::swap(M[col], M[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (size_t r = col + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      const rational f = M[r][col] / M[col][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<rational> x(n);
  for (size_t rr = n; rr-- > 0;) {
    rational acc = rhs[rr];
    for (size_t c = rr + 1; c < n; ++c) acc -= M[rr][c] * x[c];
    x[rr] = acc / M[rr][rr];
  }
  return x;
}

// Shared driver: solves the system exactly for hand-sized J and falls back to
// a floating-point full-pivot LU above that.
inline std::vector<double> solve_design_system(const std::vector<std::vector<rational>>& M,
                                               const std::vector<rational>& rhs) {
  const size_t n = M.size();
  if (n <= 8) {
    auto x = solve_exact(M, rhs);
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = x[i].convert_to<double>();
    return out;
  }
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  for (size_t r = 0; r < n; ++r) {
    b(static_cast<Eigen::Index>(r)) = rhs[r].convert_to<double>();
    for (size_t c = 0; c < n; ++c)
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = M[r][c].convert_to<double>();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw std::domain_error("design system is singular");
  Eigen::VectorXd x = lu.solve(b);
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = x(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace detail

// Hoppings h_1..h_J with all phases pi/2 whose sine-series dispersion has unit
// slope condition C_1 = v_g and vanishing higher odd channels C_2..C_J, making
// omega(k) - omega0 = v_g k across a wide window while staying antisymmetric
// in k. Row i of the system is sum_j 2 (-1)^{i+1} j^{2i-1}/(2i-1)! h_j.
inline HoppingSet solve_chiral_linear(int J, double v_g) {
  if (J < 1) throw std::invalid_argument("need at least one hopping offset");
  if (v_g == 0.0 || !std::isfinite(v_g)) throw std::invalid_argument("slope must be nonzero");

  std::vector<std::vector<detail::rational>> M(J, std::vector<detail::rational>(J));
  std::vector<detail::rational> rhs(J, 0);
  rhs[0] = detail::rational(v_g);
  for (int i = 1; i <= J; ++i)
    for (int j = 1; j <= J; ++j) {
      detail::rational m = detail::rational(2 * detail::int_pow(j, 2 * i - 1),
                                            detail::int_factorial(2 * i - 1));
      M[i - 1][j - 1] = (i % 2 == 1) ? m : -m;
    }
  auto h = detail::solve_design_system(M, rhs);

  HoppingSet out;
  out.terms.reserve(static_cast<size_t>(J));
  for (int j = 1; j <= J; ++j)
    out.terms.push_back({j, h[static_cast<size_t>(j - 1)], std::numbers::pi / 2.0});
  return out;
}

// Phase-zero hoppings whose cosine-series dispersion is linear about k = +-pi/2
// with slope +v_g at +pi/2 (and -v_g at -pi/2 by mirror symmetry). Even offsets
// decouple from the odd-order expansion about pi/2 and are set to zero; the odd
// offsets j carry sign s_j = (-1)^{(j-1)/2} from cos(j pi/2 + j u), giving the
// slope condition sum_j 2 s_j j h_j = v_g and vanishing higher odd orders
// sum_j s_j j^{2i+1} h_j = 0.
inline HoppingSet solve_symmetric_linear(int J, double v_g) {
  if (J < 1) throw std::invalid_argument("need at least one hopping offset");
  if (v_g == 0.0 || !std::isfinite(v_g)) throw std::invalid_argument("slope must be nonzero");

  std::vector<int> odd;
  for (int j = 1; j <= J; j += 2) odd.push_back(j);
  const size_t n = odd.size();

  std::vector<std::vector<detail::rational>> M(n, std::vector<detail::rational>(n));
  std::vector<detail::rational> rhs(n, 0);
  rhs[0] = detail::rational(v_g);
  for (size_t col = 0; col < n; ++col) {
    const int j = odd[col];
    const int sj = (((j - 1) / 2) % 2 == 0) ? 1 : -1;
    M[0][col] = detail::rational(2 * sj * j);
    for (size_t row = 1; row < n; ++row)
      M[row][col] = detail::rational(sj * detail::int_pow(j, 2 * static_cast<int>(row) + 1));
  }
  auto h = detail::solve_design_system(M, rhs);

  HoppingSet out;
  out.terms.reserve(static_cast<size_t>(J));
  size_t idx = 0;
  for (int j = 1; j <= J; ++j) {
    const double hj = (j % 2 == 1) ? h[idx++] : 0.0;
    out.terms.push_back({j, hj, 0.0});
  }
  return out;
}

// Hoppings realizing a polynomial dispersion about k = 0. Odd powers of k are
// produced by the sine parts of the phases (channels C_i), even powers by the
// cosine parts (channels D_i, entering omega with a minus sign); the two
// channels decouple into separate J-by-J systems in h_j sin(theta_j) and
// h_j cos(theta_j), recombined per offset into an amplitude and a phase.
// Pure quadratic targets use the cosine channel alone (theta = 0, conditions
// D_0 = 0, D_1 = -q_g, higher D_i = 0; the single-offset case can only pin
// D_1). Pure cubic targets use the sine channel alone (theta = pi/2,
// conditions C_1 = 0, C_2 = c_g, higher C_i = 0) and need J >= 2.
inline HoppingSet solve_polynomial_target(int J, const DispersionTarget& target) {
  if (J < 1) throw std::invalid_argument("need at least one hopping offset");
  target.validate();

  auto sine_row = [&](int i, int j) {
    // coefficient of h_j sin(theta_j) in C_i
    detail::rational m = detail::rational(2 * detail::int_pow(j, 2 * i - 1),
                                          detail::int_factorial(2 * i - 1));
    return (i % 2 == 1) ? m : -m;
  };
  auto cosine_row = [&](int i, int j) {
    // coefficient of h_j cos(theta_j) in D_i
    detail::rational m =
        detail::rational(2 * detail::int_pow(j, 2 * i), detail::int_factorial(2 * i));
    return (i % 2 == 0) ? m : -m;
  };

  HoppingSet out;
  out.terms.reserve(static_cast<size_t>(J));

  switch (target.kind) {
    case TargetKind::quadratic: {
      std::vector<std::vector<detail::rational>> M(static_cast<size_t>(J),
                                                   std::vector<detail::rational>(J));
      std::vector<detail::rational> rhs(static_cast<size_t>(J), 0);
      if (J == 1) {
        M[0][0] = cosine_row(1, 1);
        rhs[0] = -detail::rational(target.q_g);
      } else {
        for (int i = 0; i < J; ++i) {
          for (int j = 1; j <= J; ++j) M[i][j - 1] = cosine_row(i, j);
          if (i == 1) rhs[i] = -detail::rational(target.q_g);
        }
      }
      auto h = detail::solve_design_system(M, rhs);
      for (int j = 1; j <= J; ++j) out.terms.push_back({j, h[static_cast<size_t>(j - 1)], 0.0});
      return out;
    }
    case TargetKind::cubic: {
      if (J < 2)
        throw std::invalid_argument(
            "a pure cubic needs at least two offsets (one channel must cancel the slope)");
      std::vector<std::vector<detail::rational>> M(static_cast<size_t>(J),
                                                   std::vector<detail::rational>(J));
      std::vector<detail::rational> rhs(static_cast<size_t>(J), 0);
      for (int i = 1; i <= J; ++i) {
        for (int j = 1; j <= J; ++j) M[i - 1][j - 1] = sine_row(i, j);
        if (i == 2) rhs[i - 1] = detail::rational(target.c_g);
      }
      auto h = detail::solve_design_system(M, rhs);
      for (int j = 1; j <= J; ++j)
        out.terms.push_back({j, h[static_cast<size_t>(j - 1)], std::numbers::pi / 2.0});
      return out;
    }
    case TargetKind::polynomial: {
      if (static_cast<int>(target.poly.size()) - 1 > 2 * J - 1)
        throw std::invalid_argument("polynomial degree exceeds the 2J-1 orders J offsets control");
      auto alpha = [&](int order) {
        return order < static_cast<int>(target.poly.size())
                   ? detail::rational(target.poly[static_cast<size_t>(order)])
                   : detail::rational(0);
      };
      std::vector<std::vector<detail::rational>> Ms(static_cast<size_t>(J),
                                                    std::vector<detail::rational>(J));
      std::vector<detail::rational> rs(static_cast<size_t>(J), 0);
      for (int i = 1; i <= J; ++i) {
        for (int j = 1; j <= J; ++j) Ms[i - 1][j - 1] = sine_row(i, j);
        rs[i - 1] = alpha(2 * i - 1);
      }
      auto s = detail::solve_design_system(Ms, rs);

      std::vector<std::vector<detail::rational>> Mc(static_cast<size_t>(J),
                                                    std::vector<detail::rational>(J));
      std::vector<detail::rational> rc(static_cast<size_t>(J), 0);
      for (int i = 0; i < J; ++i) {
        for (int j = 1; j <= J; ++j) Mc[i][j - 1] = cosine_row(i, j);
        rc[static_cast<size_t>(i)] = -alpha(2 * i);
      }
      auto c = detail::solve_design_system(Mc, rc);

      bool any_cos = false, any_sin = false;
      for (int j = 0; j < J; ++j) {
        if (c[static_cast<size_t>(j)] != 0.0) any_cos = true;
        if (s[static_cast<size_t>(j)] != 0.0) any_sin = true;
      }
      for (int j = 1; j <= J; ++j) {
        const double sj = s[static_cast<size_t>(j - 1)];
        const double cj = c[static_cast<size_t>(j - 1)];
        double amp, phase;
        if (!any_cos) {
          // pure sine channel: keep signed amplitudes at phase pi/2, matching
          // the chiral solver's representation
          amp = sj;
          phase = std::numbers::pi / 2.0;
        } else if (!any_sin) {
          amp = cj;
          phase = 0.0;
        } else {
          amp = std::hypot(cj, sj);
          phase = (amp == 0.0) ? 0.0 : std::atan2(sj, cj);
        }
        out.terms.push_back({j, amp, phase});
      }
      return out;
    }
    case TargetKind::chiral_linear:
    case TargetKind::symmetric_linear:
      throw std::invalid_argument("linear targets have dedicated solvers");
  }
  throw std::invalid_argument("unknown target kind");
}

// Single entry point dispatching on the target kind.
inline HoppingSet solve_target(int J, const DispersionTarget& target) {
  switch (target.kind) {
    case TargetKind::chiral_linear: return solve_chiral_linear(J, target.v_g);
    case TargetKind::symmetric_linear: return solve_symmetric_linear(J, target.v_g);
    default: return solve_polynomial_target(J, target);
  }
}

}  // namespace crwave::design
