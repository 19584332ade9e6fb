#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "crwave/lattice.hpp"

namespace crwave::evolve {

// Squared overlap between the evolved state and the rigidly shifted initial
// state; 1 means the packet arrived without distortion. Evaluated at integer
// shifts only, matching the lattice translation operator.
inline double propagating_fidelity(const lattice::ExcitationState& psi0,
                                   const lattice::ExcitationState& psi_t, int shift,
                                   lattice::Boundary boundary = lattice::Boundary::periodic) {
  if (psi0.num_sites() != psi_t.num_sites() || psi0.num_atoms() != psi_t.num_atoms())
    throw std::invalid_argument("states have different dimensions");
  const auto shifted = lattice::translate_state(psi0, shift, boundary);
  return std::norm(psi_t.packed().dot(shifted.packed()));
}

struct DirectionalSplit {
  double left = 0.0;
  double right = 0.0;
};

// Waveguide population strictly left and strictly right of the pivot site;
// the pivot itself belongs to neither side.
inline DirectionalSplit directional_split(const lattice::ExcitationState& state, int pivot) {
  if (pivot < 1 || pivot > state.num_sites())
    throw std::invalid_argument("pivot site outside the lattice");
  DirectionalSplit split;
  for (Eigen::Index l = 0; l < state.num_sites(); ++l) {
    const double p = std::norm(state.site_amps(l));
    const int site = static_cast<int>(l) + 1;
    if (site < pivot)
      split.left += p;
    else if (site > pivot)
      split.right += p;
  }
  return split;
}

struct PacketMoments {
  double mass = 0.0;
  double centroid = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
};

// Low-order moments of the waveguide population distribution, with sites
// numbered from 1. Skewness is the third standardized central moment; a
// symmetric packet gives zero.
inline PacketMoments packet_moments(const lattice::ExcitationState& state) {
  PacketMoments m;
  const Eigen::Index L = state.num_sites();
  for (Eigen::Index l = 0; l < L; ++l) m.mass += std::norm(state.site_amps(l));
  if (m.mass < 1e-12) throw std::invalid_argument("no waveguide population to take moments of");
  for (Eigen::Index l = 0; l < L; ++l)
    m.centroid += (static_cast<double>(l) + 1.0) * std::norm(state.site_amps(l));
  m.centroid /= m.mass;
  double mu2 = 0.0, mu3 = 0.0;
  for (Eigen::Index l = 0; l < L; ++l) {
    const double d = static_cast<double>(l) + 1.0 - m.centroid;
    const double p = std::norm(state.site_amps(l));
    mu2 += d * d * p;
    mu3 += d * d * d * p;
  }
  mu2 /= m.mass;
  mu3 /= m.mass;
  m.variance = mu2;
  m.skewness = (mu2 > 0.0) ? mu3 / std::pow(mu2, 1.5) : 0.0;
  return m;
}

struct MomentumProfile {
  std::vector<double> k;
  std::vector<double> weight;
};

// Discrete Fourier weights |c_k|^2 of the site amplitudes on the wavenumber
// grid k = 2 pi m / L folded to (-pi, pi], sorted by k. Unitary convention,
// so the weights sum to the waveguide population.
inline MomentumProfile momentum_profile(const lattice::ExcitationState& state) {
  const Eigen::Index L = state.num_sites();
  if (L == 0) throw std::invalid_argument("state has no sites");
  std::vector<std::pair<double, double>> entries;
  entries.reserve(static_cast<size_t>(L));
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));
  for (Eigen::Index m = 0; m < L; ++m) {
    double k = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(L);
    if (k > std::numbers::pi + 1e-15) k -= 2.0 * std::numbers::pi;
    std::complex<double> c = 0.0;
    for (Eigen::Index l = 0; l < L; ++l)
      c += state.site_amps(l) * std::polar(1.0, -k * (static_cast<double>(l) + 1.0));
    entries.emplace_back(k, std::norm(c * norm));
  }
  std::sort(entries.begin(), entries.end());
  MomentumProfile profile;
  for (const auto& [k, w] : entries) {
    profile.k.push_back(k);
    profile.weight.push_back(w);
  }
  return profile;
}

// Least-squares decay rate gamma of values ~ A exp(-gamma t), fitted on the
// logarithm. Nonpositive samples cannot enter a log fit and are rejected.
inline double fit_exponential_decay_rate(const std::vector<double>& times,
                                         const std::vector<double>& values) {
  if (times.size() != values.size()) throw std::invalid_argument("series lengths differ");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    const double y = std::log(values[i]);
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("need at least two positive samples to fit a decay");
  const double denom = static_cast<double>(n) * stt - st * st;
  if (denom == 0.0) throw std::invalid_argument("degenerate time grid");
  const double slope = (static_cast<double>(n) * sty - st * sy) / denom;
  return -slope;
}

// Dominant angular frequency of an oscillating series: the power of the
// demeaned data against e^{-i omega t} is scanned over [omega_lo, omega_hi]
// and the peak refined by golden-section search.
inline double fit_oscillation_frequency(const std::vector<double>& times,
                                        const std::vector<double>& values, double omega_lo,
                                        double omega_hi) {
  if (times.size() != values.size()) throw std::invalid_argument("series lengths differ");
  if (times.size() < 8) throw std::invalid_argument("too few samples to fit a frequency");
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo))
    throw std::invalid_argument("need 0 < omega_lo < omega_hi");

  const size_t n = times.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  auto power = [&](double omega) {
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < n; ++i)
      acc += (values[i] - mean) * std::polar(1.0, -omega * times[i]);
    return std::norm(acc);
  };

  const int grid = 4000;
  double best = omega_lo;
  double best_p = -1.0;
  for (int i = 0; i <= grid; ++i) {
    const double omega = omega_lo + (omega_hi - omega_lo) * i / grid;
    const double p = power(omega);
    if (p > best_p) {
      best_p = p;
      best = omega;
    }
  }
  const double span = (omega_hi - omega_lo) / grid;
  double lo = std::max(omega_lo, best - span);
  double hi = std::min(omega_hi, best + span);
  constexpr double inv_phi = 0.6180339887498949;
  double m1 = hi - inv_phi * (hi - lo);
  double m2 = lo + inv_phi * (hi - lo);
  double p1 = power(m1), p2 = power(m2);
  for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
    if (p1 < p2) {
      lo = m1;
      m1 = m2;
      p1 = p2;
      m2 = lo + inv_phi * (hi - lo);
      p2 = power(m2);
    } else {
      hi = m2;
      m2 = m1;
      p2 = p1;
      m1 = hi - inv_phi * (hi - lo);
      p1 = power(m1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace crwave::evolve
