#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crwave/coupling_profile.hpp"
#include "crwave/hopping.hpp"

namespace crwave::lattice {

enum class Boundary { periodic, open };

// A finite chain of L coupled resonators with the given hopping set. The
// chain must be longer than twice the hopping range so a wrapped bond never
// lands back on its own starting site.
struct WaveguideSpec {
  int length = 0;
  Boundary boundary = Boundary::periodic;
  design::HoppingSet hops;

  void validate() const {
    hops.validate();
    if (length <= 2 * hops.max_offset())
      throw std::invalid_argument("waveguide length must exceed twice the hopping range");
  }
};

// A two-level atom side-coupled to one site, or to two consecutive sites with
// equal strength. Site indices are 1-based to match the usual lattice
// labelling l = 1..L.
struct AtomSpec {
  std::string id;
  std::vector<int> sites;
  double omega = 0.0;
  emitter::CouplingProfile profile;

  void validate(int length) const {
    if (id.empty()) throw std::invalid_argument("atom needs a nonempty id");
    if (sites.empty() || sites.size() > 2)
      throw std::invalid_argument("atom couples to one site or to two consecutive sites");
    for (int s : sites)
      if (s < 1 || s > length)
        throw std::invalid_argument("atom '" + id + "' couples to site " + std::to_string(s) +
                                    " outside [1, " + std::to_string(length) + "]");
    if (sites.size() == 2 && sites[1] != sites[0] + 1)
      throw std::invalid_argument("two-point coupling sites must be consecutive");
    if (!std::isfinite(omega)) throw std::invalid_argument("atom frequency must be finite");
    profile.validate();
  }
};

// Single-excitation amplitudes over the waveguide sites and the atoms, kept
// as separate blocks; the packed order (sites first, then atoms) matches the
// Hamiltonian layout.
struct ExcitationState {
  Eigen::VectorXcd site_amps;
  Eigen::VectorXcd atom_amps;
  double time = 0.0;

  Eigen::Index num_sites() const { return site_amps.size(); }
  Eigen::Index num_atoms() const { return atom_amps.size(); }

  double norm_sq() const { return site_amps.squaredNorm() + atom_amps.squaredNorm(); }

  Eigen::VectorXcd packed() const {
    Eigen::VectorXcd v(num_sites() + num_atoms());
    v.head(num_sites()) = site_amps;
    v.tail(num_atoms()) = atom_amps;
    return v;
  }

  static ExcitationState unpack(const Eigen::VectorXcd& v, Eigen::Index num_sites, double time) {
    if (v.size() < num_sites) throw std::invalid_argument("packed vector shorter than site count");
    ExcitationState s;
    s.site_amps = v.head(num_sites);
    s.atom_amps = v.tail(v.size() - num_sites);
    s.time = time;
    return s;
  }

  // Extends the atom block with zero amplitudes, for states built before the
  // atom list was known. Shrinking a block that holds amplitude is an error.
  ExcitationState with_atom_count(Eigen::Index n) const {
    ExcitationState s = *this;
    if (n == num_atoms()) return s;
    if (n < num_atoms()) throw std::invalid_argument("cannot drop atom amplitudes");
    Eigen::VectorXcd grown = Eigen::VectorXcd::Zero(n);
    grown.head(num_atoms()) = atom_amps;
    s.atom_amps = std::move(grown);
    return s;
  }
};

// Dense Hermitian single-excitation Hamiltonian of waveguide plus atoms at
// time t, dimension L + N with the waveguide block first. The hopping term
// enters as -h_j e^{i theta_j} on (l, l+j) with the conjugate mirrored below;
// open boundaries drop bonds past the end, periodic ones wrap. Each atom row
// carries its transition frequency on the diagonal and the instantaneous
// coupling to its site columns.
inline Eigen::MatrixXcd build_hamiltonian(const WaveguideSpec& wg,
                                          const std::vector<AtomSpec>& atoms, double t) {
  wg.validate();
  const int L = wg.length;
  const Eigen::Index N = static_cast<Eigen::Index>(atoms.size());
  for (const auto& a : atoms) a.validate(L);

  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(L + N, L + N);
  for (int l = 0; l < L; ++l) H(l, l) = wg.hops.omega0;
  for (const auto& term : wg.hops.terms) {
    const std::complex<double> above =
        -term.amplitude * std::exp(std::complex<double>(0.0, term.phase));
    for (int l = 0; l < L; ++l) {
      int dst = l + term.offset;
      if (dst >= L) {
        if (wg.boundary == Boundary::open) continue;
        dst -= L;
      }
      H(l, dst) += above;
      H(dst, l) += std::conj(above);
    }
  }
  for (Eigen::Index n = 0; n < N; ++n) {
    const Eigen::Index row = L + n;
    H(row, row) = atoms[static_cast<size_t>(n)].omega;
    const double g = atoms[static_cast<size_t>(n)].profile.value(t);
    if (!std::isfinite(g)) throw std::invalid_argument("coupling is not finite at t");
    for (int s : atoms[static_cast<size_t>(n)].sites) {
      H(row, s - 1) += g;
      H(s - 1, row) += g;
    }
  }
  return H;
}

// Gaussian wave packet over the sites, centred at l0 with width sigma and
// carrier wavenumber k0, normalized numerically after discretization. The
// packet must fit: the hard 3 sigma fence and a residual-tail check both
// guard against boundary clipping.
inline ExcitationState gaussian_packet(const WaveguideSpec& wg, double sigma, double l0,
                                       double k0) {
  wg.validate();
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("packet width must be positive");
  const int L = wg.length;
  if (!(3.0 * sigma < l0 && l0 < static_cast<double>(L) - 3.0 * sigma))
    throw std::invalid_argument("packet does not fit: need 3 sigma < l0 < L - 3 sigma");

  auto weight = [&](double l) { return std::exp(-(l - l0) * (l - l0) / (2.0 * sigma * sigma)); };

  double inside = 0.0;
  ExcitationState st;
  st.site_amps = Eigen::VectorXcd::Zero(L);
  for (int l = 1; l <= L; ++l) {
    const double w = weight(static_cast<double>(l));
    st.site_amps(l - 1) = w * std::exp(std::complex<double>(0.0, k0 * l));
    inside += w * w;
  }

  // mass of the ideal infinite-lattice packet that falls off the chain
  double outside = 0.0;
  const int reach = static_cast<int>(std::ceil(40.0 * sigma));
  for (int l = static_cast<int>(std::floor(l0)) - reach; l <= 0; ++l) {
    const double w = weight(static_cast<double>(l));
    outside += w * w;
  }
  for (int l = L + 1; l <= static_cast<int>(std::ceil(l0)) + reach; ++l) {
    const double w = weight(static_cast<double>(l));
    outside += w * w;
  }
  if (outside > 1e-5 * (inside + outside))
    throw std::invalid_argument("packet tail clipped by the boundary");

  st.site_amps /= std::sqrt(inside);
  return st;
}

// Rigid lattice translation of the site amplitudes by an integer shift; atom
// amplitudes ride along unchanged. Periodic chains wrap exactly and preserve
// the norm; open chains drop what would leave the lattice, which must be
// negligible.
inline ExcitationState translate_state(const ExcitationState& state, int shift,
                                       Boundary boundary = Boundary::periodic) {
  const Eigen::Index L = state.num_sites();
  if (L == 0) throw std::invalid_argument("state has no sites");
  ExcitationState out = state;
  out.site_amps = Eigen::VectorXcd::Zero(L);
  if (boundary == Boundary::periodic) {
    for (Eigen::Index l = 0; l < L; ++l) {
      Eigen::Index dst = (l + shift) % L;
      if (dst < 0) dst += L;
      out.site_amps(dst) = state.site_amps(l);
    }
    return out;
  }
  double lost = 0.0;
  for (Eigen::Index l = 0; l < L; ++l) {
    const Eigen::Index dst = l + shift;
    if (dst < 0 || dst >= L)
      lost += std::norm(state.site_amps(l));
    else
      out.site_amps(dst) = state.site_amps(l);
  }
  if (lost > 1e-6)
    throw std::invalid_argument("translation pushes amplitude off the open chain");
  return out;
}

}  // namespace crwave::lattice
