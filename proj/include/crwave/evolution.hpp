#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "crwave/lattice.hpp"

namespace crwave::evolve {

enum class EvolveMethod { exact_diagonal, stepped_unitary };

struct EvolutionConfig {
  double t_end = 0.0;
  double dt = 0.0;
  EvolveMethod method = EvolveMethod::exact_diagonal;
  int record_every = 1;

  long num_steps() const { return std::lround(t_end / dt); }

  void validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end))
      throw std::invalid_argument("evolution horizon must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step must be positive");
    const long n = num_steps();
    if (n < 1 || std::abs(static_cast<double>(n) * dt - t_end) > 1e-9 * std::max(1.0, t_end))
      throw std::invalid_argument("t_end must be an integer number of steps");
    if (record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  }
};

// Recorded history of one run: populations per site and atom on the sampled
// time grid, the squared norm at each sample, and the final state. The pf
// series is filled only by drivers that track transport fidelity.
struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd site_pops;
  Eigen::MatrixXd atom_pops;
  std::vector<double> norms;
  std::vector<double> pf;
  std::vector<double> pf_times;
  lattice::ExcitationState final_state;
};

namespace detail {

inline std::vector<long> recorded_steps(long n_steps, int record_every) {
  std::vector<long> idx;
  for (long i = 0; i <= n_steps; i += record_every) idx.push_back(i);
  if (idx.back() != n_steps) idx.push_back(n_steps);
  return idx;
}

inline void append_sample(Trajectory& tr, const lattice::ExcitationState& st, long row) {
  tr.times.push_back(st.time);
  tr.site_pops.row(row) = st.site_amps.cwiseAbs2().real().transpose();
  if (st.num_atoms() > 0) tr.atom_pops.row(row) = st.atom_amps.cwiseAbs2().real().transpose();
  tr.norms.push_back(st.norm_sq());
}

}  // namespace detail

// Evolution under a fixed Hermitian matrix via one full eigendecomposition;
// states at arbitrary times then cost a basis rotation each, with no stepping
// error to account for.
class StaticPropagator {
 public:
  explicit StaticPropagator(const Eigen::MatrixXcd& H) {
    if (H.rows() != H.cols()) throw std::invalid_argument("hamiltonian must be square");
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("hamiltonian must be hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    vals_ = es.eigenvalues();
    vecs_ = es.eigenvectors();
  }

  Eigen::Index dim() const { return vals_.size(); }
  const Eigen::VectorXd& eigenvalues() const { return vals_; }

  Eigen::VectorXcd at(const Eigen::VectorXcd& psi0, double t) const {
    if (psi0.size() != dim()) throw std::invalid_argument("state dimension mismatch");
    Eigen::VectorXcd proj = vecs_.adjoint() * psi0;
    for (Eigen::Index m = 0; m < proj.size(); ++m)
      proj(m) *= std::exp(std::complex<double>(0.0, -vals_(m) * t));
    return vecs_ * proj;
  }

 private:
  Eigen::VectorXd vals_;
  Eigen::MatrixXcd vecs_;
};

// Time evolution under a static Hamiltonian, sampled on the configured grid.
inline Trajectory evolve_static(const Eigen::MatrixXcd& H, const lattice::ExcitationState& psi0,
                                const EvolutionConfig& cfg) {
  cfg.validate();
  const Eigen::Index L = psi0.num_sites();
  const Eigen::Index N = psi0.num_atoms();
  if (L + N != H.rows()) throw std::invalid_argument("state dimension does not match hamiltonian");

  const StaticPropagator prop(H);
  const Eigen::VectorXcd packed0 = psi0.packed();
  const auto rows = detail::recorded_steps(cfg.num_steps(), cfg.record_every);

  Trajectory tr;
  tr.site_pops.resize(static_cast<Eigen::Index>(rows.size()), L);
  tr.atom_pops.resize(static_cast<Eigen::Index>(rows.size()), N);
  for (size_t r = 0; r < rows.size(); ++r) {
    const double t = static_cast<double>(rows[r]) * cfg.dt;
    auto st = lattice::ExcitationState::unpack(prop.at(packed0, t), L, psi0.time + t);
    detail::append_sample(tr, st, static_cast<long>(r));
    if (r + 1 == rows.size()) tr.final_state = std::move(st);
  }
  return tr;
}

namespace detail {

// One step of psi -> exp(-i H dt) psi through a Krylov subspace. With the
// step guard keeping ||H|| dt small the subspace dimension is generous; full
// reorthogonalization keeps the basis clean so the step is unitary to
// roundoff.
inline Eigen::VectorXcd krylov_exp_step(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi,
                                        double dt, int m = 12) {
  const Eigen::Index dim = psi.size();
  const int mm = static_cast<int>(std::min<Eigen::Index>(m, dim));
  const double beta0 = psi.norm();
  if (beta0 == 0.0) return psi;

  Eigen::MatrixXcd V(dim, mm);
  Eigen::VectorXd alpha(mm), beta(mm);
  V.col(0) = psi / beta0;
  int used = mm;
  for (int j = 0; j < mm; ++j) {
    Eigen::VectorXcd w = H * V.col(j);
    alpha(j) = std::real(V.col(j).dot(w));
    w -= alpha(j) * V.col(j);
    if (j > 0) w -= beta(j - 1) * V.col(j - 1);
    for (int k = 0; k <= j; ++k) w -= V.col(k).dot(w) * V.col(k);
    const double b = w.norm();
    if (j + 1 < mm) {
      if (b < 1e-14 * std::abs(alpha(j)) + 1e-300) {
        used = j + 1;
        break;
      }
      beta(j) = b;
      V.col(j + 1) = w / b;
    }
  }

  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
  for (int j = 0; j < used; ++j) {
    T(j, j) = alpha(j);
    if (j + 1 < used) {
      T(j, j + 1) = beta(j);
      T(j + 1, j) = beta(j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  Eigen::VectorXcd phases(used);
  for (int j = 0; j < used; ++j)
    phases(j) = std::exp(std::complex<double>(0.0, -es.eigenvalues()(j) * dt));
  const Eigen::VectorXd e1_coeffs = es.eigenvectors().row(0).transpose();
  Eigen::VectorXcd small = es.eigenvectors() * (phases.array() * e1_coeffs.array()).matrix();
  return beta0 * (V.leftCols(used) * small);
}

// Largest-row-sum bound on the spectrum of the coupled system with every
// coupling at its peak magnitude, used to police the step size before a run.
inline double spectral_bound(const lattice::WaveguideSpec& wg,
                             const std::vector<lattice::AtomSpec>& atoms) {
  double hop_sum = 0.0;
  for (const auto& term : wg.hops.terms) hop_sum += std::abs(term.amplitude);
  std::vector<double> site_extra(static_cast<size_t>(wg.length), 0.0);
  double bound = 0.0;
  for (const auto& a : atoms) {
    double row = std::abs(a.omega);
    for (int s : a.sites) {
      row += a.profile.max_magnitude();
      site_extra[static_cast<size_t>(s - 1)] += a.profile.max_magnitude();
    }
    bound = std::max(bound, row);
  }
  double site_base = std::abs(wg.hops.omega0) + 2.0 * hop_sum;
  for (double extra : site_extra) bound = std::max(bound, site_base + extra);
  bound = std::max(bound, site_base);
  return bound;
}

}  // namespace detail

// Time-ordered evolution under time-dependent couplings: per-step exact
// exponential of the Hamiltonian frozen at the step midpoint, which is
// second order in dt. Only the atom-coupling entries change between steps,
// so the waveguide block is assembled once.
inline Trajectory evolve_timedep(const lattice::WaveguideSpec& wg,
                                 const std::vector<lattice::AtomSpec>& atoms,
                                 const lattice::ExcitationState& psi0,
                                 const EvolutionConfig& cfg) {
  cfg.validate();
  if (cfg.method != EvolveMethod::stepped_unitary)
    throw std::invalid_argument("time-dependent evolution requires the stepped_unitary method");
  const Eigen::Index L = wg.length;
  const Eigen::Index N = static_cast<Eigen::Index>(atoms.size());
  if (psi0.num_sites() != L || psi0.num_atoms() != N)
    throw std::invalid_argument("state dimensions do not match waveguide and atom count");

  const double bound = detail::spectral_bound(wg, atoms);
  if (cfg.dt * bound > 0.1) {
    std::ostringstream msg;
    msg << "step too large for accuracy guard: dt * spectral bound = " << cfg.dt * bound
        << " > 0.1; use dt <= " << 0.1 / bound;
    throw std::invalid_argument(msg.str());
  }

  Eigen::MatrixXcd H = lattice::build_hamiltonian(wg, atoms, 0.0);
  const long n_steps = cfg.num_steps();
  const auto rows = detail::recorded_steps(n_steps, cfg.record_every);

  Trajectory tr;
  tr.site_pops.resize(static_cast<Eigen::Index>(rows.size()), L);
  tr.atom_pops.resize(static_cast<Eigen::Index>(rows.size()), N);

  lattice::ExcitationState st = psi0;
  Eigen::VectorXcd psi = st.packed();
  size_t next_row = 0;
  auto maybe_record = [&](long step) {
    if (next_row < rows.size() && rows[next_row] == step) {
      st = lattice::ExcitationState::unpack(psi, L, psi0.time + static_cast<double>(step) * cfg.dt);
      detail::append_sample(tr, st, static_cast<long>(next_row));
      ++next_row;
    }
  };
  maybe_record(0);

  for (long i = 0; i < n_steps; ++i) {
    const double t_mid = (static_cast<double>(i) + 0.5) * cfg.dt;
    for (Eigen::Index n = 0; n < N; ++n) {
      const auto& atom = atoms[static_cast<size_t>(n)];
      const double g = atom.profile.value(t_mid);
      for (int s : atom.sites) {
        H(L + n, s - 1) = g;
        H(s - 1, L + n) = g;
      }
    }
    psi = detail::krylov_exp_step(H, psi, cfg.dt);
    maybe_record(i + 1);
  }
  tr.final_state = lattice::ExcitationState::unpack(psi, L, psi0.time + cfg.t_end);
  return tr;
}

}  // namespace crwave::evolve
