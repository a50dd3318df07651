#pragma once

// Truncated two-mode Fock-space oracle.
//
// The down-conversion pump e^{-i omega t} with omega = omega1 + omega2 and the
// free terms omega_j n_j are removed by the frame a_j -> a_j e^{-i omega_j t},
// leaving a time-independent generator. Two Kerr orderings are offered:
//
//   Solvable       chi_bar (n1 - n2)^2
//   NormalOrdered  chi_1 n1(n1-1) + chi_2 n2(n2-1) + chi_bar n1 n2, chi_j = -chi_bar/2
//
// Only the first reproduces the exact Heisenberg solution: the normal-ordered
// form differs from -chi_bar/2 (n1 - n2)^2 by chi_bar/2 (n1 + n2), which does
// not commute with the down-conversion term. With the solvable generator the
// closed-form operators are A_j(t) = e^{i chi_bar t} a_j^H(t), so moments are
// read out with a phase e^{i chi_bar t} per annihilation operator (and its
// conjugate per creation operator).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <vector>

#include "kds/errors.hpp"
#include "kds/moments.hpp"
#include "kds/params.hpp"
#include "kds/quad_core.hpp"

namespace kds {

enum class Integrator {
  Spectral,  ///< exact propagation in the eigenbasis of the truncated generator
  Taylor,    ///< fixed-step 12th-order Taylor expansion of exp(-i H dt)
};

struct OracleConfig {
  int n_max = 24;
  double dt = 1e-3;  ///< Taylor step in units of 1 / max(|chi_bar|, k, 1)
  double tau_norm = 1e-10;
  double tau_tail = 1e-10;
  double tau_trunc = 1e-10;
  Integrator integrator = Integrator::Spectral;

  void validate() const {
    if (n_max < 4) throw InvalidParameter("oracle cutoff n_max must be >= 4");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("oracle step dt must be > 0");
    if (!(tau_norm > 0.0) || !(tau_tail > 0.0) || !(tau_trunc > 0.0)) {
      throw InvalidParameter("oracle tolerances must be > 0");
    }
  }
};

enum class HamiltonianForm { Solvable, NormalOrdered };

/// Amplitudes c(n1, n2), 0 <= n_i <= n_max, stored row-major in n1.
class FockState {
 public:
  explicit FockState(int n_max) : n_max_(n_max), amp_(Eigen::VectorXcd::Zero(dim(n_max))) {}
  FockState(int n_max, Eigen::VectorXcd amp) : n_max_(n_max), amp_(std::move(amp)) {
    if (amp_.size() != dim(n_max)) throw InvalidParameter("amplitude vector size does not match cutoff");
  }

  static Eigen::Index dim(int n_max) { return Eigen::Index(n_max + 1) * (n_max + 1); }
  Eigen::Index index(int n1, int n2) const { return Eigen::Index(n1) * (n_max_ + 1) + n2; }

  int n_max() const { return n_max_; }
  cplx amp(int n1, int n2) const { return amp_[index(n1, n2)]; }
  cplx& amp(int n1, int n2) { return amp_[index(n1, n2)]; }
  const Eigen::VectorXcd& vector() const { return amp_; }
  Eigen::VectorXcd& vector() { return amp_; }

  double norm_sq() const { return amp_.squaredNorm(); }

  /// Normalized population with n1 or n2 in the top two shells.
  double tail_population() const {
    double tail = 0.0;
    for (int n1 = 0; n1 <= n_max_; ++n1) {
      for (int n2 = 0; n2 <= n_max_; ++n2) {
        if (n1 >= n_max_ - 1 || n2 >= n_max_ - 1) tail += std::norm(amp(n1, n2));
      }
    }
    return tail / norm_sq();
  }

 private:
  int n_max_;
  Eigen::VectorXcd amp_;
};

struct Hamiltonian {
  Eigen::SparseMatrix<cplx> matrix;
  int n_max{};
  double readout_rate{};  ///< frame phase per annihilation operator, rad per unit time
};

inline Hamiltonian build_hamiltonian(const SystemParams& p, int n_max,
                                     HamiltonianForm form = HamiltonianForm::Solvable) {
  if (n_max < 1) throw InvalidParameter("cutoff must be >= 1");
  const Eigen::Index d = FockState::dim(n_max);
  const auto idx = [n_max](int n1, int n2) { return Eigen::Index(n1) * (n_max + 1) + n2; };
  const cplx i{0.0, 1.0};

  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(static_cast<std::size_t>(3 * d));
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      double diag;
      if (form == HamiltonianForm::Solvable) {
        diag = p.chi_bar() * double(n1 - n2) * double(n1 - n2);
      } else {
        diag = p.chi_self() * n1 * (n1 - 1.0) + p.chi_self() * n2 * (n2 - 1.0) +
               p.chi_bar() * double(n1) * n2;
      }
      if (diag != 0.0) entries.emplace_back(idx(n1, n2), idx(n1, n2), diag);
      if (n1 >= 1 && n2 >= 1 && p.k() != 0.0) {
        // -ik a1 a2 lowers both modes; +ik a1^dag a2^dag raises them.
        const double amp = p.k() * std::sqrt(double(n1) * n2);
        entries.emplace_back(idx(n1 - 1, n2 - 1), idx(n1, n2), -i * amp);
        entries.emplace_back(idx(n1, n2), idx(n1 - 1, n2 - 1), i * amp);
      }
    }
  }
  Hamiltonian h;
  h.matrix.resize(d, d);
  h.matrix.setFromTriplets(entries.begin(), entries.end());
  h.n_max = n_max;
  h.readout_rate = form == HamiltonianForm::Solvable ? p.chi_bar() : 0.0;
  return h;
}

/// Truncated (not renormalized) product coherent state.
inline FockState coherent_state(double alpha1, double alpha2, int n_max, double tau_trunc = 1e-10) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0)) throw InvalidParameter("coherent amplitudes must be >= 0");
  if (n_max < 1) throw InvalidParameter("cutoff must be >= 1");
  const auto coefficients = [n_max](double alpha) {
    std::vector<double> c(static_cast<std::size_t>(n_max) + 1);
    c[0] = std::exp(-0.5 * alpha * alpha);
    for (int n = 1; n <= n_max; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    return c;
  };
  const auto c1 = coefficients(alpha1);
  const auto c2 = coefficients(alpha2);
  FockState s(n_max);
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) s.amp(n1, n2) = c1[n1] * c2[n2];
  }
  const double deficit = 1.0 - s.norm_sq();
  if (deficit > tau_trunc) {
    std::ostringstream os;
    os << "coherent state (" << alpha1 << ", " << alpha2 << ") loses " << deficit
       << " of its norm at cutoff " << n_max;
    throw TruncationTooSevere(os.str());
  }
  return s;
}

namespace detail {

// Applies a1^q a2^s.
inline FockState lower(const FockState& in, int q, int s) {
  const int n_max = in.n_max();
  FockState out(n_max);
  for (int n1 = q; n1 <= n_max; ++n1) {
    double f1 = 1.0;
    for (int j = 0; j < q; ++j) f1 *= std::sqrt(double(n1 - j));
    for (int n2 = s; n2 <= n_max; ++n2) {
      double f2 = 1.0;
      for (int j = 0; j < s; ++j) f2 *= std::sqrt(double(n2 - j));
      out.amp(n1 - q, n2 - s) = f1 * f2 * in.amp(n1, n2);
    }
  }
  return out;
}

}  // namespace detail

/// Normally ordered <a1^dag^p a1^q a2^dag^r a2^s>, divided by the state norm.
inline cplx expect(const FockState& state, int p, int q, int r, int s) {
  if (p < 0 || q < 0 || r < 0 || s < 0 || p + q > state.n_max() || r + s > state.n_max()) {
    throw InvalidParameter("moment order exceeds the cutoff");
  }
  const FockState left = detail::lower(state, p, r);
  const FockState right = detail::lower(state, q, s);
  return left.vector().dot(right.vector()) / state.norm_sq();
}

/// Fixed-step Taylor propagation; steps are shortened so they divide t exactly.
inline FockState evolve_taylor(const FockState& state, const Hamiltonian& h, double t, double dt) {
  if (t == 0.0) return state;
  const auto steps = static_cast<long>(std::ceil(t / dt - 1e-12));
  const double h_step = t / double(steps);
  const cplx factor{0.0, -h_step};
  Eigen::VectorXcd psi = state.vector();
  Eigen::VectorXcd term(psi.size());
  Eigen::VectorXcd next(psi.size());
  for (long n = 0; n < steps; ++n) {
    next = psi;
    term = psi;
    for (int order = 1; order <= 12; ++order) {
      term = (factor / double(order)) * (h.matrix * term);
      next += term;
    }
    psi.swap(next);
  }
  return FockState(state.n_max(), std::move(psi));
}

/// Exact propagator of a truncated generator through its eigendecomposition.
/// Immutable after construction, so one instance can serve concurrent callers.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h) : n_max_(h.n_max) {
    const Eigen::MatrixXcd dense = Eigen::MatrixXcd(h.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition of the generator failed");
    energies_ = solver.eigenvalues();
    basis_ = solver.eigenvectors();
  }

  FockState evolve(const FockState& state, double t) const {
    if (state.n_max() != n_max_) throw InvalidParameter("state and generator cutoffs differ");
    if (t == 0.0) return state;
    Eigen::VectorXcd coeff = basis_.adjoint() * state.vector();
    for (Eigen::Index j = 0; j < coeff.size(); ++j) coeff[j] *= std::polar(1.0, -energies_[j] * t);
    return FockState(n_max_, basis_ * coeff);
  }

 private:
  int n_max_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd basis_;
};

namespace detail {

inline void check_evolution(const FockState& before, const FockState& after, double t,
                            const OracleConfig& cfg) {
  const double drift = std::abs(after.norm_sq() - before.norm_sq());
  if (drift > cfg.tau_norm) {
    std::ostringstream os;
    os << "norm drifted by " << drift << " at t = " << t;
    throw NormDrift(os.str());
  }
  const double tail = after.tail_population();
  if (tail > cfg.tau_tail) {
    std::ostringstream os;
    os << "population " << tail << " in the top two shells at t = " << t << " (cutoff "
       << after.n_max() << "); increase the cutoff or shorten the interaction time";
    throw TailOverflow(os.str());
  }
}

inline double taylor_step(const SystemParams& p, const OracleConfig& cfg) {
  return cfg.dt / std::max({std::abs(p.chi_bar()), p.k(), 1.0});
}

}  // namespace detail

/// Evolves `state` under `h` for time t, enforcing the norm and tail budgets.
inline FockState evolve(const FockState& state, const Hamiltonian& h, double t, const OracleConfig& cfg,
                        const SystemParams* params = nullptr) {
  detail::require_time(t);
  cfg.validate();
  FockState out = state;
  if (cfg.integrator == Integrator::Spectral) {
    out = Propagator(h).evolve(state, t);
  } else {
    const double dt = params ? detail::taylor_step(*params, cfg) : cfg.dt;
    out = evolve_taylor(state, h, t, dt);
  }
  detail::check_evolution(state, out, t, cfg);
  return out;
}

/// Conserved-quantity readings of an evolved state.
struct OracleDiagnostics {
  double norm_sq;
  double number_difference;     ///< <n1 - n2>
  double number_difference_sq;  ///< <(n1 - n2)^2>
  double energy;                ///< <H_rot>
  double tail;
};

/// Numerical evolution of one parameter set from its coherent initial state.
class FockOracle {
 public:
  FockOracle(const SystemParams& p, OracleConfig cfg = {},
             HamiltonianForm form = HamiltonianForm::Solvable)
      : FockOracle(p, cfg, form, nullptr) {}

  /// Reuses a propagator built for the same couplings, cutoff and form
  /// (the generator does not depend on the amplitudes).
  FockOracle(const SystemParams& p, OracleConfig cfg, HamiltonianForm form,
             std::shared_ptr<const Propagator> shared)
      : params_(p),
        cfg_((cfg.validate(), cfg)),
        hamiltonian_(build_hamiltonian(p, cfg.n_max, form)),
        initial_(coherent_state(p.alpha1(), p.alpha2(), cfg.n_max, cfg.tau_trunc)),
        propagator_(std::move(shared)) {
    if (cfg_.integrator == Integrator::Spectral && !propagator_) {
      propagator_ = std::make_shared<const Propagator>(hamiltonian_);
    }
  }

  const std::shared_ptr<const Propagator>& propagator() const { return propagator_; }

  const SystemParams& params() const { return params_; }
  const OracleConfig& config() const { return cfg_; }
  const Hamiltonian& hamiltonian() const { return hamiltonian_; }
  const FockState& initial_state() const { return initial_; }

  FockState state_at(double t) const {
    detail::require_time(t);
    FockState out = cfg_.integrator == Integrator::Spectral
                        ? propagator_->evolve(initial_, t)
                        : evolve_taylor(initial_, hamiltonian_, t, detail::taylor_step(params_, cfg_));
    detail::check_evolution(initial_, out, t, cfg_);
    return out;
  }

  RawMoments raw_moments(double t) const { return raw_moments_of(state_at(t), t); }

  RawMoments raw_moments_of(const FockState& s, double t) const {
    const double rate = hamiltonian_.readout_rate * t;
    // Net annihilation count picks up e^{i rate} each.
    const auto phased = [&](int p, int q, int r, int u) {
      return expect(s, p, q, r, u) * std::polar(1.0, rate * double(q + u - p - r));
    };
    RawMoments m{};
    m.a1 = phased(0, 1, 0, 0);
    m.a1_sq = phased(0, 2, 0, 0);
    m.n1 = expect(s, 1, 1, 0, 0).real();
    m.a2 = phased(0, 0, 0, 1);
    m.a2_sq = phased(0, 0, 0, 2);
    m.n2 = expect(s, 0, 0, 1, 1).real();
    m.a1_a2 = phased(0, 1, 0, 1);
    m.a1dag_a2 = phased(1, 0, 0, 1);
    m.a1a2_sq = phased(0, 2, 0, 2);
    m.a1a2_number = expect(s, 1, 1, 1, 1).real();
    return m;
  }

  QuadratureMoments moments(double t, SqueezeKind kind) const { return assemble(raw_moments(t), kind); }

  OracleDiagnostics diagnostics(double t) const { return diagnostics_of(state_at(t)); }

  OracleDiagnostics diagnostics_of(const FockState& s) const {
    const double norm = s.norm_sq();
    double diff = 0.0;
    double diff_sq = 0.0;
    for (int n1 = 0; n1 <= s.n_max(); ++n1) {
      for (int n2 = 0; n2 <= s.n_max(); ++n2) {
        const double w = std::norm(s.amp(n1, n2));
        diff += w * (n1 - n2);
        diff_sq += w * double(n1 - n2) * (n1 - n2);
      }
    }
    const Eigen::VectorXcd h_psi = hamiltonian_.matrix * s.vector();
    const double energy = s.vector().dot(h_psi).real() / norm;
    return {norm, diff / norm, diff_sq / norm, energy, s.tail_population()};
  }

 private:
  SystemParams params_;
  OracleConfig cfg_;
  Hamiltonian hamiltonian_;
  FockState initial_;
  std::shared_ptr<const Propagator> propagator_;  // null for the Taylor integrator
};

/// Oracle moment set for one (parameters, time, kind) cell.
inline QuadratureMoments moment_set_numeric(const SystemParams& p, double t, SqueezeKind kind,
                                            const OracleConfig& cfg = {}) {
  return FockOracle(p, cfg).moments(t, kind);
}

}  // namespace kds
