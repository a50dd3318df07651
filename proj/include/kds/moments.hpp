#pragma once

// Closed-form coherent-state moments of the exact Heisenberg solution
//
//   A1(t) = exp(-i lambda N) (C a1 + S a2^dag),
//   A2(t) = exp(+i lambda N) (C a2 + S a1^dag),
//
// with lambda = 2 chi_bar t, C = cosh(kt), S = sinh(kt), N = n1 - n2 and the
// number-difference exponential standing to the left. Derivation recipe:
//
//   * move every exp(i x N) to the right of creation operators and to the
//     left of annihilation operators with f(N) a1^dag = a1^dag f(N+1),
//     f(N) a2^dag = a2^dag f(N-1) and their adjoints;
//   * evaluate the remaining <exp(i x N)> on |alpha1, alpha2> as the product
//     of displacement kernels kernel(alpha1, x) * kernel(alpha2, -x).
//
// This gives, with E(x) = <exp(i x N)>,
//
//   <A1>          = E(-lambda) (C a1 + S a2 e^{i lambda})
//   <A1^2>        = e^{-i lambda} E(-2 lambda) (C a1 + S a2 e^{2 i lambda})^2
//   <A1^dag A1>   = (C a1 + S a2)^2 + S^2
//   <A1 A2>       = e^{i lambda} [(C a1 + S a2)(C a2 + S a1) + C S]
//   <A1^dag A2>   = E(2 lambda) [a1 a2 (C^2 + S^2) + C S (a1^2 e^{2 i lambda} + a2^2 e^{-2 i lambda})]
//
// (a_j standing for the real amplitudes alpha_j), mode 2 following from the
// relabelling 1 <-> 2. For the product B = A1 A2 the Kerr phases collapse to a
// c-number, A1 A2 = e^{i lambda} Y1 Y2 with Y_j the chi_bar = 0 operators, and
// Wick's theorem on the two-mode squeezed vacuum gives, with y1 = C a1 + S a2,
// y2 = C a2 + S a1 and z = y1 y2,
//
//   <(A1 A2)^2>                 = e^{2 i lambda} (z^2 + 4 z C S + 2 C^2 S^2)
//   <(A1 A2)^dag (A1 A2)>       = z^2 + 2 z C S + (y1^2 + y2^2) S^2 + C^2 S^2 + S^4

#include <cmath>
#include <complex>

#include "kds/params.hpp"
#include "kds/quad_core.hpp"

namespace kds {

/// <alpha| exp(i lambda n) |alpha> = exp(alpha^2 (e^{i lambda} - 1)) for real alpha.
inline cplx kernel(double alpha, double lambda) {
  const double a2 = alpha * alpha;
  return std::polar(std::exp(a2 * (std::cos(lambda) - 1.0)), a2 * std::sin(lambda));
}

/// <exp(i x (n1 - n2))> on the initial coherent state.
inline cplx number_difference_kernel(const SystemParams& p, double x) {
  return kernel(p.alpha1(), x) * kernel(p.alpha2(), -x);
}

/// Every scalar moment the squeezing kinds are assembled from.
struct RawMoments {
  cplx a1;             ///< <A1>
  cplx a1_sq;          ///< <A1^2>
  double n1;           ///< <A1^dag A1>
  cplx a2;             ///< <A2>
  cplx a2_sq;          ///< <A2^2>
  double n2;           ///< <A2^dag A2>
  cplx a1_a2;          ///< <A1 A2>
  cplx a1dag_a2;       ///< <A1^dag A2>
  cplx a1a2_sq;        ///< <A1^2 A2^2>
  double a1a2_number;  ///< <A1^dag A1 A2^dag A2>
};

namespace detail {

struct SingleMode {
  cplx mean;
  cplx mean_sq;
  double number;
};

// Mode-1 moments; mode 2 is the same expression on the relabelled parameters.
inline SingleMode mode_one(const SystemParams& p, double t) {
  require_time(t);
  const double c = std::cosh(p.k() * t);
  const double s = std::sinh(p.k() * t);
  const double lambda = 2.0 * p.chi_bar() * t;
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  const cplx lin = c * a1 + s * a2 * std::polar(1.0, lambda);
  const cplx quad = c * a1 + s * a2 * std::polar(1.0, 2.0 * lambda);
  const double y = c * a1 + s * a2;
  return {number_difference_kernel(p, -lambda) * lin,
          std::polar(1.0, -lambda) * number_difference_kernel(p, -2.0 * lambda) * quad * quad,
          y * y + s * s};
}

}  // namespace detail

inline RawMoments raw_moments(const SystemParams& p, double t) {
  const auto m1 = detail::mode_one(p, t);
  const auto m2 = detail::mode_one(p.swapped(), t);

  const double c = std::cosh(p.k() * t);
  const double s = std::sinh(p.k() * t);
  const double lambda = 2.0 * p.chi_bar() * t;
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  const double y1 = c * a1 + s * a2;
  const double y2 = c * a2 + s * a1;
  const double z = y1 * y2;
  const double cs = c * s;

  RawMoments r{};
  r.a1 = m1.mean;
  r.a1_sq = m1.mean_sq;
  r.n1 = m1.number;
  r.a2 = m2.mean;
  r.a2_sq = m2.mean_sq;
  r.n2 = m2.number;
  r.a1_a2 = std::polar(1.0, lambda) * (z + cs);
  r.a1dag_a2 = number_difference_kernel(p, 2.0 * lambda) *
               (a1 * a2 * (c * c + s * s) +
                cs * (a1 * a1 * std::polar(1.0, 2.0 * lambda) + a2 * a2 * std::polar(1.0, -2.0 * lambda)));
  r.a1a2_sq = std::polar(1.0, 2.0 * lambda) * (z * z + 4.0 * z * cs + 2.0 * cs * cs);
  r.a1a2_number = z * z + 2.0 * z * cs + (y1 * y1 + y2 * y2) * s * s + cs * cs + s * s * s * s;
  return r;
}

/// B = A_j(t), D = 1.
inline QuadratureMoments mode_moments(const SystemParams& p, double t, Mode which) {
  const auto m = detail::mode_one(which == Mode::One ? p : p.swapped(), t);
  return {m.mean, m.mean_sq, m.number, 1.0};
}

/// Two-mode quantities: B = A1 + A2, D = 2.
inline QuadratureMoments pair_moments_from(const RawMoments& r) {
  return {r.a1 + r.a2, r.a1_sq + r.a2_sq + 2.0 * r.a1_a2, r.n1 + r.n2 + 2.0 * r.a1dag_a2.real(), 2.0};
}

/// Sum quantities: B = A1 A2 with D per the chosen convention.
inline QuadratureMoments sum_moments_from(const RawMoments& r, SumConvention conv) {
  const double d = r.n1 + r.n2 + (conv == SumConvention::CommutatorConsistent ? 1.0 : 0.0);
  return {r.a1_a2, r.a1a2_sq, r.a1a2_number, d};
}

inline QuadratureMoments pair_moments(const SystemParams& p, double t) {
  return pair_moments_from(raw_moments(p, t));
}

inline QuadratureMoments sum_moments(const SystemParams& p, double t,
                                     SumConvention conv = SumConvention::NumberSum) {
  return sum_moments_from(raw_moments(p, t), conv);
}

/// Assembles the moment set of any squeezing kind from a raw moment table.
inline QuadratureMoments assemble(const RawMoments& r, SqueezeKind kind) {
  switch (kind.type) {
    case SqueezeKind::Type::SingleMode1: return {r.a1, r.a1_sq, r.n1, 1.0};
    case SqueezeKind::Type::SingleMode2: return {r.a2, r.a2_sq, r.n2, 1.0};
    case SqueezeKind::Type::TwoMode: return pair_moments_from(r);
    case SqueezeKind::Type::Sum: return sum_moments_from(r, kind.convention);
  }
  throw InvalidParameter("unknown squeezing kind");
}

inline QuadratureMoments moments(const SystemParams& p, double t, SqueezeKind kind) {
  return assemble(raw_moments(p, t), kind);
}

}  // namespace kds
