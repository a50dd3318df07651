#pragma once

// Generic quadrature-squeezing framework.
//
// For an operator B with quadratures X = (B + B^dag)/2, Y = (B - B^dag)/(2i)
// and [X, Y] = D/(2i), every squeezing measure below is a function of the
// four moments <B>, <B^2>, <B^dag B> and <D>. Negative values signal
// nonclassical (squeezed) light; -1 is the physical floor when <D> is the
// true commutator expectation.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "kds/errors.hpp"

namespace kds {

using cplx = std::complex<double>;

/// Smallest |<D>| accepted as a normalization.
inline constexpr double kDenominatorEpsilon = 1e-12;

struct QuadratureMoments {
  cplx mean_b{};         ///< <B>
  cplx mean_b_sq{};      ///< <B^2>
  double mean_bdag_b{};  ///< <B^dag B>
  double mean_d{1.0};    ///< <D>, real for every operator used here

  /// Residual of the Cauchy-Schwarz bound <B^dag B> - |<B>|^2 (>= 0 for a physical state).
  double cauchy_schwarz_slack() const { return mean_bdag_b - std::norm(mean_b); }

  /// True when the moments satisfy the invariants any physical state obeys.
  bool plausible(double tol = 1e-12) const {
    return std::isfinite(mean_bdag_b) && std::isfinite(mean_d) && mean_bdag_b >= -tol &&
           cauchy_schwarz_slack() >= -tol &&
           std::abs(mean_b_sq) <= mean_bdag_b + std::abs(mean_d) + tol;
  }
};

struct SqueezingFactors {
  double t{};
  double f{};  ///< X quadrature (phi = 0)
  double g{};  ///< Y quadrature (phi = pi/2)
  double v{};  ///< principal squeezing, min over phi
};

namespace detail {

inline double checked_denominator(const QuadratureMoments& m) {
  const double d = std::abs(m.mean_d);
  if (!(d > kDenominatorEpsilon)) {
    std::ostringstream os;
    os << "squeezing factor undefined: |<D>| = " << d << " <= " << kDenominatorEpsilon;
    throw DegenerateDenominator(os.str());
  }
  return d;
}

// Shared tail of every factor: <D> - |<D>| vanishes for positive <D>.
inline double sign_offset(const QuadratureMoments& m) { return m.mean_d - std::abs(m.mean_d); }

}  // namespace detail

/// Squeezing factor of X_phi = (B e^{-i phi} + B^dag e^{i phi})/2:
/// V_phi = [4 <(Delta X_phi)^2> - |<D>|] / |<D>|.
inline double factor_phase(const QuadratureMoments& m, double phi) {
  const double d = detail::checked_denominator(m);
  // Exact rotations at the two canonical angles keep factor_x/factor_y free of
  // the rounding in cos(pi/2).
  cplx rot1;
  cplx rot2;
  if (phi == 0.0) {
    rot1 = {1.0, 0.0};
    rot2 = {1.0, 0.0};
  } else if (phi == std::numbers::pi / 2) {
    rot1 = {0.0, -1.0};
    rot2 = {-1.0, 0.0};
  } else {
    rot1 = std::polar(1.0, -phi);
    rot2 = std::polar(1.0, -2.0 * phi);
  }
  const double re_sq = (m.mean_b_sq * rot2).real();
  const double re_mean = (m.mean_b * rot1).real();
  return (2.0 * re_sq + 2.0 * m.mean_bdag_b + detail::sign_offset(m) - 4.0 * re_mean * re_mean) / d;
}

/// F: squeezing factor of X.
inline double factor_x(const QuadratureMoments& m) { return factor_phase(m, 0.0); }

/// G: squeezing factor of Y.
inline double factor_y(const QuadratureMoments& m) { return factor_phase(m, std::numbers::pi / 2); }

/// Principal squeezing: the minimum of factor_phase over phi, in closed form.
inline double principal(const QuadratureMoments& m) {
  const double d = detail::checked_denominator(m);
  const double excess = std::abs(m.mean_b_sq - m.mean_b * m.mean_b);
  return (m.mean_d + 2.0 * m.mean_bdag_b - 2.0 * std::norm(m.mean_b) - std::abs(m.mean_d) -
          2.0 * excess) /
         d;
}

/// The phase at which factor_phase attains principal(m).
inline double principal_angle(const QuadratureMoments& m) {
  const cplx c = m.mean_b_sq - m.mean_b * m.mean_b;
  // 2 Re(c e^{-2i phi}) is most negative when 2 phi = arg(c) + pi.
  double phi = 0.5 * (std::arg(c) + std::numbers::pi);
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  return phi;
}

inline SqueezingFactors squeezing(const QuadratureMoments& m, double t = 0.0) {
  return {t, factor_x(m), factor_y(m), principal(m)};
}

}  // namespace kds
