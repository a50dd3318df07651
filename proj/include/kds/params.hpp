#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include "kds/errors.hpp"

namespace kds {

/// Couplings and initial coherent amplitudes of the Kerr-down-conversion system.
///
/// The self-Kerr couplings are not free: exact solvability pins them to
/// chi_1 = chi_2 = -chi_bar / 2, so only the cross coupling is stored.
class SystemParams {
 public:
  SystemParams() = default;

  SystemParams(double chi_bar, double k, double alpha1, double alpha2)
      : chi_bar_(chi_bar), k_(k), alpha1_(alpha1), alpha2_(alpha2) {
    require(std::isfinite(chi_bar), "chi_bar must be finite");
    require(std::isfinite(k) && k >= 0.0, "k must be finite and >= 0");
    require(std::isfinite(alpha1) && alpha1 >= 0.0, "alpha1 must be real, finite and >= 0");
    require(std::isfinite(alpha2) && alpha2 >= 0.0, "alpha2 must be real, finite and >= 0");
  }

  double chi_bar() const { return chi_bar_; }
  double k() const { return k_; }
  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  double chi_self() const { return -0.5 * chi_bar_; }

  SystemParams with_chi_bar(double chi_bar) const { return {chi_bar, k_, alpha1_, alpha2_}; }
  SystemParams with_k(double k) const { return {chi_bar_, k, alpha1_, alpha2_}; }
  /// Mode relabelling 1 <-> 2.
  SystemParams swapped() const { return {chi_bar_, k_, alpha2_, alpha1_}; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;

 private:
  static void require(bool ok, const char* what) {
    if (!ok) throw InvalidParameter(what);
  }

  double chi_bar_{0.0};
  double k_{0.0};
  double alpha1_{0.0};
  double alpha2_{0.0};
};

inline std::string describe(const SystemParams& p) {
  std::ostringstream os;
  os << "chi=" << p.chi_bar() << " k=" << p.k() << " alpha1=" << p.alpha1()
     << " alpha2=" << p.alpha2();
  return os.str();
}

/// Time-dependent abbreviations shared by the printed squeezing formulas.
struct AuxQuantities {
  double c;            ///< cosh(kt)
  double s;            ///< sinh(kt)
  double eps1;         ///< -2 (alpha1^2 + alpha2^2)
  double eps2;         ///< alpha1^2 - alpha2^2
  double theta_plus;   ///< 2 chi t + eps2 sin(4 chi t)
  double theta_minus;  ///< 2 chi t - eps2 sin(4 chi t)
  double theta;        ///< 6 chi t - eps2 sin(4 chi t)
};

inline AuxQuantities aux_quantities(const SystemParams& p, double t) {
  const double a1 = p.alpha1() * p.alpha1();
  const double a2 = p.alpha2() * p.alpha2();
  const double ct = p.chi_bar() * t;
  const double eps2 = a1 - a2;
  const double s4 = std::sin(4.0 * ct);
  return {std::cosh(p.k() * t),
          std::sinh(p.k() * t),
          -2.0 * (a1 + a2),
          eps2,
          2.0 * ct + eps2 * s4,
          2.0 * ct - eps2 * s4,
          6.0 * ct - eps2 * s4};
}

namespace detail {

inline void require_time(double t) {
  if (!(std::isfinite(t) && t >= 0.0)) throw InvalidParameter("interaction time must be finite and >= 0");
}

}  // namespace detail

enum class Mode { One = 1, Two = 2 };

enum class SumConvention {
  NumberSum,             ///< D = n1 + n2
  CommutatorConsistent,  ///< D = [B, B^dag] = n1 + n2 + 1
};

struct SqueezeKind {
  enum class Type { SingleMode1, SingleMode2, TwoMode, Sum };

  Type type{Type::SingleMode1};
  SumConvention convention{SumConvention::NumberSum};  ///< only read for Sum

  static SqueezeKind single(Mode m) {
    return {m == Mode::One ? Type::SingleMode1 : Type::SingleMode2, SumConvention::NumberSum};
  }
  static SqueezeKind two_mode() { return {Type::TwoMode, SumConvention::NumberSum}; }
  static SqueezeKind sum(SumConvention c = SumConvention::NumberSum) { return {Type::Sum, c}; }

  friend bool operator==(const SqueezeKind& a, const SqueezeKind& b) {
    if (a.type != b.type) return false;
    return a.type != Type::Sum || a.convention == b.convention;
  }
};

inline std::string_view kind_name(SqueezeKind::Type t) {
  switch (t) {
    case SqueezeKind::Type::SingleMode1: return "single1";
    case SqueezeKind::Type::SingleMode2: return "single2";
    case SqueezeKind::Type::TwoMode: return "two";
    case SqueezeKind::Type::Sum: return "sum";
  }
  return "?";
}

inline std::string_view convention_name(SumConvention c) {
  return c == SumConvention::NumberSum ? "paper" : "commutator";
}

inline std::string kind_label(const SqueezeKind& k) {
  std::string s(kind_name(k.type));
  if (k.type == SqueezeKind::Type::Sum) {
    s += "/";
    s += convention_name(k.convention);
  }
  return s;
}

}  // namespace kds
