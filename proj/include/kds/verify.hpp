#pragma once

// Cross-engine verification: analytic vs moment engine vs Fock oracle on a
// parameter grid, single-mode variant arbitration, principal-squeezing
// checks and oracle conservation laws.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kds/analytic.hpp"
#include "kds/fock.hpp"
#include "kds/moments.hpp"
#include "kds/parallel.hpp"
#include "kds/params.hpp"
#include "kds/quad_core.hpp"

namespace kds {

/// Couplings form a product grid; amplitude pairs are listed explicitly.
struct VerifyGrid {
  std::vector<double> chi{0.0, 0.25, 0.5};
  std::vector<double> k{0.0, 0.05, 0.1};
  std::vector<std::pair<double, double>> alphas{{0.4, 0.0}, {0.4, 0.4}, {0.2, 0.3}};
  int t_points = 50;
  double t_max = 3.0;

  double time(int i) const { return t_points == 1 ? 0.0 : double(i) * t_max / double(t_points - 1); }

  void validate() const {
    if (chi.empty() || k.empty() || alphas.empty()) throw InvalidParameter("verification grid is empty");
    if (t_points < 1) throw InvalidParameter("verification grid needs at least one time");
    detail::require_time(t_max);
  }

  std::vector<SystemParams> cells() const {
    std::vector<SystemParams> out;
    for (double c : chi) {
      for (double kk : k) {
        for (const auto& [a1, a2] : alphas) out.emplace_back(c, kk, a1, a2);
      }
    }
    return out;
  }
};

/// Every squeezing kind, with the sum kind under both conventions.
inline std::vector<SqueezeKind> all_kinds() {
  return {SqueezeKind::single(Mode::One), SqueezeKind::single(Mode::Two), SqueezeKind::two_mode(),
          SqueezeKind::sum(SumConvention::NumberSum), SqueezeKind::sum(SumConvention::CommutatorConsistent)};
}

struct SampleSite {
  SystemParams params{};
  double t{0.0};
  std::string kind;
};

struct CheckResult {
  std::string name;
  double tolerance{0.0};
  bool informational{false};
  double max_deviation{0.0};
  long samples{0};
  SampleSite worst{};

  void add(double dev, const SystemParams& p, double t, const std::string& kind) {
    ++samples;
    if (std::isnan(dev)) dev = std::numeric_limits<double>::infinity();
    if (samples == 1 || dev > max_deviation) {
      max_deviation = dev;
      worst = {p, t, kind};
    }
  }

  void merge(const CheckResult& other) {
    if (other.samples == 0) return;
    const bool first = samples == 0;
    samples += other.samples;
    if (first || other.max_deviation > max_deviation) {
      max_deviation = other.max_deviation;
      worst = other.worst;
    }
  }

  bool passed() const { return informational || max_deviation <= tolerance; }
};

struct SkippedCell {
  SystemParams params;
  std::string kind;
  long times;
  std::string reason;
};

struct CellError {
  SystemParams params;
  double t;
  std::string what;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<SkippedCell> skipped;
  std::vector<CellError> errors;
  long cells{0};
  int t_points{0};

  bool ok() const {
    return errors.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
  }

  const CheckResult& check(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw InvalidParameter("no check named " + name);
  }
};

/// Minimum of factor_phase over `points` uniform phases in [0, pi), followed by
/// golden-section refinement inside the bracket of the best grid point.
struct PhaseGridMinimum {
  double grid;     ///< plain grid minimum
  double refined;  ///< after refinement
  double phi;      ///< minimizing phase
};

inline PhaseGridMinimum phase_grid_minimum(const QuadratureMoments& m, int points = 3600) {
  const double step = std::numbers::pi / points;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int j = 0; j < points; ++j) {
    const double v = factor_phase(m, j * step);
    if (v < best_value) {
      best_value = v;
      best = j;
    }
  }
  double lo = (best - 1) * step;
  double hi = (best + 1) * step;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = factor_phase(m, x1);
  double f2 = factor_phase(m, x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = factor_phase(m, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = factor_phase(m, x2);
    }
  }
  const double phi = f1 < f2 ? x1 : x2;
  return {best_value, std::min({best_value, f1, f2}), phi};
}

namespace detail {

enum CheckId : std::size_t {
  kAnalyticMoments,
  kAnalyticOracle,
  kRawMoments,
  kVariantCorrected,
  kVariantSinTheta,
  kVariantPrintedExponent,
  kVariantVerbatim,
  kSinThetaCoupled,
  kVerbatimCoupled,
  kPrincipalGrid,
  kPrincipalGridRaw,
  kEnvelope,
  kNumberDrift,
  kNumberSqDrift,
  kNormDrift,
  kEnergyDrift,
  kFreeEvolution,
  kCheckCount,
};

inline std::vector<CheckResult> blank_checks(double tol, const OracleConfig& cfg) {
  std::vector<CheckResult> c(kCheckCount);
  const auto set = [&](CheckId id, std::string name, double t, bool info = false) {
    c[id].name = std::move(name);
    c[id].tolerance = t;
    c[id].informational = info;
  };
  set(kAnalyticMoments, "analytic_vs_moments", 1e-10);
  set(kAnalyticOracle, "analytic_vs_oracle", tol);
  set(kRawMoments, "moments_vs_oracle", tol);
  set(kVariantCorrected, "single_mode/corrected", tol);
  set(kVariantSinTheta, "single_mode/sin-theta", 1e-3, true);
  set(kVariantPrintedExponent, "single_mode/printed-exponent", 1e-3, true);
  set(kVariantVerbatim, "single_mode/verbatim", 1e-3, true);
  set(kSinThetaCoupled, "single_mode/sin-theta, mode 1, alpha2>0", 1e-3, true);
  set(kVerbatimCoupled, "single_mode/verbatim, mode 1, alpha2>0", 1e-3, true);
  set(kPrincipalGrid, "principal_vs_phase_grid", 1e-8);
  set(kPrincipalGridRaw, "principal_vs_phase_grid_unrefined", 1e-8, true);
  set(kEnvelope, "principal_envelope", 1e-10);
  set(kNumberDrift, "number_difference_drift", 1e-9);
  set(kNumberSqDrift, "number_difference_sq_drift", 1e-9);
  set(kNormDrift, "norm_drift", cfg.tau_norm);
  set(kEnergyDrift, "energy_drift", 1e-9);
  set(kFreeEvolution, "free_evolution_zero", 1e-12);
  return c;
}

inline double raw_distance(const RawMoments& a, const RawMoments& b) {
  return std::max({std::abs(a.a1 - b.a1), std::abs(a.a1_sq - b.a1_sq), std::abs(a.n1 - b.n1),
                   std::abs(a.a2 - b.a2), std::abs(a.a2_sq - b.a2_sq), std::abs(a.n2 - b.n2),
                   std::abs(a.a1_a2 - b.a1_a2), std::abs(a.a1dag_a2 - b.a1dag_a2),
                   std::abs(a.a1a2_sq - b.a1a2_sq), std::abs(a.a1a2_number - b.a1a2_number)});
}

struct CellOutcome {
  std::vector<CheckResult> checks;
  std::vector<SkippedCell> skipped;
  std::vector<CellError> errors;
};

inline CellOutcome verify_cell(const SystemParams& p, const VerifyGrid& grid, const OracleConfig& cfg,
                               double tol, std::shared_ptr<const Propagator> propagator) {
  CellOutcome out{blank_checks(tol, cfg), {}, {}};
  auto& c = out.checks;
  const auto kinds = all_kinds();
  std::vector<long> skipped(kinds.size(), 0);
  std::vector<std::string> reasons(kinds.size());

  std::unique_ptr<FockOracle> oracle;
  try {
    oracle = std::make_unique<FockOracle>(p, cfg, HamiltonianForm::Solvable, std::move(propagator));
  } catch (const Error& e) {
    out.errors.push_back({p, 0.0, e.what()});
    return out;
  }
  const auto start = oracle->diagnostics_of(oracle->initial_state());
  const bool free = p.chi_bar() == 0.0 && p.k() == 0.0;
  constexpr SingleModeVariant variants[] = {SingleModeVariant::Corrected, SingleModeVariant::SinTheta,
                                            SingleModeVariant::PrintedExponent, SingleModeVariant::Verbatim};

  for (int i = 0; i < grid.t_points; ++i) {
    const double t = grid.time(i);
    FockState state(cfg.n_max);
    try {
      state = oracle->state_at(t);
    } catch (const Error& e) {
      out.errors.push_back({p, t, e.what()});
      continue;
    }
    const auto raw_o = oracle->raw_moments_of(state, t);
    const auto raw_a = raw_moments(p, t);
    const auto diag = oracle->diagnostics_of(state);
    c[kRawMoments].add(raw_distance(raw_a, raw_o), p, t, "raw");
    c[kNumberDrift].add(std::abs(diag.number_difference - start.number_difference), p, t, "oracle");
    c[kNumberSqDrift].add(std::abs(diag.number_difference_sq - start.number_difference_sq), p, t, "oracle");
    c[kNormDrift].add(std::abs(diag.norm_sq - start.norm_sq), p, t, "oracle");
    c[kEnergyDrift].add(std::abs(diag.energy - start.energy), p, t, "oracle");

    for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
      const auto& kind = kinds[ki];
      const auto label = kind_label(kind);
      const auto m_a = assemble(raw_a, kind);
      const auto m_o = assemble(raw_o, kind);
      try {
        const auto an = analytic_fg(p, t, kind);
        const auto sa = squeezing(m_a, t);
        const auto so = squeezing(m_o, t);
        c[kAnalyticMoments].add(std::max(std::abs(an.f - sa.f), std::abs(an.g - sa.g)), p, t, label);
        c[kAnalyticOracle].add(
            std::max({std::abs(an.f - so.f), std::abs(an.g - so.g), std::abs(sa.v - so.v)}), p, t, label);

        const auto gm = phase_grid_minimum(m_a);
        c[kPrincipalGrid].add(std::abs(sa.v - gm.refined), p, t, label);
        c[kPrincipalGridRaw].add(std::abs(sa.v - gm.grid), p, t, label);
        c[kEnvelope].add(std::max({0.0, sa.v - std::min(sa.f, sa.g), so.v - std::min(so.f, so.g)}), p, t,
                         label);

        if (free) {
          c[kFreeEvolution].add(std::max({std::abs(an.f), std::abs(an.g), std::abs(sa.f), std::abs(sa.g),
                                          std::abs(sa.v), std::abs(so.f), std::abs(so.g), std::abs(so.v)}),
                                p, t, label);
        }

        if (kind.type == SqueezeKind::Type::SingleMode1 || kind.type == SqueezeKind::Type::SingleMode2) {
          const Mode mode = kind.type == SqueezeKind::Type::SingleMode1 ? Mode::One : Mode::Two;
          for (std::size_t v = 0; v < std::size(variants); ++v) {
            const auto fg = single_mode_fg(p, t, mode, variants[v]);
            const double dev = std::max(std::abs(fg.f - so.f), std::abs(fg.g - so.g));
            c[kVariantCorrected + v].add(dev, p, t, label);
            if (mode == Mode::One && p.alpha2() > 0.0) {
              if (variants[v] == SingleModeVariant::SinTheta) c[kSinThetaCoupled].add(dev, p, t, label);
              if (variants[v] == SingleModeVariant::Verbatim) c[kVerbatimCoupled].add(dev, p, t, label);
            }
          }
        }
      } catch (const DegenerateDenominator& e) {
        ++skipped[ki];
        reasons[ki] = e.what();
      }
    }
  }
  for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
    if (skipped[ki] > 0) out.skipped.push_back({p, kind_label(kinds[ki]), skipped[ki], reasons[ki]});
  }
  return out;
}

}  // namespace detail

/// Runs the verification grid. Cells evaluate concurrently; one propagator is
/// shared by all amplitude pairs of a coupling pair.
inline VerifyReport run_verify(const VerifyGrid& grid, const OracleConfig& cfg = {}, double tol = 1e-6) {
  grid.validate();
  cfg.validate();
  if (!(tol > 0.0)) throw InvalidParameter("tolerance must be > 0");

  const auto cells = grid.cells();
  std::map<std::pair<double, double>, std::shared_ptr<const Propagator>> propagators;
  if (cfg.integrator == Integrator::Spectral) {
    std::vector<std::pair<double, double>> couplings;
    for (const auto& p : cells) {
      if (!propagators.count({p.chi_bar(), p.k()})) {
        propagators[{p.chi_bar(), p.k()}] = nullptr;
        couplings.emplace_back(p.chi_bar(), p.k());
      }
    }
    std::vector<std::shared_ptr<const Propagator>> built(couplings.size());
    parallel_for(couplings.size(), [&](std::size_t i) {
      const SystemParams p(couplings[i].first, couplings[i].second, 0.0, 0.0);
      built[i] = std::make_shared<const Propagator>(build_hamiltonian(p, cfg.n_max, HamiltonianForm::Solvable));
    });
    for (std::size_t i = 0; i < couplings.size(); ++i) propagators[couplings[i]] = built[i];
  }

  std::vector<detail::CellOutcome> outcomes(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& p = cells[i];
    const auto it = propagators.find({p.chi_bar(), p.k()});
    outcomes[i] = detail::verify_cell(p, grid, cfg, tol, it == propagators.end() ? nullptr : it->second);
  });

  VerifyReport report{detail::blank_checks(tol, cfg), {}, {}, long(cells.size()), grid.t_points};
  for (const auto& o : outcomes) {
    for (std::size_t j = 0; j < report.checks.size(); ++j) report.checks[j].merge(o.checks[j]);
    report.skipped.insert(report.skipped.end(), o.skipped.begin(), o.skipped.end());
    report.errors.insert(report.errors.end(), o.errors.begin(), o.errors.end());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Output

inline void write_report(std::ostream& os, const VerifyReport& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%-42s %12s %10s %8s  %s\n", "check", "max_dev", "tol", "samples",
                "status");
  os << line;
  for (const auto& c : r.checks) {
    const char* status = c.informational ? "info" : c.passed() ? "PASS" : "FAIL";
    std::snprintf(line, sizeof line, "%-42s %12.3e %10.1e %8ld  %s", c.name.c_str(), c.max_deviation, c.tolerance,
                  c.samples, status);
    os << line;
    if (c.samples > 0 && c.max_deviation > 0.0) {
      os << "  worst at " << describe(c.worst.params) << " t=" << c.worst.t << " kind=" << c.worst.kind;
    }
    os << "\n";
  }
  for (const auto& s : r.skipped) {
    os << "skipped " << describe(s.params) << " kind=" << s.kind << " (" << s.times
       << " times): DegenerateDenominator: " << s.reason << "\n";
  }
  for (const auto& e : r.errors) {
    os << "error " << describe(e.params) << " t=" << e.t << ": " << e.what << "\n";
  }
  os << "cells=" << r.cells << " times=" << r.t_points << " result=" << (r.ok() ? "PASS" : "FAIL") << "\n";
}

inline nlohmann::json to_json(const SystemParams& p) {
  return {{"chi", p.chi_bar()}, {"k", p.k()}, {"alpha1", p.alpha1()}, {"alpha2", p.alpha2()}};
}

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"max_deviation", c.max_deviation},
                      {"tolerance", c.tolerance},
                      {"samples", c.samples},
                      {"informational", c.informational},
                      {"passed", c.passed()},
                      {"worst", {{"params", to_json(c.worst.params)}, {"t", c.worst.t}, {"kind", c.worst.kind}}}});
  }
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : r.skipped) {
    skipped.push_back({{"params", to_json(s.params)}, {"kind", s.kind}, {"times", s.times},
                       {"reason", "DegenerateDenominator"}, {"detail", s.reason}});
  }
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : r.errors) errors.push_back({{"params", to_json(e.params)}, {"t", e.t}, {"what", e.what}});
  return {{"passed", r.ok()}, {"cells", r.cells}, {"t_points", r.t_points},
          {"checks", checks}, {"skipped", skipped}, {"errors", errors}};
}

}  // namespace kds
