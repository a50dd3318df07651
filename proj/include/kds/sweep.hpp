#pragma once

// Time sweeps over any engine, their CSV form, and the figure datasets.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kds/analytic.hpp"
#include "kds/fock.hpp"
#include "kds/moments.hpp"
#include "kds/parallel.hpp"
#include "kds/params.hpp"
#include "kds/quad_core.hpp"

namespace kds {

inline constexpr const char* kVersion = "0.1.0";

enum class Engine { Analytic, Moments, Oracle };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Moments: return "moments";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

struct SweepRequest {
  SqueezeKind kind{};
  Engine engine{Engine::Analytic};
  SystemParams params{};
  double t_max{3.0};
  int steps{2};
  OracleConfig oracle{};

  void validate() const {
    if (steps < 2) throw InvalidParameter("steps must be >= 2");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidParameter("tmax must be finite and >= 0");
    if (engine == Engine::Oracle) oracle.validate();
  }

  /// Uniform grid t_i = i t_max / (steps - 1).
  double time(int i) const { return double(i) * t_max / double(steps - 1); }
};

struct SweepResult {
  SweepRequest request;
  std::vector<SqueezingFactors> rows;
  std::string curve;  ///< figure curve label, empty for plain sweeps
};

/// F, G and V at one instant. The analytic engine takes F and G from the
/// printed formulas and V from the moment engine, since the principal
/// squeezing needs complex moments the printed formulas do not carry.
inline SqueezingFactors evaluate(Engine engine, const SystemParams& p, double t, SqueezeKind kind,
                                 const FockOracle* oracle = nullptr) {
  switch (engine) {
    case Engine::Analytic: {
      const auto fg = analytic_fg(p, t, kind);
      return {t, fg.f, fg.g, principal(moments(p, t, kind))};
    }
    case Engine::Moments: return squeezing(moments(p, t, kind), t);
    case Engine::Oracle: {
      if (oracle) return squeezing(oracle->moments(t, kind), t);
      return squeezing(FockOracle(p).moments(t, kind), t);
    }
  }
  throw InvalidParameter("unknown engine");
}

inline SweepResult run_sweep(const SweepRequest& req) {
  req.validate();
  std::optional<FockOracle> oracle;
  if (req.engine == Engine::Oracle) oracle.emplace(req.params, req.oracle);
  SweepResult out{req, std::vector<SqueezingFactors>(static_cast<std::size_t>(req.steps)), {}};
  parallel_for(out.rows.size(), [&](std::size_t i) {
    out.rows[i] = evaluate(req.engine, req.params, req.time(int(i)), req.kind,
                           oracle ? &*oracle : nullptr);
  });
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string full_precision(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const SweepResult& r) {
  const auto& q = r.request;
  const auto& p = q.params;
  os << "# engine=" << engine_name(q.engine) << ", kind=" << kind_name(q.kind.type)
     << ", chi=" << detail::shortest(p.chi_bar()) << ", k=" << detail::shortest(p.k())
     << ", alpha1=" << detail::shortest(p.alpha1()) << ", alpha2=" << detail::shortest(p.alpha2())
     << ", d_convention=" << convention_name(q.kind.convention) << "\n";
  os << "# version=" << kVersion << ", single_mode=" << variant_name(SingleModeVariant::Corrected);
  if (q.engine == Engine::Oracle) {
    os << ", cutoff=" << q.oracle.n_max << ", integrator="
       << (q.oracle.integrator == Integrator::Spectral ? "spectral" : "taylor")
       << ", dt=" << detail::shortest(q.oracle.dt);
  }
  if (!r.curve.empty()) os << ", curve=" << r.curve;
  os << "\n";
  os << "t,f,g,v\n";
  for (const auto& row : r.rows) {
    os << detail::full_precision(row.t) << ',' << detail::full_precision(row.f) << ','
       << detail::full_precision(row.g) << ',' << detail::full_precision(row.v) << '\n';
  }
}

inline std::string to_csv(const SweepResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

/// A sweep CSV read back: comment metadata plus the numeric rows.
struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<SqueezingFactors> rows;

  double column(std::size_t i, char name) const {
    const auto& r = rows.at(i);
    switch (name) {
      case 't': return r.t;
      case 'f': return r.f;
      case 'g': return r.g;
      case 'v': return r.v;
    }
    throw InvalidParameter("unknown column");
  }
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string item;
      while (std::getline(fields, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        auto key = item.substr(0, eq);
        key.erase(0, key.find_first_not_of(' '));
        table.meta[key] = item.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "t,f,g,v") throw InvalidParameter("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    SqueezingFactors row{};
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &row.t, &row.f, &row.g, &row.v) != 4) {
      throw InvalidParameter("malformed CSV row: " + line);
    }
    table.rows.push_back(row);
  }
  if (!header_seen) throw InvalidParameter("CSV has no header");
  return table;
}

inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in);
}

// ---------------------------------------------------------------------------
// Figures

struct CurveSpec {
  std::string label;  ///< quantity plotted: F, G or V
  SqueezeKind kind;
  SystemParams params;
  double t_max;

  char column() const { return label == "F" ? 'f' : label == "G" ? 'g' : 'v'; }

  std::string file_stem(const std::string& figure) const {
    return "fig" + figure + "_" + label + "_chi" + detail::shortest(params.chi_bar()) + "_k" +
           detail::shortest(params.k()) + "_a" + detail::shortest(params.alpha1()) + "-" +
           detail::shortest(params.alpha2());
  }
};

inline bool is_figure_id(const std::string& id) {
  return id == "1" || id == "2a" || id == "2b" || id == "3";
}

/// Curves of each figure. Kerr-only figures span two Kerr periods, 2 pi / chi;
/// figures with gain stop at t = 3 (kt <= 0.3).
inline std::vector<CurveSpec> figure_curves(const std::string& id) {
  const double kerr_span = 2.0 * std::numbers::pi / 0.5;
  std::vector<CurveSpec> out;
  if (id == "1" || id == "2a") {
    const auto kind = id == "1" ? SqueezeKind::single(Mode::One) : SqueezeKind::two_mode();
    const std::vector<std::string> labels =
        id == "1" ? std::vector<std::string>{"V", "F"} : std::vector<std::string>{"F", "G", "V"};
    for (const auto& amps : {std::pair{0.4, 0.0}, std::pair{0.4, 0.4}}) {
      for (const auto& l : labels) {
        out.push_back({l, kind, SystemParams(0.5, 0.0, amps.first, amps.second), kerr_span});
      }
    }
  } else if (id == "2b") {
    const auto kind = SqueezeKind::two_mode();
    out.push_back({"V", kind, SystemParams(0.5, 0.1, 0.4, 0.0), 3.0});
    out.push_back({"G", kind, SystemParams(0.5, 0.1, 0.4, 0.0), 3.0});
    out.push_back({"G", kind, SystemParams(0.0, 0.1, 0.4, 0.0), 3.0});
  } else if (id == "3") {
    const auto kind = SqueezeKind::sum();
    out.push_back({"G", kind, SystemParams(0.0, 0.1, 0.4, 0.0), 3.0});
    out.push_back({"G", kind, SystemParams(0.5, 0.1, 0.4, 0.0), 3.0});
    out.push_back({"F", kind, SystemParams(0.5, 0.1, 0.4, 0.0), 3.0});
    out.push_back({"V", kind, SystemParams(0.5, 0.1, 0.4, 0.0), 3.0});
  } else {
    throw InvalidParameter("unknown figure id '" + id + "' (expected 1, 2a, 2b or 3)");
  }
  return out;
}

struct FigureOptions {
  Engine engine{Engine::Analytic};
  int steps{301};
  std::optional<double> t_max;  ///< overrides every curve's default range
  OracleConfig oracle{};
};

/// Writes one CSV per curve plus a gnuplot script; returns the paths written.
inline std::vector<std::filesystem::path> write_figure(const std::string& id,
                                                       const std::filesystem::path& out_dir,
                                                       const FigureOptions& opts = {}) {
  const auto curves = figure_curves(id);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  std::ostringstream script;
  script << "# gnuplot script for figure " << id << "\n"
         << "set datafile separator \",\"\n"
         << "set commentschars \"#\"\n"
         << "set xlabel \"t\"\n"
         << "set ylabel \"squeezing factor\"\n"
         << "set key outside\n"
         << "plot \\\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    SweepRequest req{c.kind, opts.engine, c.params, opts.t_max.value_or(c.t_max), opts.steps, opts.oracle};
    auto result = run_sweep(req);
    result.curve = c.label;
    const auto path = out_dir / (c.file_stem(id) + ".csv");
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_csv(out, result);
    written.push_back(path);

    const int col = c.column() == 'f' ? 2 : c.column() == 'g' ? 3 : 4;
    script << "  \"" << path.filename().string() << "\" using 1:" << col << " with lines title \""
           << c.label << " chi=" << detail::shortest(c.params.chi_bar())
           << " k=" << detail::shortest(c.params.k()) << " alpha=("
           << detail::shortest(c.params.alpha1()) << "," << detail::shortest(c.params.alpha2())
           << ")\"" << (i + 1 < curves.size() ? ", \\\n" : "\n");
  }
  const auto gp = out_dir / ("fig" + id + ".gp");
  std::ofstream(gp) << script.str();
  written.push_back(gp);
  return written;
}

}  // namespace kds
