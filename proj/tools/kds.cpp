#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "kds/kds.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, kds::SqueezeKind::Type> kKinds{
    {"single1", kds::SqueezeKind::Type::SingleMode1},
    {"single2", kds::SqueezeKind::Type::SingleMode2},
    {"two", kds::SqueezeKind::Type::TwoMode},
    {"sum", kds::SqueezeKind::Type::Sum},
};

const std::map<std::string, kds::Engine> kEngines{
    {"analytic", kds::Engine::Analytic},
    {"moments", kds::Engine::Moments},
    {"oracle", kds::Engine::Oracle},
};

const std::map<std::string, kds::SumConvention> kConventions{
    {"paper", kds::SumConvention::NumberSum},
    {"commutator", kds::SumConvention::CommutatorConsistent},
};

const std::map<std::string, kds::Integrator> kIntegrators{
    {"spectral", kds::Integrator::Spectral},
    {"taylor", kds::Integrator::Taylor},
};

struct OracleFlags {
  int cutoff = 24;
  double dt = 1e-3;
  std::string integrator = "spectral";

  void attach(CLI::App* app) {
    app->add_option("--cutoff", cutoff, "Fock cutoff n_max per mode")->capture_default_str();
    app->add_option("--dt", dt, "Taylor step (scaled by 1/max(|chi|, k, 1))")->capture_default_str();
    app->add_option("--integrator", integrator, "oracle integrator")
        ->check(CLI::IsMember({"spectral", "taylor"}))
        ->capture_default_str();
  }

  kds::OracleConfig config() const {
    kds::OracleConfig cfg;
    cfg.n_max = cutoff;
    cfg.dt = dt;
    cfg.integrator = kIntegrators.at(integrator);
    return cfg;
  }
};

std::ostream* open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw kds::Error("cannot write " + path);
  return &file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrature squeezing of the two-mode Kerr and down-conversion model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kds::kVersion);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "tabulate F, G and V over a uniform time grid");
  std::string kind = "single1", engine = "analytic", convention = "paper", out;
  double chi = 0.5, k = 0.0, alpha1 = 0.4, alpha2 = 0.0, tmax = 3.0;
  int steps = 101;
  OracleFlags sweep_oracle;
  sweep->add_option("--kind", kind, "squeezing kind")->check(CLI::IsMember({"single1", "single2", "two", "sum"}))
      ->capture_default_str();
  sweep->add_option("--engine", engine, "evaluation engine")
      ->check(CLI::IsMember({"analytic", "moments", "oracle"}))
      ->capture_default_str();
  sweep->add_option("--chi", chi, "cross-Kerr coupling chi_bar")->capture_default_str();
  sweep->add_option("--k", k, "down-conversion coupling")->capture_default_str();
  sweep->add_option("--alpha1", alpha1, "initial amplitude of mode 1")->capture_default_str();
  sweep->add_option("--alpha2", alpha2, "initial amplitude of mode 2")->capture_default_str();
  sweep->add_option("--tmax", tmax, "last time of the grid")->capture_default_str();
  sweep->add_option("--steps", steps, "number of grid points (>= 2)")->capture_default_str();
  sweep->add_option("--d-convention", convention, "sum-squeezing normalization")
      ->check(CLI::IsMember({"paper", "commutator"}))
      ->capture_default_str();
  sweep->add_option("--out", out, "CSV path (stdout when omitted)");
  sweep_oracle.attach(sweep);

  // figure
  auto* figure = app.add_subcommand("figure", "write the CSV curves and a gnuplot script of one figure");
  std::string figure_id, figure_out = ".", figure_engine = "analytic";
  int figure_steps = 301;
  double figure_tmax = -1.0;
  OracleFlags figure_oracle;
  figure->add_option("id", figure_id, "figure id")->required()->check(CLI::IsMember({"1", "2a", "2b", "3"}));
  figure->add_option("--out", figure_out, "output directory")->capture_default_str();
  figure->add_option("--engine", figure_engine, "evaluation engine")
      ->check(CLI::IsMember({"analytic", "moments", "oracle"}))
      ->capture_default_str();
  figure->add_option("--steps", figure_steps, "points per curve")->capture_default_str();
  figure->add_option("--tmax", figure_tmax, "override the default time range");
  figure_oracle.attach(figure);

  // verify
  auto* verify = app.add_subcommand("verify", "cross-check analytic, moment and oracle engines on a grid");
  kds::VerifyGrid grid;
  std::vector<double> v_chi = grid.chi, v_k = grid.k, v_a1, v_a2;
  for (const auto& [a, b] : grid.alphas) {
    v_a1.push_back(a);
    v_a2.push_back(b);
  }
  double tol = 1e-6;
  std::string report_path;
  OracleFlags verify_oracle;
  verify->add_option("--chi", v_chi, "chi_bar values")->capture_default_str();
  verify->add_option("--k", v_k, "k values")->capture_default_str();
  verify->add_option("--alpha1", v_a1, "mode-1 amplitudes, paired with --alpha2")->capture_default_str();
  verify->add_option("--alpha2", v_a2, "mode-2 amplitudes, paired with --alpha1")->capture_default_str();
  verify->add_option("--tmax", grid.t_max, "last time of the grid")->capture_default_str();
  verify->add_option("--steps", grid.t_points, "time points per cell")->capture_default_str();
  verify->add_option("--tol", tol, "tolerance of the oracle comparisons")->capture_default_str();
  verify->add_option("--report", report_path, "write a JSON report to this path");
  verify_oracle.attach(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep) {
      const auto type = kKinds.at(kind);
      kds::SqueezeKind sk{type, kConventions.at(convention)};
      kds::SweepRequest req{sk, kEngines.at(engine), kds::SystemParams(chi, k, alpha1, alpha2), tmax, steps,
                            sweep_oracle.config()};
      req.validate();
      const auto result = kds::run_sweep(req);
      std::ofstream file;
      kds::write_csv(*open_output(out, file), result);
    } else if (*figure) {
      kds::FigureOptions opts;
      opts.engine = kEngines.at(figure_engine);
      opts.steps = figure_steps;
      if (figure_tmax >= 0.0) opts.t_max = figure_tmax;
      opts.oracle = figure_oracle.config();
      if (opts.steps < 2) throw kds::InvalidParameter("steps must be >= 2");
      for (const auto& path : kds::write_figure(figure_id, figure_out, opts)) std::cout << path.string() << "\n";
    } else if (*verify) {
      if (v_a1.size() != v_a2.size()) throw kds::InvalidParameter("--alpha1 and --alpha2 need the same length");
      grid.chi = v_chi;
      grid.k = v_k;
      grid.alphas.clear();
      for (std::size_t i = 0; i < v_a1.size(); ++i) grid.alphas.emplace_back(v_a1[i], v_a2[i]);
      const auto report = kds::run_verify(grid, verify_oracle.config(), tol);
      kds::write_report(std::cout, report);
      if (!report_path.empty()) {
        std::ofstream json(report_path);
        if (!json) throw kds::Error("cannot write " + report_path);
        json << kds::to_json(report).dump(2) << "\n";
      }
      return report.ok() ? 0 : kExitFailure;
    }
  } catch (const kds::InvalidParameter& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
