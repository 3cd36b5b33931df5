// Copyright 2026 The BLLL Links Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: validate, analyze, sweep, simulate, threshold and
// figures.
//
// Exit status: 0 success, 1 a check failed, 2 bad input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blll/chain.h"
#include "blll/comm_model.h"
#include "blll/dynamics.h"
#include "blll/game.h"
#include "blll/resistance.h"
#include "blll/spec_io.h"
#include "blll/sweep.h"
#include "blll/toy_game.h"

namespace {

using blll::Game;

constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

// Grid points above which `sweep` prints a runtime estimate.
constexpr double kLargeSweepWork = 5e9;

std::string FormatSet(const Game& game, const std::vector<int>& states) {
  std::string out = "{";
  for (size_t k = 0; k < states.size(); ++k) {
    if (k) out += ", ";
    out += game.ProfileLabel(states[k]);
  }
  return out + "}";
}

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string TransitionName(const Game& game, int from, int to) {
  return game.ProfileLabel(from) + " -> " + game.ProfileLabel(to);
}

// Output stream for --out, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      const std::filesystem::path parent = std::filesystem::path(path).parent_path();
      std::error_code ignored;
      if (!parent.empty()) std::filesystem::create_directories(parent, ignored);
      file_.open(path);
      if (!file_) throw blll::ConfigError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct ValidateArgs {
  std::string game;
};

int RunValidate(const ValidateArgs& args) {
  const Game game = blll::LoadGameSpec(args.game);
  bool ok = true;
  std::cout << "game: " << game.num_players() << " players, "
            << game.num_profiles() << " profiles\n";
  if (game.has_potential()) {
    const blll::PotentialReport report = blll::ValidatePotential(game);
    if (report.ok()) {
      std::cout << "potential: ok\n";
    } else {
      ok = false;
      std::cout << "potential: " << report.violations.size()
                << " violation(s)\n";
      for (const auto& v : report.violations) {
        const int to = game.WithAction(v.profile, v.player, v.to_action);
        std::cout << "  agent " << v.player + 1 << " deviation "
                  << TransitionName(game, v.profile, to)
                  << ": utility change " << FormatNumber(v.utility_delta)
                  << ", potential change " << FormatNumber(v.potential_delta)
                  << '\n';
      }
    }
  } else {
    try {
      const Eigen::VectorXd phi = blll::RecoverPotential(game);
      std::cout << "potential: recovered (";
      for (int s = 0; s < game.num_profiles(); ++s) {
        std::cout << (s ? ", " : "") << game.ProfileLabel(s) << '='
                  << FormatNumber(phi(s));
      }
      std::cout << ")\n";
    } catch (const blll::NotPotentialError& e) {
      ok = false;
      std::cout << "potential: " << e.what() << '\n';
    }
  }
  auto report_checks = [&](const char* name,
                           const std::vector<blll::PlayerCheck>& checks) {
    if (blll::AllOk(checks)) {
      std::cout << name << ": ok\n";
      return;
    }
    ok = false;
    for (const auto& c : checks) {
      if (c.ok) continue;
      std::cout << name << ": failed for agent " << c.player + 1 << " ("
                << game.ActionLabel(c.player, c.witness.first) << " -> "
                << game.ActionLabel(c.player, c.witness.second) << ")\n";
    }
  };
  report_checks("reachability", blll::CheckReachability(game));
  report_checks("reversibility", blll::CheckReversibility(game));
  std::cout << (ok ? "ok" : "FAILED") << '\n';
  return ok ? 0 : kExitCheckFailed;
}

struct AnalyzeArgs {
  std::string game;
  std::string comm;
  std::optional<double> m;
  std::optional<double> tau;
};

void PrintResistances(const Game& game, const blll::ResistanceGraph& graph,
                      const blll::StochasticPotentialReport& report) {
  std::cout << "resistances:\n";
  for (const auto& e : graph.edges) {
    std::cout << "  " << TransitionName(game, e.from, e.to) << "  "
              << FormatNumber(e.weight) << '\n';
  }
  std::cout << "stochastic potential:\n";
  for (int s = 0; s < graph.num_states; ++s) {
    std::cout << "  " << game.ProfileLabel(s) << "  "
              << FormatNumber(report.gamma(s));
    if (report.unreachable_witness[s] >= 0) {
      std::cout << "  (unreachable from "
                << game.ProfileLabel(report.unreachable_witness[s]) << ")";
    }
    std::cout << '\n';
  }
  std::cout << "argmin gamma: " << FormatSet(game, report.argmin) << '\n';
}

int RunAnalyze(const AnalyzeArgs& args) {
  const Game game = blll::LoadGameSpec(args.game);
  if (args.m && args.comm.empty()) {
    throw blll::ConfigError("--m needs --comm for the partial utilities");
  }
  std::cout << "nash equilibria: " << FormatSet(game, blll::NashEquilibria(game))
            << '\n';
  std::cout << "potential maximizers: "
            << FormatSet(game, blll::PotentialMaximizers(game)) << '\n';

  std::optional<blll::CommSpec> comm;
  if (!args.comm.empty()) {
    comm = blll::LoadCommSpec(args.comm, game);
    if (args.m) {
      comm->connectivity =
          blll::ConnectivityModel::UniformExponent(game.num_players(), *args.m);
    }
  }

  std::cout << "[perfect links]\n";
  const blll::ResistanceGraph perfect = blll::BuildResistanceGraph(game);
  PrintResistances(game, perfect, blll::StochasticPotentials(perfect));

  if (comm) {
    if (comm->connectivity.mode() == blll::ConnectivityMode::kExponentCoupled) {
      std::cout << "[lossy links]\n";
      const blll::ResistanceGraph lossy =
          blll::BuildResistanceGraph(game, comm->connectivity, comm->partial);
      PrintResistances(game, lossy, blll::StochasticPotentials(lossy));
      const blll::LinkConditionReport link = blll::CheckLinkCondition(
          game, comm->connectivity, comm->partial);
      std::cout << "link condition: "
                << (link.satisfied() ? "satisfied" : "violated") << '\n';
      for (const auto& v : link.violations) {
        std::cout << "  agent " << v.agent + 1 << " hearing "
                  << blll::FormatAgentSet(v.heard) << " on "
                  << TransitionName(game, v.from, v.to) << ": budget "
                  << FormatNumber(v.link_budget) << " < required "
                  << FormatNumber(v.required) << '\n';
      }
      std::cout << "minimal uniform m: " << FormatNumber(link.minimal_uniform_m)
                << '\n';
      std::cout << "per-link bound: " << FormatNumber(link.per_link_bound)
                << '\n';
    } else {
      std::cout << "[lossy links] resistances need exponent mode; skipped\n";
      std::cout << "minimal uniform m: "
                << FormatNumber(blll::MinimalUniformExponent(game, comm->partial))
                << '\n';
      std::cout << "per-link bound: "
                << FormatNumber(blll::MaxPerfectResistance(game)) << '\n';
    }
  }

  if (args.tau) {
    const double eps = blll::EpsilonFromTemperature(*args.tau);
    const auto chain = comm ? blll::TransitionMatrixStochastic(
                                  game, comm->connectivity, comm->partial, eps)
                            : blll::TransitionMatrixPerfect(game, eps);
    const auto mu = blll::StationaryLinear(chain).mu;
    std::cout << "stationary distribution at tau=" << FormatNumber(*args.tau)
              << ":\n";
    for (int s = 0; s < game.num_profiles(); ++s) {
      std::cout << "  " << game.ProfileLabel(s) << "  " << FormatNumber(mu(s))
                << '\n';
    }
  }
  return 0;
}

struct GridFlags {
  std::optional<double> tau_min;
  std::optional<double> tau_max;
  std::optional<int> tau_points;
  std::optional<double> m;
  std::optional<double> pc;
  std::optional<double> ptar;

  void Apply(blll::SweepConfig& config) const {
    if (tau_min || tau_max || tau_points) {
      const double lo = tau_min.value_or(config.tau.front());
      const double hi = tau_max.value_or(config.tau.back());
      const int n = tau_points.value_or(static_cast<int>(config.tau.size()));
      config.tau = blll::SweepConfig::LogSpace(lo, hi, n);
    }
    if (m && pc) throw blll::ConfigError("--m and --pc are exclusive");
    if (m) {
      config.axis = blll::SweepAxis::kExponent;
      config.second = {*m};
    }
    if (pc) {
      config.axis = blll::SweepAxis::kProbability;
      config.second = {*pc};
    }
    if (ptar) config.p_target = *ptar;
    config.Validate();
  }
};

void AddGridFlags(CLI::App* cmd, GridFlags& flags) {
  cmd->add_option("--tau-min", flags.tau_min, "Smallest temperature");
  cmd->add_option("--tau-max", flags.tau_max, "Largest temperature");
  cmd->add_option("--tau-points", flags.tau_points,
                  "Number of log-spaced temperatures");
  cmd->add_option("--m", flags.m, "Uniform link exponent");
  cmd->add_option("--pc", flags.pc, "Uniform link probability");
  cmd->add_option("--ptar", flags.ptar, "Target maximizer probability");
}

struct SweepArgs {
  std::string game;
  std::string comm;
  std::string config;
  std::string out;
  bool curves = false;
  GridFlags grid;
};

int RunSweepCommand(const SweepArgs& args) {
  const Game game = blll::LoadGameSpec(args.game);
  const blll::CommSpec comm = blll::LoadCommSpec(args.comm, game);
  blll::SweepConfig config = blll::LoadSweepConfig(args.config);
  args.grid.Apply(config);

  const double points =
      static_cast<double>(config.tau.size()) * config.second.size();
  const double work = points * std::pow(game.num_profiles(), 3);
  if (work > kLargeSweepWork) {
    std::cerr << "warning: " << points << " grid points over "
              << game.num_profiles() << " states; expect roughly "
              << FormatNumber(std::ceil(work / 1e9 / blll::DefaultWorkerCount()))
              << " s of dense solves\n";
  }

  const auto rows = blll::RunSweep(game, comm.partial, config);
  Sink sink(args.out);
  blll::WriteSweepCsv(sink.get(), game, rows);

  if (args.curves) {
    if (args.out.empty()) {
      throw blll::ConfigError("--curves needs --out for the extra series");
    }
    for (double m : config.marked_curves) {
      blll::SweepConfig curve = config;
      curve.axis = blll::SweepAxis::kExponent;
      curve.second = {m};
      const auto curve_rows = blll::RunSweep(game, comm.partial, curve);
      const std::filesystem::path base(args.out);
      const std::filesystem::path path =
          base.parent_path() /
          (base.stem().string() + "_m" + FormatNumber(m) + ".csv");
      Sink curve_sink(path.string());
      blll::WriteSweepCsv(curve_sink.get(), game, curve_rows);
    }
  }
  return 0;
}

struct SimulateArgs {
  std::string game;
  std::string comm;
  std::optional<double> m;
  double tau = 0.0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::string initial;
  std::string out;
  bool best_reply = false;
};

int RunSimulate(const SimulateArgs& args) {
  const Game game = blll::LoadGameSpec(args.game);
  std::optional<blll::CommSpec> comm;
  if (!args.comm.empty()) {
    comm = blll::LoadCommSpec(args.comm, game);
    if (args.m) {
      comm->connectivity =
          blll::ConnectivityModel::UniformExponent(game.num_players(), *args.m);
    }
  } else if (args.m) {
    throw blll::ConfigError("--m needs --comm for the partial utilities");
  }

  blll::DynamicsConfig config;
  config.tau = args.tau;
  config.horizon = args.horizon;
  config.seed = args.seed;
  config.record_steps = !args.out.empty();
  config.variant = args.best_reply ? blll::Variant::kBestReply
                   : comm          ? blll::Variant::kStochasticLinks
                                   : blll::Variant::kPerfect;
  if (!args.initial.empty()) {
    config.initial_profile = game.FindProfileByLabel(args.initial);
    if (config.initial_profile < 0) {
      throw blll::ConfigError("unknown profile '" + args.initial + "'");
    }
  }

  const blll::Trajectory run =
      comm ? blll::Run(game, comm->connectivity, comm->partial, config)
           : blll::Run(game, config);

  if (!args.out.empty()) {
    std::filesystem::create_directories(args.out);
    const std::filesystem::path dir(args.out);
    Sink trajectory((dir / "trajectory.csv").string());
    blll::WriteTrajectoryCsv(trajectory.get(), run);
    Sink empirical((dir / "empirical.csv").string());
    empirical.get() << std::setprecision(17) << "state_label,frequency\n";
    for (int s = 0; s < game.num_profiles(); ++s) {
      empirical.get() << game.ProfileLabel(s) << ',' << run.empirical(s)
                      << '\n';
    }
  }

  std::cout << "state,empirical,exact\n";
  if (args.best_reply) {
    for (int s = 0; s < game.num_profiles(); ++s) {
      std::cout << game.ProfileLabel(s) << ',' << FormatNumber(run.empirical(s))
                << ",\n";
    }
    return 0;
  }
  const double eps = blll::EpsilonFromTemperature(args.tau);
  const auto chain = comm ? blll::TransitionMatrixStochastic(
                                game, comm->connectivity, comm->partial, eps)
                          : blll::TransitionMatrixPerfect(game, eps);
  const Eigen::VectorXd mu = blll::StationaryLinear(chain).mu;
  for (int s = 0; s < game.num_profiles(); ++s) {
    std::cout << game.ProfileLabel(s) << ',' << FormatNumber(run.empirical(s))
              << ',' << FormatNumber(mu(s)) << '\n';
  }
  std::cout << "tv_distance " << FormatNumber(blll::TotalVariation(run.empirical, mu))
            << '\n';
  return 0;
}

struct ThresholdArgs {
  std::string game;
  std::string comm;
  std::string out;
  GridFlags grid;
};

int RunThreshold(const ThresholdArgs& args) {
  const Game game = blll::LoadGameSpec(args.game);
  const blll::CommSpec comm = blll::LoadCommSpec(args.comm, game);
  if (args.grid.pc) throw blll::ConfigError("threshold searches an m curve");
  if (!args.grid.ptar) throw blll::ConfigError("--ptar is required");
  double m = 0.0;
  if (args.grid.m) {
    m = *args.grid.m;
  } else if (comm.connectivity.mode() ==
                 blll::ConnectivityMode::kExponentCoupled &&
             comm.connectivity.uniform()) {
    m = comm.connectivity.Value(0, game.num_players() > 1 ? 1 : 0, 0);
  } else {
    throw blll::ConfigError(
        "threshold needs --m or a uniform exponent in the comm spec");
  }
  blll::SweepConfig config;
  GridFlags grid = args.grid;
  grid.m = m;
  grid.Apply(config);

  const blll::ThresholdResult result = blll::FindThreshold(
      game, comm.partial, m, config.p_target, config.tau);
  Sink sink(args.out);
  blll::WriteThresholdCsv(sink.get(), result);
  std::ostream& note = args.out.empty() ? std::cerr : std::cout;
  if (result.found) {
    note << "empirical grid estimate on m=" << FormatNumber(m)
         << ": tau_th=" << FormatNumber(result.tau_th)
         << " p_c_th=" << FormatNumber(result.p_c_th) << '\n';
  } else {
    note << "no threshold on this curve (m=" << FormatNumber(m)
         << ", p_tar=" << FormatNumber(config.p_target) << ")\n";
  }
  return 0;
}

struct FiguresArgs {
  std::string out_dir;
  std::string game;
  std::string comm;
};

int RunFigures(const FiguresArgs& args) {
  if (args.game.empty() != args.comm.empty()) {
    throw blll::ConfigError("--game and --comm go together");
  }
  if (args.game.empty()) {
    const Game game = blll::toy::ToyGame();
    const auto partial = blll::toy::ToyPartialUtilities(game);
    blll::WriteFigures(blll::ComputeFigures(game, partial), game, args.out_dir);
  } else {
    const Game game = blll::LoadGameSpec(args.game);
    const blll::CommSpec comm = blll::LoadCommSpec(args.comm, game);
    blll::WriteFigures(blll::ComputeFigures(game, comm.partial), game,
                       args.out_dir);
  }
  std::cout << "wrote heatmap.csv, mu_vs_tau.csv, mu_vs_m.csv to "
            << args.out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary log-linear learning over lossy links"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check potential, reachability, reversibility");
  validate_cmd->add_option("game", validate.game, "Game spec")->required();

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Equilibria, resistances and stochastic potentials");
  analyze_cmd->add_option("game", analyze.game, "Game spec")->required();
  analyze_cmd->add_option("--comm", analyze.comm, "Comm spec");
  analyze_cmd->add_option("--m", analyze.m, "Override with a uniform exponent");
  analyze_cmd->add_option("--tau", analyze.tau, "Also print the stationary distribution");

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Exact stationary distributions over a grid");
  sweep_cmd->add_option("game", sweep.game, "Game spec")->required();
  sweep_cmd->add_option("comm", sweep.comm, "Comm spec")->required();
  sweep_cmd->add_option("config", sweep.config, "Sweep config")->required();
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
  sweep_cmd->add_flag("--curves", sweep.curves,
                      "Also write the marked exponent curves");
  AddGridFlags(sweep_cmd, sweep.grid);

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run");
  simulate_cmd->add_option("game", simulate.game, "Game spec")->required();
  simulate_cmd->add_option("--comm", simulate.comm, "Comm spec");
  simulate_cmd->add_option("--m", simulate.m, "Override with a uniform exponent");
  simulate_cmd->add_option("--tau", simulate.tau, "Temperature");
  simulate_cmd->add_option("--horizon", simulate.horizon, "Iterations")
      ->required();
  simulate_cmd->add_option("--seed", simulate.seed, "RNG seed");
  simulate_cmd->add_option("--initial", simulate.initial, "Initial profile label");
  simulate_cmd->add_option("--out", simulate.out,
                           "Directory for trajectory.csv and empirical.csv");
  simulate_cmd->add_flag("--best-reply", simulate.best_reply,
                         "Unperturbed asynchronous best reply");

  ThresholdArgs threshold;
  auto* threshold_cmd = app.add_subcommand(
      "threshold", "Empirical temperature threshold along an m curve");
  threshold_cmd->add_option("game", threshold.game, "Game spec")->required();
  threshold_cmd->add_option("comm", threshold.comm, "Comm spec")->required();
  threshold_cmd->add_option("--out", threshold.out, "CSV path (default stdout)");
  AddGridFlags(threshold_cmd, threshold.grid);

  FiguresArgs figures;
  auto* figures_cmd = app.add_subcommand("figures", "Figure datasets as CSV");
  figures_cmd->add_option("out-dir", figures.out_dir, "Output directory")
      ->required();
  figures_cmd->add_option("--game", figures.game, "Game spec (default: toy)");
  figures_cmd->add_option("--comm", figures.comm, "Comm spec (default: toy)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return RunValidate(validate);
    if (*analyze_cmd) return RunAnalyze(analyze);
    if (*sweep_cmd) return RunSweepCommand(sweep);
    if (*simulate_cmd) return RunSimulate(simulate);
    if (*threshold_cmd) return RunThreshold(threshold);
    if (*figures_cmd) return RunFigures(figures);
  } catch (const blll::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return 0;
}
