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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blll/chain.h"
#include "blll/dynamics.h"
#include "blll/resistance.h"
#include "blll/sweep.h"
#include "blll/toy_game.h"
#include "test_util.h"

namespace blll {
namespace {

using toy::kA3;
using toy::kA4;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string Num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double Seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

Outcome ToyStructure() {
  Outcome out;
  const Game g = toy::ToyGame();
  out.Require(ValidatePotential(g, 0.0).ok(), "potential check failed");
  out.Require(NashEquilibria(g) == std::vector<int>{kA4, kA3},
              "Nash set is not {a3, a4}");
  out.Require(PotentialMaximizers(g) == std::vector<int>{kA4},
              "maximizer set is not {a4}");
  return out;
}

Outcome PerfectStability() {
  Outcome out;
  std::vector<int> argmin;
  const double secs = Seconds([&] {
    argmin = StochasticPotentials(BuildResistanceGraph(toy::ToyGame())).argmin;
  });
  out.Require(argmin == std::vector<int>{kA4}, "argmin gamma is not {a4}");
  out.Require(secs < 1.0, "took " + Num(secs) + " s");
  return out;
}

Outcome TransitionThreshold() {
  Outcome out;
  const Game g = toy::ToyGame();
  const auto partial = toy::ToyPartialUtilities(g);
  for (double m : {0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0}) {
    const auto comm = ConnectivityModel::UniformExponent(2, m);
    const auto argmin =
        StochasticPotentials(BuildResistanceGraph(g, comm, partial)).argmin;
    const std::vector<int> expected =
        m > 1.0 ? std::vector<int>{kA4}
                : m == 1.0 ? std::vector<int>{kA4, kA3} : std::vector<int>{kA3};
    out.Require(argmin == expected, "wrong argmin at m=" + Num(m));
  }
  return out;
}

Outcome LinkCondition() {
  Outcome out;
  const Game g = toy::ToyGame();
  const auto report = CheckLinkCondition(
      g, ConnectivityModel::UniformExponent(2, 1.0), toy::ToyPartialUtilities(g));
  out.Require(report.minimal_uniform_m == 3.0,
              "minimal m = " + Num(report.minimal_uniform_m));
  return out;
}

Outcome CurveBehaviour() {
  Outcome out;
  const Game g = toy::ToyGame();
  const auto partial = toy::ToyPartialUtilities(g);
  const SweepConfig defaults;
  std::vector<SweepRow> grid;
  const double secs = Seconds([&] { grid = RunSweep(g, partial, defaults); });
  out.Require(grid.size() == 1600, "grid is not 40 x 40");
  out.Require(secs < 10.0, "40 x 40 grid took " + Num(secs) + " s");

  auto curve = [&](double m) {
    SweepConfig c = defaults;
    c.axis = SweepAxis::kExponent;
    c.second = {m};
    return RunSweep(g, partial, c);
  };
  const auto strong = curve(3.0);
  const auto weak = curve(0.5);
  out.Require(strong.front().mu(kA4) >= 0.99,
              "m=3 mu(a4) = " + Num(strong.front().mu(kA4)));
  out.Require(weak.front().mu(kA4) <= 0.5,
              "m=0.5 mu(a4) = " + Num(weak.front().mu(kA4)));
  const double tau0 = defaults.tau.front();
  for (size_t k = 1; k < weak.size() && defaults.tau[k] <= 10 * tau0; ++k) {
    out.Require(weak[k].mu(kA4) > weak[k - 1].mu(kA4),
                "m=0.5 not decreasing toward tau=" + Num(weak[k - 1].tau));
  }
  return out;
}

Outcome DualRoute() {
  Outcome out;
  const Game g = toy::ToyGame();
  const auto partial = toy::ToyPartialUtilities(g);
  double worst = 0.0;
  const double secs = Seconds([&] {
    for (double tau : {0.2, 0.5, 1.0}) {
      for (double m : {0.5, 1.0, 3.0}) {
        const auto chain = TransitionMatrixStochastic(
            g, ConnectivityModel::UniformExponent(2, m), partial,
            EpsilonFromTemperature(tau));
        const auto a = StationaryLinear(chain).mu;
        const auto b = StationaryTreeTheorem(chain).mu;
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
      }
    }
  });
  out.Require(worst <= 1e-9, "max difference " + Num(worst));
  out.Require(secs < 1.0, "took " + Num(secs) + " s");
  return out;
}

Outcome LimitCertification() {
  Outcome out;
  const Game g = toy::ToyGame();
  const auto partial = toy::ToyPartialUtilities(g);
  const auto moves = FeasibleTransitions(g);
  out.Require(moves.size() == 8, "expected 8 feasible transitions");
  for (const Transition& t : moves) {
    const std::string name = g.ProfileLabel(t.from) + "->" + g.ProfileLabel(t.to);
    auto perfect = [&](double eps) {
      return LogTransitionProbabilityPerfect(g, t.from, t.to, eps);
    };
    out.Require(ResistanceLimitCheck(perfect, ResistancePerfect(g, t.from, t.to)).pass,
                "perfect " + name);
    for (double m : {0.5, 1.0, 2.0, 3.0}) {
      const auto comm = ConnectivityModel::UniformExponent(2, m);
      auto lossy = [&](double eps) {
        return LogTransitionProbabilityStochastic(g, comm, partial, t.from, t.to,
                                                  eps);
      };
      out.Require(
          ResistanceLimitCheck(lossy,
                               ResistanceStochastic(g, comm, partial, t.from, t.to))
              .pass,
          "lossy " + name + " at m=" + Num(m));
    }
  }
  return out;
}

Outcome SimulationMatchesExact() {
  Outcome out;
  const Game g = toy::ToyGame();
  const auto partial = toy::ToyPartialUtilities(g);
  const auto comm = ConnectivityModel::UniformExponent(2, 1.0);
  const double tau = 0.5;
  const double eps = EpsilonFromTemperature(tau);
  double secs = Seconds([&] {
    DynamicsConfig config;
    config.tau = tau;
    config.horizon = 1000000;
    config.seed = 20260101;
    config.record_steps = false;
    const auto perfect = Run(g, config);
    const double tv_perfect = TotalVariation(
        perfect.empirical, StationaryLinear(TransitionMatrixPerfect(g, eps)).mu);
    out.Require(tv_perfect < 0.02, "perfect TV " + Num(tv_perfect));

    config.variant = Variant::kStochasticLinks;
    const auto lossy = Run(g, comm, partial, config);
    const double tv_lossy = TotalVariation(
        lossy.empirical,
        StationaryLinear(TransitionMatrixStochastic(g, comm, partial, eps)).mu);
    out.Require(tv_lossy < 0.02, "lossy TV " + Num(tv_lossy));
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("TV ") +
                  Num(tv_perfect) + " / " + Num(tv_lossy);
  });
  out.Require(secs < 30.0, "took " + Num(secs) + " s");
  return out;
}

Outcome Reduction() {
  Outcome out;
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = testing::RandomPotentialGame(rng, {3, 3, 3, trial % 2 == 1});
    const auto partial = testing::RandomPartialUtilities(g, rng);
    const auto comm = ConnectivityModel::UniformProbability(g.num_players(), 1.0);
    for (double tau : {0.1, 1.0}) {
      const double eps = EpsilonFromTemperature(tau);
      const auto lossy = TransitionMatrixStochastic(g, comm, partial, eps);
      const auto perfect = TransitionMatrixPerfect(g, eps);
      worst = std::max(
          worst, (lossy.transition - perfect.transition).cwiseAbs().maxCoeff());
    }
  }
  out.Require(worst <= 1e-14, "max difference " + Num(worst));
  return out;
}

Outcome PropertySuite() {
  Outcome out;
  std::mt19937_64 rng(1010);
  int violations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Game g = testing::RandomPotentialGame(rng, {3, 3, 3, trial % 3 == 0});
    const auto partial = testing::RandomPartialUtilities(g, rng);
    const double bound = MaxPerfectResistance(g);
    const double m = std::max(bound, 1e-3);
    const auto comm = ConnectivityModel::UniformExponent(g.num_players(), m);
    const auto argmin =
        StochasticPotentials(BuildResistanceGraph(g, comm, partial)).argmin;
    if (argmin.empty() || !testing::IsSubset(argmin, PotentialMaximizers(g))) {
      ++violations;
    }
  }
  out.Require(violations == 0, std::to_string(violations) + " violating games");
  return out;
}

}  // namespace
}  // namespace blll

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<blll::Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "toy game structure", blll::ToyStructure},
      {2, "perfect-link stochastic stability", blll::PerfectStability},
      {3, "transition at m = 1", blll::TransitionThreshold},
      {4, "minimal uniform link exponent", blll::LinkCondition},
      {5, "connectivity-curve behaviour", blll::CurveBehaviour},
      {6, "linear vs tree-theorem stationary", blll::DualRoute},
      {7, "resistance limit certification", blll::LimitCertification},
      {8, "simulation vs exact", blll::SimulationMatchesExact},
      {9, "reduction at p_c = 1", blll::Reduction},
      {10, "random-game property suite", blll::PropertySuite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    blll::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    failed += !outcome.pass;
    std::printf("criterion %2d: %s  %s%s%s\n", c.id, outcome.pass ? "PASS" : "FAIL",
                c.name, outcome.detail.empty() ? "" : "  (",
                outcome.detail.empty() ? "" : (outcome.detail + ")").c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
