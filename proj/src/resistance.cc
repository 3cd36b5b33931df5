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

#include "blll/resistance.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blll/chain.h"

namespace blll {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int CheckedMover(const Game& game, int from, int to) {
  if (from < 0 || to < 0 || from >= game.num_profiles() ||
      to >= game.num_profiles() || !game.IsFeasible(from, to)) {
    throw InfeasibleTransition("transition " + std::to_string(from) + " -> " +
                               std::to_string(to) +
                               " is not a feasible single-agent move");
  }
  return game.Mover(from, to);
}

void RequireExponentMode(const ConnectivityModel& comm) {
  if (comm.mode() != ConnectivityMode::kExponentCoupled) {
    throw ConfigError(
        "resistances under lossy links need exponent-coupled connectivity");
  }
}

double MissingLinkBudget(const ConnectivityModel& comm, int agent,
                         AgentSet heard, int profile) {
  double sum = 0.0;
  for (int j = 0; j < comm.num_players(); ++j) {
    if (!Contains(heard, j)) sum += comm.Value(agent, j, profile);
  }
  return sum;
}

// Heard-from sets containing `agent`, as bitmasks.
std::vector<AgentSet> HeardSets(int num_players, int agent) {
  std::vector<AgentSet> out;
  const AgentSet full = FullSet(num_players);
  for (AgentSet set = 0; set <= full; ++set) {
    if (Contains(set, agent)) out.push_back(set);
    if (set == full) break;
  }
  return out;
}

}  // namespace

double ResistancePerfect(const Game& game, int from, int to) {
  const int i = CheckedMover(game, from, to);
  const double u0 = game.Utility(i, from);
  const double u1 = game.Utility(i, to);
  return std::max(u0, u1) - u1;
}

double ConditionalResistance(const Game& game,
                             const PartialUtilityModel& partial, int from,
                             int to, AgentSet heard) {
  const int i = CheckedMover(game, from, to);
  const double u0 = partial.Value(i, heard, from);
  const double u1 = partial.Value(i, heard, to);
  return std::max(u0, u1) - u1;
}

double ResistanceStochastic(const Game& game, const ConnectivityModel& comm,
                            const PartialUtilityModel& partial, int from,
                            int to) {
  RequireExponentMode(comm);
  const int i = CheckedMover(game, from, to);
  if (game.num_players() > kMaxEnumeratedPlayers) {
    throw ConfigError("too many players to enumerate heard-from sets");
  }
  double best = kInf;
  for (AgentSet heard : HeardSets(game.num_players(), i)) {
    const double r = ConditionalResistance(game, partial, from, to, heard) +
                     MissingLinkBudget(comm, i, heard, from);
    best = std::min(best, r);
  }
  return best;
}

ResistanceGraph BuildResistanceGraph(const Game& game) {
  ResistanceGraph graph{game.num_profiles(), ResistanceVariant::kPerfect, {}};
  for (const Transition& t : FeasibleTransitions(game)) {
    graph.edges.push_back({t.from, t.to, ResistancePerfect(game, t.from, t.to)});
  }
  return graph;
}

ResistanceGraph BuildResistanceGraph(const Game& game,
                                     const ConnectivityModel& comm,
                                     const PartialUtilityModel& partial) {
  ResistanceGraph graph{game.num_profiles(),
                        ResistanceVariant::kStochasticLinks, {}};
  for (const Transition& t : FeasibleTransitions(game)) {
    graph.edges.push_back(
        {t.from, t.to, ResistanceStochastic(game, comm, partial, t.from, t.to)});
  }
  return graph;
}

StochasticPotentialReport StochasticPotentials(const ResistanceGraph& graph,
                                               int cross_check_cap) {
  const int num = graph.num_states;
  StochasticPotentialReport report;
  report.gamma = Eigen::VectorXd::Constant(num, kInf);
  report.trees.resize(num);
  report.unreachable_witness.assign(num, -1);

  // Reverse reachability for witnesses of disconnected roots.
  auto reaches = [&](int root) {
    std::vector<bool> seen(num, false);
    std::vector<int> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const int y = stack.back();
      stack.pop_back();
      for (const WeightedEdge& e : graph.edges) {
        if (e.to == y && !seen[e.from]) {
          seen[e.from] = true;
          stack.push_back(e.from);
        }
      }
    }
    return seen;
  };

  for (int root = 0; root < num; ++root) {
    auto tree = MinInArborescence(num, graph.edges, root);
    if (num <= cross_check_cap) {
      auto oracle = ExhaustiveMinInArborescence(num, graph.edges, root);
      const bool agree =
          tree.has_value() == oracle.has_value() &&
          (!tree || std::abs(tree->cost - oracle->cost) <= kGammaTieTolerance);
      if (!agree) {
        throw ChainError("minimum arborescence disagrees with enumeration at "
                         "root " + std::to_string(root));
      }
    }
    if (!tree) {
      const std::vector<bool> seen = reaches(root);
      for (int x = 0; x < num; ++x) {
        if (!seen[x]) {
          report.unreachable_witness[root] = x;
          break;
        }
      }
      continue;
    }
    report.gamma(root) = tree->cost;
    report.trees[root] = std::move(tree->edges);
  }
  const double best = report.gamma.minCoeff();
  if (std::isfinite(best)) {
    for (int z = 0; z < num; ++z) {
      if (report.gamma(z) <= best + kGammaTieTolerance) report.argmin.push_back(z);
    }
  }
  return report;
}

LimitCheckResult ResistanceLimitCheck(
    const std::function<double(double)>& log_probability, double claimed,
    const LimitCheckOptions& options) {
  LimitCheckResult result;
  for (int k = options.first_exponent; k <= options.last_exponent; ++k) {
    const double eps = std::pow(10.0, -k);
    result.epsilons.push_back(eps);
    result.scaled.push_back(
        std::exp(log_probability(eps) - claimed * std::log(eps)));
  }
  const size_t n = result.scaled.size();
  if (n < 2) return result;
  const double last = result.scaled[n - 1];
  const double prev = result.scaled[n - 2];
  result.pass = std::isfinite(last) && last > 0.0 && std::isfinite(prev) &&
                std::abs(last - prev) < options.relative_tolerance * last;
  return result;
}

double MaxPerfectResistance(const Game& game) {
  double best = 0.0;
  for (const Transition& t : FeasibleTransitions(game)) {
    best = std::max(best, ResistancePerfect(game, t.from, t.to));
  }
  return best;
}

double MinimalUniformExponent(const Game& game,
                              const PartialUtilityModel& partial) {
  double m = 0.0;
  for (const Transition& t : FeasibleTransitions(game)) {
    const double r = ResistancePerfect(game, t.from, t.to);
    for (AgentSet heard : HeardSets(game.num_players(), t.agent)) {
      const int missing =
          game.num_players() - std::popcount(static_cast<unsigned>(heard));
      if (missing == 0) continue;
      const double need =
          r - ConditionalResistance(game, partial, t.from, t.to, heard);
      m = std::max(m, need / missing);
    }
  }
  return m;
}

LinkConditionReport CheckLinkCondition(const Game& game,
                                       const ConnectivityModel& comm,
                                       const PartialUtilityModel& partial) {
  RequireExponentMode(comm);
  LinkConditionReport report;
  for (const Transition& t : FeasibleTransitions(game)) {
    const double r = ResistancePerfect(game, t.from, t.to);
    for (AgentSet heard : HeardSets(game.num_players(), t.agent)) {
      const double budget = MissingLinkBudget(comm, t.agent, heard, t.from);
      const double need =
          r - ConditionalResistance(game, partial, t.from, t.to, heard);
      if (budget < need) {
        report.violations.push_back({t.agent, heard, t.from, t.to, budget, need});
      }
    }
  }
  report.minimal_uniform_m = MinimalUniformExponent(game, partial);
  report.per_link_bound = MaxPerfectResistance(game);
  return report;
}

double TemperatureOnCurve(double p_c, double m) {
  if (!(p_c > 0.5 && p_c < 1.0)) {
    throw std::domain_error("link probability must lie in (0.5, 1)");
  }
  if (!(m > 0.0)) throw std::domain_error("exponent m must be positive");
  return -m / std::log((1.0 - p_c) / p_c);
}

double CurveProbability(double m, double tau) {
  return Logistic(m / tau);
}

}  // namespace blll
