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

// Resistances of the perturbed learning chain, stochastic potentials and the
// sufficient link-quality conditions that keep the potential maximizers
// stochastically stable.

#ifndef BLLL_RESISTANCE_H_
#define BLLL_RESISTANCE_H_

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "blll/arborescence.h"
#include "blll/comm_model.h"
#include "blll/game.h"

namespace blll {

enum class ResistanceVariant { kPerfect, kStochasticLinks };

// R(a0 -> a1) = max(U_i(a0), U_i(a1)) - U_i(a1). Throws InfeasibleTransition.
double ResistancePerfect(const Game& game, int from, int to);

// Resistance conditioned on a heard-from set, evaluated on partial utilities.
double ConditionalResistance(const Game& game,
                             const PartialUtilityModel& partial, int from,
                             int to, AgentSet heard);

// R_c(a0 -> a1) = min over heard-from sets I of
//   [conditional resistance given I + sum_{j not in I} m_ij(a0)].
// Requires an exponent-coupled model (ConfigError otherwise).
double ResistanceStochastic(const Game& game, const ConnectivityModel& comm,
                            const PartialUtilityModel& partial, int from,
                            int to);

struct ResistanceGraph {
  int num_states = 0;
  ResistanceVariant variant = ResistanceVariant::kPerfect;
  // One edge per feasible unilateral move; infeasible moves are absent.
  std::vector<WeightedEdge> edges;
};

ResistanceGraph BuildResistanceGraph(const Game& game);
ResistanceGraph BuildResistanceGraph(const Game& game,
                                     const ConnectivityModel& comm,
                                     const PartialUtilityModel& partial);

struct StochasticPotentialReport {
  // Minimum in-tree resistance per root; +inf when some state cannot reach
  // the root.
  Eigen::VectorXd gamma;
  std::vector<int> argmin;
  // Optimal in-tree per root (empty when gamma is infinite).
  std::vector<std::vector<WeightedEdge>> trees;
  // For infinite gamma: a state with no path to that root.
  std::vector<int> unreachable_witness;
};

inline constexpr double kGammaTieTolerance = 1e-9;

// Exact minimum arborescences; cross-checked against exhaustive enumeration
// when the graph has at most `cross_check_cap` states (ChainError on
// mismatch). Roots within kGammaTieTolerance of the minimum all count.
StochasticPotentialReport StochasticPotentials(const ResistanceGraph& graph,
                                               int cross_check_cap = 8);

struct LimitCheckOptions {
  // eps = 10^-first_exponent ... 10^-last_exponent.
  int first_exponent = 1;
  int last_exponent = 6;
  double relative_tolerance = 0.05;
};

struct LimitCheckResult {
  bool pass = false;
  std::vector<double> epsilons;
  // eps^-R * P^eps(a0 -> a1) at each grid point.
  std::vector<double> scaled;
};

// Numerically certifies 0 < lim eps^-R P^eps < inf: the scaled probability
// must be finite and positive at the last grid point and change by less
// than the relative tolerance between the last two points. `log_probability`
// maps eps to log P^eps(a0 -> a1).
LimitCheckResult ResistanceLimitCheck(
    const std::function<double(double)>& log_probability, double claimed,
    const LimitCheckOptions& options = {});

struct LinkConditionViolation {
  int agent = 0;
  AgentSet heard = 0;
  int from = 0;
  int to = 0;
  double link_budget = 0.0;  // sum of m_ij(a0) over unheard j
  double required = 0.0;     // R - conditional resistance
};

struct LinkConditionReport {
  std::vector<LinkConditionViolation> violations;
  // Smallest m such that a uniform exponent m on every link satisfies all
  // inequalities (0 when any positive m does).
  double minimal_uniform_m = 0.0;
  // Largest perfect-link resistance over feasible moves; a per-link
  // exponent at least this large always suffices.
  double per_link_bound = 0.0;

  bool satisfied() const { return violations.empty(); }
};

// Checks sum_{j not in I} m_ij(a0) >= R(a0 -> a1) - R(a0 -> a1 | I) for
// every agent, heard-from set and feasible move. Requires exponent mode.
LinkConditionReport CheckLinkCondition(const Game& game,
                                       const ConnectivityModel& comm,
                                       const PartialUtilityModel& partial);

double MinimalUniformExponent(const Game& game,
                              const PartialUtilityModel& partial);
double MaxPerfectResistance(const Game& game);

// Temperature placing a uniform link probability p_c on the exponent-m
// curve: tau = -m / ln((1 - p_c) / p_c). Requires p_c in (0.5, 1), m > 0.
double TemperatureOnCurve(double p_c, double m);

// Inverse: p_c = 1 / (1 + e^{-m / tau}).
double CurveProbability(double m, double tau);

}  // namespace blll

#endif  // BLLL_RESISTANCE_H_
