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

// Sample-path simulation of binary log-linear learning (perfect links and
// lossy links) and of the asynchronous best reply process.

#ifndef BLLL_DYNAMICS_H_
#define BLLL_DYNAMICS_H_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "blll/comm_model.h"
#include "blll/game.h"

namespace blll {

enum class Variant { kPerfect, kStochasticLinks, kBestReply };

struct DynamicsConfig {
  double tau = 1.0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  Variant variant = Variant::kPerfect;
  int initial_profile = 0;
  // Leading fraction of the run excluded from the empirical distribution.
  double burn_in_fraction = 0.5;
  bool record_steps = true;

  double epsilon() const;
  // Throws ConfigError on tau <= 0 (BLLL variants) or a bad burn-in.
  void Validate() const;
};

// Outcome of one iteration.
struct Step {
  int agent = 0;
  int candidate = 0;
  // Heard-from set in the lossy-link variant; full set otherwise.
  AgentSet subset = 0;
  int profile = 0;
};

struct StepRecord {
  std::int64_t iter = 0;
  Step step;
};

struct Trajectory {
  int initial_profile = 0;
  std::vector<StepRecord> steps;
  // Visit frequencies over the post-burn-in tail, indexed by profile.
  Eigen::VectorXd empirical;
};

// Probability that an agent with current utility `u_current` moves to a
// candidate worth `u_candidate`: logistic((u_candidate - u_current) / tau).
double SwitchProbability(double u_current, double u_candidate, double tau);

Step BlllStep(const Game& game, int profile, double tau, std::mt19937_64& rng);

// Both utilities are evaluated against one shared realization.
Step BlllStepStochastic(const Game& game, const ConnectivityModel& comm,
                        const PartialUtilityModel& partial, int profile,
                        double tau, std::mt19937_64& rng);

// Keeps the current action on exact ties.
Step BestReplyStep(const Game& game, int profile, std::mt19937_64& rng);

// Perfect-link and best-reply variants.
Trajectory Run(const Game& game, const DynamicsConfig& config);
// Any variant; comm/partial are only consulted for kStochasticLinks.
Trajectory Run(const Game& game, const ConnectivityModel& comm,
               const PartialUtilityModel& partial,
               const DynamicsConfig& config);

// CSV rows `iter,agent,candidate,subset_bitmask,profile_index` (agents
// 1-based).
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory);
// CSV rows `profile_index,frequency`.
void WriteEmpiricalCsv(std::ostream& out, const Eigen::VectorXd& empirical);

double TotalVariation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

}  // namespace blll

#endif  // BLLL_DYNAMICS_H_
