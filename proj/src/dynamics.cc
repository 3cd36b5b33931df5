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

#include "blll/dynamics.h"

#include <cassert>
#include <cmath>
#include <ostream>

#include "blll/numeric.h"

namespace blll {

double DynamicsConfig::epsilon() const { return EpsilonFromTemperature(tau); }

void DynamicsConfig::Validate() const {
  if (variant != Variant::kBestReply && !(tau > 0.0)) {
    throw ConfigError("temperature must be positive");
  }
  if (horizon < 0) throw ConfigError("horizon must be nonnegative");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction <= 1.0)) {
    throw ConfigError("burn-in fraction must lie in [0, 1]");
  }
}

double SwitchProbability(double u_current, double u_candidate, double tau) {
  return Logistic((u_candidate - u_current) / tau);
}

namespace {

struct Proposal {
  int agent;
  int current;
  int candidate;
  int next_profile;
};

Proposal Propose(const Game& game, int profile, std::mt19937_64& rng) {
  const int agent = UniformIndex(rng, game.num_players());
  const int current = game.ActionOf(profile, agent);
  const std::vector<int>& moves = game.Moves(agent, current);
  const int candidate =
      moves.empty()
          ? current
          : moves[UniformIndex(rng, static_cast<int>(moves.size()))];
  return {agent, current, candidate, game.WithAction(profile, agent, candidate)};
}

}  // namespace

Step BlllStep(const Game& game, int profile, double tau, std::mt19937_64& rng) {
  const Proposal p = Propose(game, profile, rng);
  Step step{p.agent, p.candidate, FullSet(game.num_players()), profile};
  const double u = UniformDouble(rng);
  if (p.candidate == p.current) return step;
  const double q = SwitchProbability(game.Utility(p.agent, profile),
                                     game.Utility(p.agent, p.next_profile), tau);
  if (u < q) step.profile = p.next_profile;
  return step;
}

Step BlllStepStochastic(const Game& game, const ConnectivityModel& comm,
                        const PartialUtilityModel& partial, int profile,
                        double tau, std::mt19937_64& rng) {
  const Proposal p = Propose(game, profile, rng);
  const Realization r = SampleRealization(comm, p.agent, profile,
                                          EpsilonFromTemperature(tau), rng);
  Step step{p.agent, p.candidate, r.reachable, profile};
  const double u = UniformDouble(rng);
  if (p.candidate == p.current) return step;
  const double q = SwitchProbability(
      partial.Value(p.agent, r.reachable, profile),
      partial.Value(p.agent, r.reachable, p.next_profile), tau);
  if (u < q) step.profile = p.next_profile;
  return step;
}

Step BestReplyStep(const Game& game, int profile, std::mt19937_64& rng) {
  const Proposal p = Propose(game, profile, rng);
  Step step{p.agent, p.candidate, FullSet(game.num_players()), profile};
  if (game.Utility(p.agent, p.next_profile) > game.Utility(p.agent, profile)) {
    step.profile = p.next_profile;
  }
  return step;
}

namespace {

Trajectory RunImpl(const Game& game, const ConnectivityModel* comm,
                   const PartialUtilityModel* partial,
                   const DynamicsConfig& config) {
  config.Validate();
  if (config.initial_profile < 0 ||
      config.initial_profile >= game.num_profiles()) {
    throw ConfigError("initial profile out of range");
  }
  if (config.variant == Variant::kStochasticLinks &&
      (comm == nullptr || partial == nullptr)) {
    throw ConfigError("lossy-link dynamics need a connectivity model and "
                      "partial utilities");
  }

  Trajectory traj;
  traj.initial_profile = config.initial_profile;
  traj.empirical = Eigen::VectorXd::Zero(game.num_profiles());
  if (config.record_steps) traj.steps.reserve(config.horizon);

  std::mt19937_64 rng(config.seed);
  const std::int64_t burn_in = static_cast<std::int64_t>(
      std::floor(config.burn_in_fraction * static_cast<double>(config.horizon)));
  int profile = config.initial_profile;
  std::int64_t counted = 0;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    Step step;
    switch (config.variant) {
      case Variant::kPerfect:
        step = BlllStep(game, profile, config.tau, rng);
        break;
      case Variant::kStochasticLinks:
        step = BlllStepStochastic(game, *comm, *partial, profile, config.tau,
                                  rng);
        break;
      case Variant::kBestReply:
        step = BestReplyStep(game, profile, rng);
        break;
    }
    assert(step.profile == profile || game.IsFeasible(profile, step.profile));
    profile = step.profile;
    if (config.record_steps) traj.steps.push_back({t, step});
    if (t > burn_in) {
      traj.empirical(profile) += 1.0;
      ++counted;
    }
  }
  if (counted == 0) {
    traj.empirical(profile) = 1.0;
  } else {
    traj.empirical /= static_cast<double>(counted);
  }
  return traj;
}

}  // namespace

Trajectory Run(const Game& game, const DynamicsConfig& config) {
  return RunImpl(game, nullptr, nullptr, config);
}

Trajectory Run(const Game& game, const ConnectivityModel& comm,
               const PartialUtilityModel& partial,
               const DynamicsConfig& config) {
  return RunImpl(game, &comm, &partial, config);
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory) {
  out << "iter,agent,candidate,subset_bitmask,profile_index\n";
  for (const StepRecord& r : trajectory.steps) {
    out << r.iter << ',' << r.step.agent + 1 << ',' << r.step.candidate << ','
        << r.step.subset << ',' << r.step.profile << '\n';
  }
}

void WriteEmpiricalCsv(std::ostream& out, const Eigen::VectorXd& empirical) {
  out << "profile_index,frequency\n";
  const auto old_precision = out.precision(17);
  for (Eigen::Index s = 0; s < empirical.size(); ++s) {
    out << s << ',' << empirical(s) << '\n';
  }
  out.precision(old_precision);
}

double TotalVariation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return 0.5 * (p - q).cwiseAbs().sum();
}

}  // namespace blll
