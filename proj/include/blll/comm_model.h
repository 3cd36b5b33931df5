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

#ifndef BLLL_COMM_MODEL_H_
#define BLLL_COMM_MODEL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blll/game.h"

namespace blll {

// Bitmask over players; bit j set means agent j is heard from.
using AgentSet = std::uint32_t;

inline constexpr int kMaxEnumeratedPlayers = 16;

inline AgentSet FullSet(int num_players) {
  return num_players >= 32 ? ~AgentSet{0} : (AgentSet{1} << num_players) - 1;
}
inline bool Contains(AgentSet set, int agent) { return (set >> agent) & 1u; }
std::string FormatAgentSet(AgentSet set);  // 1-based, e.g. "{1,2}"

enum class ConnectivityMode {
  // Stored value is the delivery probability p in (0, 1].
  kExplicitProbability,
  // Stored value is an exponent m > 0 and p = 1 / (1 + eps^m).
  kExponentCoupled,
};

// Symmetric, possibly profile-dependent link quality between agents.
//
// Built once (setters are for construction/parsing), then shared read-only.
class ConnectivityModel {
 public:
  ConnectivityModel(ConnectivityMode mode, int num_players, double value);

  static ConnectivityModel UniformProbability(int num_players, double p) {
    return {ConnectivityMode::kExplicitProbability, num_players, p};
  }
  static ConnectivityModel UniformExponent(int num_players, double m) {
    return {ConnectivityMode::kExponentCoupled, num_players, m};
  }

  // Sets the link value for every profile; clears per-profile overrides.
  void SetLink(int i, int j, double value);
  void SetLink(int i, int j, int profile, double value);

  ConnectivityMode mode() const { return mode_; }
  int num_players() const { return num_players_; }
  // True when a single value applies to every link and profile.
  bool uniform() const;

  // Raw stored value (p or m) for the link i-j at `profile`. Self-links
  // report 1 in probability mode and +inf in exponent mode.
  double Value(int i, int j, int profile) const;

  // Delivery probability. eps must lie in (0, 1) in exponent mode and is
  // ignored otherwise. Self-links are always 1.
  double Connectivity(int i, int j, int profile, double eps) const;
  // (log p, log(1 - p)), accurate for p close to 1.
  std::pair<double, double> LogConnectivity(int i, int j, int profile,
                                            double eps) const;

 private:
  double& Slot(int i, int j);
  double Slot(int i, int j) const;
  void CheckValue(double value) const;

  ConnectivityMode mode_;
  int num_players_;
  std::vector<double> link_;  // upper triangle, row-major (i < j)
  std::map<std::tuple<int, int, int>, double> overrides_;
};

// The set of agents that `agent` hears from in one iteration (always
// includes the agent).
struct Realization {
  int agent = 0;
  AgentSet reachable = 0;

  bool operator==(const Realization&) const = default;
};

// Product of per-link inclusion/exclusion probabilities.
double RealizationProbability(const ConnectivityModel& model,
                              const Realization& realization, int profile,
                              double eps);
double LogRealizationProbability(const ConnectivityModel& model,
                                 const Realization& realization, int profile,
                                 double eps);

// All 2^(n-1) realizations for `agent`, ordered by bitmask. Throws
// ConfigError above `cap` players; use SampleRealization instead.
std::vector<std::pair<Realization, double>> EnumerateRealizations(
    const ConnectivityModel& model, int agent, int profile, double eps,
    int cap = kMaxEnumeratedPlayers);

// Independent Bernoulli draw per link.
Realization SampleRealization(const ConnectivityModel& model, int agent,
                              int profile, double eps, std::mt19937_64& rng);

enum class PartialUtilitySource { kUserSupplied, kIgnoreAbsent };

// Tables U_i(a | I) for every agent, heard-from subset and profile. The full
// subset always maps to the game's true utility.
class PartialUtilityModel {
 public:
  explicit PartialUtilityModel(const Game& game);

  // Builds every table from a reduced-utility callback
  // `reduced(agent, subset, profile)`; the full subset keeps U_i.
  static PartialUtilityModel IgnoreAbsent(
      const Game& game,
      const std::function<double(int, AgentSet, int)>& reduced);

  // Throws ConfigError for a subset missing the agent, or for a full-subset
  // value that disagrees with the true utility.
  void Set(int agent, AgentSet subset, int profile, double value);

  // Throws ConfigError naming (agent, subset) when the entry is missing.
  double Value(int agent, AgentSet subset, int profile) const;
  bool Has(int agent, AgentSet subset, int profile) const;

  PartialUtilitySource source() const { return source_; }
  int num_players() const { return num_players_; }

 private:
  int num_players_;
  int num_profiles_;
  Eigen::MatrixXd full_;  // profiles x players
  std::map<std::pair<int, AgentSet>, Eigen::VectorXd> tables_;
  PartialUtilitySource source_ = PartialUtilitySource::kUserSupplied;
};

}  // namespace blll

#endif  // BLLL_COMM_MODEL_H_
