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

#ifndef BLLL_GAME_H_
#define BLLL_GAME_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace blll {

// Raised for malformed or incomplete inputs (tables, models, configs).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by RecoverPotential when utility differences do not integrate.
class NotPotentialError : public std::runtime_error {
 public:
  NotPotentialError(const std::string& what, std::vector<int> cycle)
      : std::runtime_error(what), cycle_(std::move(cycle)) {}
  // Closed walk of profile indices (first == last) with nonzero utility
  // circulation.
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

// Raised when an operation is handed a pair of profiles that is not a
// feasible single-agent move.
class InfeasibleTransition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One action index per player.
struct ActionProfile {
  std::vector<int> actions;

  bool operator==(const ActionProfile&) const = default;
};

// Per-action list of next actions for one player (the constrained set).
using MoveSets = std::vector<std::vector<int>>;

// A feasible unilateral move between two profiles.
struct Transition {
  int from = 0;
  int to = 0;
  int agent = 0;

  bool operator==(const Transition&) const = default;
};

// Finite game in normal form with constrained action sets.
//
// Profiles are addressed by a mixed-radix index with player 0 as the least
// significant digit; that index is the state id used by every downstream
// module. Utilities are a dense (profiles x players) table. Immutable once
// constructed.
class Game {
 public:
  // `moves` may be empty, meaning every player may move to any of its
  // actions (including the current one). Otherwise it holds one MoveSets per
  // player with one entry per action.
  Game(std::vector<std::vector<std::string>> action_labels,
       Eigen::MatrixXd utilities,
       std::optional<Eigen::VectorXd> potential = std::nullopt,
       std::vector<MoveSets> moves = {},
       std::vector<std::string> profile_labels = {});

  int num_players() const { return static_cast<int>(action_labels_.size()); }
  int num_actions(int player) const {
    return static_cast<int>(action_labels_[player].size());
  }
  int num_profiles() const { return num_profiles_; }

  int Index(const ActionProfile& profile) const;
  ActionProfile Profile(int index) const;
  int ActionOf(int index, int player) const {
    return (index / strides_[player]) % num_actions(player);
  }
  // Profile index with `player`'s action replaced by `action`.
  int WithAction(int index, int player, int action) const {
    return index + (action - ActionOf(index, player)) * strides_[player];
  }

  double Utility(int player, int index) const {
    return utilities_(index, player);
  }
  const Eigen::MatrixXd& utilities() const { return utilities_; }

  bool has_potential() const { return potential_.has_value(); }
  // Throws ConfigError when no potential table was supplied.
  const Eigen::VectorXd& potential() const;
  Game WithPotential(Eigen::VectorXd potential) const;

  const std::vector<int>& Moves(int player, int action) const {
    return moves_[player][action];
  }
  const MoveSets& Moves(int player) const { return moves_[player]; }

  const std::string& ActionLabel(int player, int action) const {
    return action_labels_[player][action];
  }
  const std::vector<std::vector<std::string>>& action_labels() const {
    return action_labels_;
  }
  // Returns -1 when the label is unknown.
  int FindAction(int player, const std::string& label) const;
  // Custom label when supplied, otherwise action labels joined by '/'.
  std::string ProfileLabel(int index) const;
  std::string JoinedActionLabels(int index) const;
  // Matches custom labels first, then the joined action labels.
  int FindProfileByLabel(const std::string& label) const;

  // True iff `to` differs from `from` in exactly one coordinate and that
  // coordinate's new action is in the mover's constrained set.
  bool IsFeasible(int from, int to) const;
  // Mover of a unilateral change; -1 if the profiles do not differ in
  // exactly one coordinate.
  int Mover(int from, int to) const;

 private:
  std::vector<std::vector<std::string>> action_labels_;
  Eigen::MatrixXd utilities_;
  std::optional<Eigen::VectorXd> potential_;
  std::vector<MoveSets> moves_;
  std::vector<std::string> profile_labels_;
  std::vector<int> strides_;
  int num_profiles_ = 1;
};

// All feasible unilateral moves, ordered by (from, agent, to). Self-moves are
// excluded.
std::vector<Transition> FeasibleTransitions(const Game& game);

struct PotentialViolation {
  int player = 0;
  int from_action = 0;
  int to_action = 0;
  int profile = 0;  // index of (from_action, a_{-i})
  double utility_delta = 0.0;
  double potential_delta = 0.0;
};

struct PotentialReport {
  std::vector<PotentialViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr double kDefaultPotentialTolerance = 1e-12;

// Checks U_i(a'_i, a_-i) - U_i(a_i, a_-i) == phi(a'_i, a_-i) - phi(a_i, a_-i)
// for every player and ordered pair of distinct actions. Throws ConfigError
// when the game carries no potential table.
PotentialReport ValidatePotential(
    const Game& game, double tolerance = kDefaultPotentialTolerance);

// Integrates utility differences from profile 0, then shifts the result so
// its minimum is 0. Throws NotPotentialError carrying a witness cycle when
// the differences are inconsistent beyond `tolerance`.
Eigen::VectorXd RecoverPotential(const Game& game, double tolerance = 1e-9);

// Pure Nash equilibria over the unconstrained action sets, ascending.
std::vector<int> NashEquilibria(const Game& game);

// Argmax of the potential (recovered if the game carries none). Profiles
// within `tolerance` of the maximum are all returned.
std::vector<int> PotentialMaximizers(const Game& game, double tolerance = 0.0);

struct PlayerCheck {
  int player = 0;
  bool ok = true;
  // Offending ordered action pair when !ok.
  std::pair<int, int> witness{-1, -1};
};

// Strong connectivity of each player's constrained-move digraph.
std::vector<PlayerCheck> CheckReachability(const Game& game);
// Symmetry of each player's constrained-move relation.
std::vector<PlayerCheck> CheckReversibility(const Game& game);

inline bool AllOk(const std::vector<PlayerCheck>& checks) {
  for (const PlayerCheck& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

}  // namespace blll

#endif  // BLLL_GAME_H_
