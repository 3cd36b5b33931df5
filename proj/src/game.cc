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

#include "blll/game.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace blll {

Game::Game(std::vector<std::vector<std::string>> action_labels,
           Eigen::MatrixXd utilities, std::optional<Eigen::VectorXd> potential,
           std::vector<MoveSets> moves, std::vector<std::string> profile_labels)
    : action_labels_(std::move(action_labels)),
      utilities_(std::move(utilities)),
      potential_(std::move(potential)),
      moves_(std::move(moves)),
      profile_labels_(std::move(profile_labels)) {
  const int n = num_players();
  if (n < 1) throw ConfigError("game needs at least one player");
  strides_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (action_labels_[i].empty()) {
      throw ConfigError("player " + std::to_string(i + 1) + " has no actions");
    }
    strides_[i] = num_profiles_;
    num_profiles_ *= num_actions(i);
  }
  if (utilities_.rows() != num_profiles_ || utilities_.cols() != n) {
    std::ostringstream msg;
    msg << "utility table is " << utilities_.rows() << "x" << utilities_.cols()
        << ", expected " << num_profiles_ << "x" << n;
    throw ConfigError(msg.str());
  }
  if (!utilities_.allFinite()) throw ConfigError("utilities must be finite");
  if (potential_ && potential_->size() != num_profiles_) {
    throw ConfigError("potential table has wrong size");
  }
  if (moves_.empty()) {
    moves_.resize(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> all(num_actions(i));
      std::iota(all.begin(), all.end(), 0);
      moves_[i].assign(num_actions(i), all);
    }
  }
  if (static_cast<int>(moves_.size()) != n) {
    throw ConfigError("constrained moves must be given for every player");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(moves_[i].size()) != num_actions(i)) {
      throw ConfigError("constrained moves for player " + std::to_string(i + 1) +
                        " must cover every action");
    }
    for (auto& next : moves_[i]) {
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (int b : next) {
        if (b < 0 || b >= num_actions(i)) {
          throw ConfigError("constrained move target out of range for player " +
                            std::to_string(i + 1));
        }
      }
    }
  }
  if (!profile_labels_.empty() &&
      static_cast<int>(profile_labels_.size()) != num_profiles_) {
    throw ConfigError("profile labels must cover every profile");
  }
}

int Game::Index(const ActionProfile& profile) const {
  if (static_cast<int>(profile.actions.size()) != num_players()) {
    throw std::out_of_range("profile has wrong number of actions");
  }
  int index = 0;
  for (int i = 0; i < num_players(); ++i) {
    const int a = profile.actions[i];
    if (a < 0 || a >= num_actions(i)) {
      throw std::out_of_range("action index out of range");
    }
    index += a * strides_[i];
  }
  return index;
}

ActionProfile Game::Profile(int index) const {
  ActionProfile profile;
  profile.actions.resize(num_players());
  for (int i = 0; i < num_players(); ++i) profile.actions[i] = ActionOf(index, i);
  return profile;
}

const Eigen::VectorXd& Game::potential() const {
  if (!potential_) throw ConfigError("game has no potential table");
  return *potential_;
}

Game Game::WithPotential(Eigen::VectorXd potential) const {
  return Game(action_labels_, utilities_, std::move(potential), moves_,
              profile_labels_);
}

int Game::FindAction(int player, const std::string& label) const {
  const auto& labels = action_labels_[player];
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

std::string Game::ProfileLabel(int index) const {
  if (!profile_labels_.empty()) return profile_labels_[index];
  return JoinedActionLabels(index);
}

std::string Game::JoinedActionLabels(int index) const {
  std::string label;
  for (int i = 0; i < num_players(); ++i) {
    if (i > 0) label += '/';
    label += ActionLabel(i, ActionOf(index, i));
  }
  return label;
}

int Game::FindProfileByLabel(const std::string& label) const {
  for (int s = 0; s < num_profiles_; ++s) {
    if (ProfileLabel(s) == label) return s;
  }
  for (int s = 0; s < num_profiles_; ++s) {
    if (JoinedActionLabels(s) == label) return s;
  }
  return -1;
}

int Game::Mover(int from, int to) const {
  int mover = -1;
  for (int i = 0; i < num_players(); ++i) {
    if (ActionOf(from, i) != ActionOf(to, i)) {
      if (mover >= 0) return -1;
      mover = i;
    }
  }
  return mover;
}

bool Game::IsFeasible(int from, int to) const {
  const int i = Mover(from, to);
  if (i < 0) return false;
  const auto& next = Moves(i, ActionOf(from, i));
  return std::binary_search(next.begin(), next.end(), ActionOf(to, i));
}

std::vector<Transition> FeasibleTransitions(const Game& game) {
  std::vector<Transition> out;
  for (int s = 0; s < game.num_profiles(); ++s) {
    for (int i = 0; i < game.num_players(); ++i) {
      const int ai = game.ActionOf(s, i);
      for (int b : game.Moves(i, ai)) {
        if (b == ai) continue;
        out.push_back({s, game.WithAction(s, i, b), i});
      }
    }
  }
  return out;
}

PotentialReport ValidatePotential(const Game& game, double tolerance) {
  const Eigen::VectorXd& phi = game.potential();
  PotentialReport report;
  for (int s = 0; s < game.num_profiles(); ++s) {
    for (int i = 0; i < game.num_players(); ++i) {
      const int ai = game.ActionOf(s, i);
      for (int b = 0; b < game.num_actions(i); ++b) {
        if (b == ai) continue;
        const int t = game.WithAction(s, i, b);
        const double du = game.Utility(i, t) - game.Utility(i, s);
        const double dphi = phi(t) - phi(s);
        if (std::abs(du - dphi) > tolerance) {
          report.violations.push_back({i, ai, b, s, du, dphi});
        }
      }
    }
  }
  return report;
}

Eigen::VectorXd RecoverPotential(const Game& game, double tolerance) {
  const int num = game.num_profiles();
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(num);
  std::vector<int> parent(num, -1);
  std::vector<bool> seen(num, false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int i = 0; i < game.num_players(); ++i) {
      for (int b = 0; b < game.num_actions(i); ++b) {
        const int t = game.WithAction(s, i, b);
        if (seen[t]) continue;
        seen[t] = true;
        parent[t] = s;
        phi(t) = phi(s) + game.Utility(i, t) - game.Utility(i, s);
        queue.push_back(t);
      }
    }
  }

  auto path_to_root = [&](int s) {
    std::vector<int> path{s};
    while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
    return path;  // s ... 0
  };

  for (int s = 0; s < num; ++s) {
    for (int i = 0; i < game.num_players(); ++i) {
      for (int b = 0; b < game.num_actions(i); ++b) {
        const int t = game.WithAction(s, i, b);
        if (t <= s) continue;
        const double du = game.Utility(i, t) - game.Utility(i, s);
        if (std::abs((phi(t) - phi(s)) - du) <= tolerance) continue;
        // Witness: tree path lca -> s, edge s -> t, tree path t -> lca.
        std::vector<int> up_s = path_to_root(s);
        std::vector<int> up_t = path_to_root(t);
        while (up_s.size() > 1 && up_t.size() > 1 &&
               up_s[up_s.size() - 2] == up_t[up_t.size() - 2]) {
          up_s.pop_back();
          up_t.pop_back();
        }
        up_t.pop_back();
        std::vector<int> cycle(up_s.rbegin(), up_s.rend());
        cycle.insert(cycle.end(), up_t.begin(), up_t.end());
        std::ostringstream msg;
        msg << "utilities do not admit a potential: cycle";
        for (int c : cycle) msg << ' ' << game.ProfileLabel(c);
        throw NotPotentialError(msg.str(), std::move(cycle));
      }
    }
  }
  phi.array() -= phi.minCoeff();
  return phi;
}

std::vector<int> NashEquilibria(const Game& game) {
  std::vector<int> out;
  for (int s = 0; s < game.num_profiles(); ++s) {
    bool stable = true;
    for (int i = 0; i < game.num_players() && stable; ++i) {
      for (int b = 0; b < game.num_actions(i); ++b) {
        if (game.Utility(i, game.WithAction(s, i, b)) > game.Utility(i, s)) {
          stable = false;
          break;
        }
      }
    }
    if (stable) out.push_back(s);
  }
  return out;
}

std::vector<int> PotentialMaximizers(const Game& game, double tolerance) {
  const Eigen::VectorXd phi =
      game.has_potential() ? game.potential() : RecoverPotential(game);
  const double best = phi.maxCoeff();
  std::vector<int> out;
  for (int s = 0; s < phi.size(); ++s) {
    if (phi(s) >= best - tolerance) out.push_back(s);
  }
  return out;
}

namespace {

// Actions reachable from `start` in the (optionally reversed) move digraph.
std::vector<bool> Reachable(const MoveSets& moves, int start, bool reversed) {
  const int k = static_cast<int>(moves.size());
  std::vector<bool> seen(k, false);
  std::vector<int> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < k; ++b) {
      if (seen[b]) continue;
      const bool edge = reversed
                            ? std::binary_search(moves[b].begin(),
                                                 moves[b].end(), a)
                            : std::binary_search(moves[a].begin(),
                                                 moves[a].end(), b);
      if (edge) {
        seen[b] = true;
        stack.push_back(b);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<PlayerCheck> CheckReachability(const Game& game) {
  std::vector<PlayerCheck> out;
  for (int i = 0; i < game.num_players(); ++i) {
    PlayerCheck check{i};
    const MoveSets& moves = game.Moves(i);
    const std::vector<bool> fwd = Reachable(moves, 0, false);
    const std::vector<bool> bwd = Reachable(moves, 0, true);
    for (int b = 0; b < game.num_actions(i) && check.ok; ++b) {
      if (!fwd[b]) check = {i, false, {0, b}};
      else if (!bwd[b]) check = {i, false, {b, 0}};
    }
    out.push_back(check);
  }
  return out;
}

std::vector<PlayerCheck> CheckReversibility(const Game& game) {
  std::vector<PlayerCheck> out;
  for (int i = 0; i < game.num_players(); ++i) {
    PlayerCheck check{i};
    const MoveSets& moves = game.Moves(i);
    for (int a = 0; a < game.num_actions(i) && check.ok; ++a) {
      for (int b : moves[a]) {
        if (!std::binary_search(moves[b].begin(), moves[b].end(), a)) {
          check = {i, false, {a, b}};
          break;
        }
      }
    }
    out.push_back(check);
  }
  return out;
}

}  // namespace blll
