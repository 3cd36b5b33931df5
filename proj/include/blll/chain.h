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

// Exact transition matrices of the learning dynamics and their stationary
// distributions.
//
// Everything here is templated on the scalar type so that the same code
// paths run in double (the default everywhere else) and in long double when
// a test wants extra headroom. States are profile indices of the Game.

#ifndef BLLL_CHAIN_H_
#define BLLL_CHAIN_H_

#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blll/comm_model.h"
#include "blll/game.h"
#include "blll/numeric.h"

namespace blll {

// Raised when a chain is not irreducible/aperiodic or a solve is inaccurate.
class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChainProvenance { kPerfect, kStochasticLinks, kUnperturbed };

template <typename Scalar = double>
struct PerturbedChain {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix transition;  // row-stochastic
  Scalar epsilon = Scalar(0);
  ChainProvenance provenance = ChainProvenance::kPerfect;

  int num_states() const { return static_cast<int>(transition.rows()); }
};

enum class StationaryMethod { kLinearSolve, kTreeTheorem };

template <typename Scalar = double>
struct StationaryDistribution {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mu;
  Scalar epsilon = Scalar(0);
  Scalar tau = Scalar(0);
  StationaryMethod method = StationaryMethod::kLinearSolve;
};

inline constexpr int kTreeTheoremStateCap = 8;

namespace internal {

inline void CheckEpsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("eps must lie in (0, 1)");
  }
}

// Fills the diagonal with the row complement.
template <typename Scalar>
void CloseRows(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& p) {
  for (Eigen::Index s = 0; s < p.rows(); ++s) {
    Scalar off = Scalar(0);
    for (Eigen::Index t = 0; t < p.cols(); ++t) {
      if (t != s) off += p(s, t);
    }
    p(s, s) = Scalar(1) - off;
  }
}

// Realization-weighted switch probability for one proposed move, excluding
// the 1 / (n |A_i^cons|) proposal factor.
template <typename Scalar>
Scalar WeightedSwitch(const ConnectivityModel& comm,
                      const PartialUtilityModel& partial, int from, int to,
                      int agent, Scalar eps) {
  using std::log;
  const Scalar inv_tau = -log(eps);
  Scalar sum = Scalar(0);
  for (const auto& [r, prob] : EnumerateRealizations(
           comm, agent, from, static_cast<double>(eps))) {
    if (prob == 0.0) continue;
    const double du = partial.Value(agent, r.reachable, to) -
                      partial.Value(agent, r.reachable, from);
    sum += Scalar(prob) * Logistic(Scalar(du) * inv_tau);
  }
  return sum;
}

}  // namespace internal

// P^eps for binary log-linear learning with perfect links. Off-diagonal
// entries are (1 / (n |A_i^cons(a_i)|)) * logistic((U_i(a1) - U_i(a0)) / tau).
template <typename Scalar = double>
PerturbedChain<Scalar> TransitionMatrixPerfect(const Game& game, Scalar eps) {
  using std::log;
  internal::CheckEpsilon(static_cast<double>(eps));
  const int num = game.num_profiles();
  const int n = game.num_players();
  const Scalar inv_tau = -log(eps);
  PerturbedChain<Scalar> chain;
  chain.epsilon = eps;
  chain.provenance = ChainProvenance::kPerfect;
  chain.transition.setZero(num, num);
  for (int s = 0; s < num; ++s) {
    for (int i = 0; i < n; ++i) {
      const int ai = game.ActionOf(s, i);
      const auto& moves = game.Moves(i, ai);
      const Scalar factor = Scalar(1) / Scalar(n * static_cast<int>(moves.size()));
      for (int b : moves) {
        if (b == ai) continue;
        const int t = game.WithAction(s, i, b);
        const Scalar du = Scalar(game.Utility(i, t) - game.Utility(i, s));
        chain.transition(s, t) += factor * Logistic(du * inv_tau);
      }
    }
  }
  internal::CloseRows(chain.transition);
  return chain;
}

// P^eps with lossy links: each proposed move is weighted by the probability
// of every realization of the mover's heard-from set at the current profile,
// evaluated with that realization's partial utilities.
template <typename Scalar = double>
PerturbedChain<Scalar> TransitionMatrixStochastic(
    const Game& game, const ConnectivityModel& comm,
    const PartialUtilityModel& partial, Scalar eps) {
  internal::CheckEpsilon(static_cast<double>(eps));
  if (comm.num_players() != game.num_players()) {
    throw ConfigError("connectivity model and game disagree on player count");
  }
  const int num = game.num_profiles();
  const int n = game.num_players();
  PerturbedChain<Scalar> chain;
  chain.epsilon = eps;
  chain.provenance = ChainProvenance::kStochasticLinks;
  chain.transition.setZero(num, num);
  for (int s = 0; s < num; ++s) {
    for (int i = 0; i < n; ++i) {
      const int ai = game.ActionOf(s, i);
      const auto& moves = game.Moves(i, ai);
      const Scalar factor = Scalar(1) / Scalar(n * static_cast<int>(moves.size()));
      for (int b : moves) {
        if (b == ai) continue;
        const int t = game.WithAction(s, i, b);
        chain.transition(s, t) +=
            factor *
            internal::WeightedSwitch<Scalar>(comm, partial, s, t, i, eps);
      }
    }
  }
  internal::CloseRows(chain.transition);
  return chain;
}

// Unperturbed asynchronous best reply process: the candidate is taken iff it
// strictly improves the mover's utility. Exact ties keep the current action,
// matching BestReplyStep (the eps -> 0 limit of BLLL would split them 1/2).
inline PerturbedChain<double> BestReplyTransitionMatrix(const Game& game) {
  const int num = game.num_profiles();
  const int n = game.num_players();
  PerturbedChain<double> chain;
  chain.provenance = ChainProvenance::kUnperturbed;
  chain.transition.setZero(num, num);
  for (int s = 0; s < num; ++s) {
    for (int i = 0; i < n; ++i) {
      const int ai = game.ActionOf(s, i);
      const auto& moves = game.Moves(i, ai);
      for (int b : moves) {
        if (b == ai) continue;
        const int t = game.WithAction(s, i, b);
        if (game.Utility(i, t) > game.Utility(i, s)) {
          chain.transition(s, t) += 1.0 / (n * static_cast<double>(moves.size()));
        }
      }
    }
  }
  internal::CloseRows(chain.transition);
  return chain;
}

// log P^eps(from -> to) for a feasible move; both link variants. Stays
// finite far below the range where the plain probability underflows.
template <typename Scalar = double>
Scalar LogTransitionProbabilityPerfect(const Game& game, int from, int to,
                                       Scalar eps) {
  using std::log;
  internal::CheckEpsilon(static_cast<double>(eps));
  if (!game.IsFeasible(from, to)) {
    throw InfeasibleTransition("not a feasible single-agent move");
  }
  const int i = game.Mover(from, to);
  const auto k = game.Moves(i, game.ActionOf(from, i)).size();
  const Scalar du = Scalar(game.Utility(i, to) - game.Utility(i, from));
  return -log(Scalar(game.num_players() * static_cast<int>(k))) +
         LogLogistic(du * -log(eps));
}

template <typename Scalar = double>
Scalar LogTransitionProbabilityStochastic(const Game& game,
                                          const ConnectivityModel& comm,
                                          const PartialUtilityModel& partial,
                                          int from, int to, Scalar eps) {
  using std::log;
  internal::CheckEpsilon(static_cast<double>(eps));
  if (!game.IsFeasible(from, to)) {
    throw InfeasibleTransition("not a feasible single-agent move");
  }
  const int i = game.Mover(from, to);
  const auto k = game.Moves(i, game.ActionOf(from, i)).size();
  const Scalar inv_tau = -log(eps);
  Scalar acc = -std::numeric_limits<Scalar>::infinity();
  const double deps = static_cast<double>(eps);
  for (int mask = 0; mask < (1 << game.num_players()); ++mask) {
    if (!Contains(static_cast<AgentSet>(mask), i)) continue;
    const Realization r{i, static_cast<AgentSet>(mask)};
    const double log_p = LogRealizationProbability(comm, r, from, deps);
    if (log_p == -std::numeric_limits<double>::infinity()) continue;
    const double du = partial.Value(i, r.reachable, to) -
                      partial.Value(i, r.reachable, from);
    acc = LogAddExp(acc, Scalar(log_p) + LogLogistic(Scalar(du) * inv_tau));
  }
  return acc - log(Scalar(game.num_players() * static_cast<int>(k)));
}

struct ChainStructure {
  bool irreducible = true;
  bool aperiodic = true;
  int period = 1;
  // (x, y) with y unreachable from x when !irreducible.
  std::pair<int, int> unreachable{-1, -1};
};

// Strong connectivity of the positive-entry digraph plus the period
// (gcd of BFS level differences along edges).
template <typename Scalar>
ChainStructure AnalyzeStructure(const PerturbedChain<Scalar>& chain) {
  const int num = chain.num_states();
  const auto& p = chain.transition;
  ChainStructure out;
  auto bfs = [&](bool reversed) {
    std::vector<int> level(num, -1);
    std::deque<int> queue{0};
    level[0] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y = 0; y < num; ++y) {
        const Scalar w = reversed ? p(y, x) : p(x, y);
        if (level[y] < 0 && w > Scalar(0)) {
          level[y] = level[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return level;
  };
  const std::vector<int> fwd = bfs(false);
  const std::vector<int> bwd = bfs(true);
  for (int y = 0; y < num; ++y) {
    if (fwd[y] < 0) {
      out.irreducible = false;
      out.unreachable = {0, y};
      break;
    }
    if (bwd[y] < 0) {
      out.irreducible = false;
      out.unreachable = {y, 0};
      break;
    }
  }
  if (!out.irreducible) {
    out.aperiodic = false;
    out.period = 0;
    return out;
  }
  int g = 0;
  for (int x = 0; x < num; ++x) {
    for (int y = 0; y < num; ++y) {
      if (p(x, y) > Scalar(0)) g = std::gcd(g, std::abs(fwd[x] + 1 - fwd[y]));
    }
  }
  out.period = g;
  out.aperiodic = (g == 1);
  return out;
}

// Solves mu P = mu, sum(mu) = 1 by dense Grassmann-Taksar-Heyman elimination.
// Only off-diagonal entries are read and no subtraction occurs, so rates of
// order eps^r survive even when 1 - P(x, x) rounds to zero.
template <typename Scalar>
StationaryDistribution<Scalar> StationaryLinear(
    const PerturbedChain<Scalar>& chain, Scalar residual_tolerance = Scalar(1e-10)) {
  using Matrix = typename PerturbedChain<Scalar>::Matrix;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const ChainStructure structure = AnalyzeStructure(chain);
  if (!structure.irreducible) {
    throw ChainError("chain is reducible: state " +
                     std::to_string(structure.unreachable.second) +
                     " is unreachable from state " +
                     std::to_string(structure.unreachable.first));
  }
  if (!structure.aperiodic) {
    throw ChainError("chain is periodic with period " +
                     std::to_string(structure.period));
  }
  const int num = chain.num_states();
  Matrix a = chain.transition;
  for (int k = num - 1; k > 0; --k) {
    const Scalar out = a.row(k).head(k).sum();
    if (!(out > Scalar(0))) throw ChainError("elimination hit a zero pivot");
    a.col(k).head(k) /= out;
    a.topLeftCorner(k, k).noalias() += a.col(k).head(k) * a.row(k).head(k);
  }
  Vector mu = Vector::Zero(num);
  mu(0) = Scalar(1);
  for (int j = 1; j < num; ++j) mu(j) = mu.head(j).dot(a.col(j).head(j));
  mu /= mu.sum();
  const Scalar residual =
      (chain.transition.transpose() * mu - mu).cwiseAbs().maxCoeff();
  if (!(residual <= residual_tolerance)) {
    throw ChainError("stationary solve residual too large");
  }
  StationaryDistribution<Scalar> out;
  out.mu = std::move(mu);
  out.epsilon = chain.epsilon;
  out.tau = chain.epsilon > Scalar(0)
                ? Scalar(-1) / std::log(chain.epsilon)
                : Scalar(0);
  out.method = StationaryMethod::kLinearSolve;
  return out;
}

// Markov chain tree theorem: the weight of state z is the sum, over all
// spanning trees directed into z, of the product of edge probabilities; the
// stationary distribution is the normalized weight vector. Enumerates every
// tree, so only for tiny chains.
template <typename Scalar>
StationaryDistribution<Scalar> StationaryTreeTheorem(
    const PerturbedChain<Scalar>& chain, int cap = kTreeTheoremStateCap) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int num = chain.num_states();
  if (num > cap) {
    throw ConfigError("tree enumeration is capped at " + std::to_string(cap) +
                      " states; use StationaryLinear");
  }
  const auto& p = chain.transition;
  std::vector<std::vector<int>> out_edges(num);
  for (int x = 0; x < num; ++x) {
    for (int y = 0; y < num; ++y) {
      if (x != y && p(x, y) > Scalar(0)) out_edges[x].push_back(y);
    }
  }

  Vector weight = Vector::Zero(num);
  std::vector<int> parent(num, -1);
  for (int root = 0; root < num; ++root) {
    std::vector<int> order;
    for (int x = 0; x < num; ++x) {
      if (x != root) order.push_back(x);
    }
    std::fill(parent.begin(), parent.end(), -1);
    Scalar total = Scalar(0);
    // Depth-first over parent choices; rejects a choice that closes a cycle
    // through already-assigned nodes.
    auto assign = [&](auto&& self, size_t k, Scalar product) -> void {
      if (k == order.size()) {
        total += product;
        return;
      }
      const int x = order[k];
      for (int y : out_edges[x]) {
        int walk = y;
        while (walk != root && walk != x && parent[walk] >= 0) walk = parent[walk];
        if (walk == x) continue;
        parent[x] = y;
        self(self, k + 1, product * p(x, y));
        parent[x] = -1;
      }
    };
    assign(assign, 0, Scalar(1));
    weight(root) = total;
  }
  const Scalar sum = weight.sum();
  if (!(sum > Scalar(0))) throw ChainError("chain admits no spanning in-tree");
  StationaryDistribution<Scalar> out;
  out.mu = weight / sum;
  out.epsilon = chain.epsilon;
  out.tau = chain.epsilon > Scalar(0)
                ? Scalar(-1) / std::log(chain.epsilon)
                : Scalar(0);
  out.method = StationaryMethod::kTreeTheorem;
  return out;
}

}  // namespace blll

#endif  // BLLL_CHAIN_H_
