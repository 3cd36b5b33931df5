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

#include "blll/comm_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "blll/numeric.h"

namespace blll {

std::string FormatAgentSet(AgentSet set) {
  std::string out = "{";
  bool first = true;
  for (int j = 0; j < 32; ++j) {
    if (!Contains(set, j)) continue;
    if (!first) out += ',';
    out += std::to_string(j + 1);
    first = false;
  }
  return out + "}";
}

ConnectivityModel::ConnectivityModel(ConnectivityMode mode, int num_players,
                                     double value)
    : mode_(mode), num_players_(num_players) {
  if (num_players < 1) throw ConfigError("connectivity model needs players");
  CheckValue(value);
  link_.assign(static_cast<size_t>(num_players) * num_players, value);
}

void ConnectivityModel::CheckValue(double value) const {
  if (mode_ == ConnectivityMode::kExplicitProbability) {
    if (!(value > 0.0 && value <= 1.0)) {
      throw ConfigError("link probability must lie in (0, 1]");
    }
  } else if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError("link exponent m must be positive and finite");
  }
}

double& ConnectivityModel::Slot(int i, int j) {
  if (i > j) std::swap(i, j);
  return link_[static_cast<size_t>(i) * num_players_ + j];
}

double ConnectivityModel::Slot(int i, int j) const {
  if (i > j) std::swap(i, j);
  return link_[static_cast<size_t>(i) * num_players_ + j];
}

void ConnectivityModel::SetLink(int i, int j, double value) {
  if (i == j) throw ConfigError("self-links are fixed to probability 1");
  CheckValue(value);
  Slot(i, j) = value;
  if (i > j) std::swap(i, j);
  for (auto it = overrides_.begin(); it != overrides_.end();) {
    if (std::get<0>(it->first) == i && std::get<1>(it->first) == j) {
      it = overrides_.erase(it);
    } else {
      ++it;
    }
  }
}

void ConnectivityModel::SetLink(int i, int j, int profile, double value) {
  if (i == j) throw ConfigError("self-links are fixed to probability 1");
  CheckValue(value);
  if (i > j) std::swap(i, j);
  overrides_[{i, j, profile}] = value;
}

bool ConnectivityModel::uniform() const {
  if (num_players_ < 2) return true;
  const double first = Slot(0, 1);
  for (int i = 0; i < num_players_; ++i) {
    for (int j = i + 1; j < num_players_; ++j) {
      if (Slot(i, j) != first) return false;
    }
  }
  for (const auto& [key, v] : overrides_) {
    if (v != first) return false;
  }
  return true;
}

double ConnectivityModel::Value(int i, int j, int profile) const {
  if (i == j) {
    return mode_ == ConnectivityMode::kExplicitProbability
               ? 1.0
               : std::numeric_limits<double>::infinity();
  }
  if (i > j) std::swap(i, j);
  if (!overrides_.empty()) {
    auto it = overrides_.find({i, j, profile});
    if (it != overrides_.end()) return it->second;
  }
  return Slot(i, j);
}

std::pair<double, double> ConnectivityModel::LogConnectivity(
    int i, int j, int profile, double eps) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (i == j) return {0.0, kNegInf};
  const double v = Value(i, j, profile);
  if (mode_ == ConnectivityMode::kExplicitProbability) {
    return {std::log(v), v == 1.0 ? kNegInf : std::log1p(-v)};
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("eps must lie in (0, 1) for exponent-coupled links");
  }
  // p = 1 / (1 + eps^m), 1 - p = eps^m / (1 + eps^m).
  const double x = v * std::log(eps);
  const double log_norm = Softplus(x);
  return {-log_norm, x - log_norm};
}

double ConnectivityModel::Connectivity(int i, int j, int profile,
                                       double eps) const {
  if (i == j) return 1.0;
  if (mode_ == ConnectivityMode::kExplicitProbability) return Value(i, j, profile);
  return std::exp(LogConnectivity(i, j, profile, eps).first);
}

double LogRealizationProbability(const ConnectivityModel& model,
                                 const Realization& realization, int profile,
                                 double eps) {
  double log_p = 0.0;
  for (int j = 0; j < model.num_players(); ++j) {
    if (j == realization.agent) continue;
    const auto [in, out] =
        model.LogConnectivity(realization.agent, j, profile, eps);
    log_p += Contains(realization.reachable, j) ? in : out;
  }
  return log_p;
}

double RealizationProbability(const ConnectivityModel& model,
                              const Realization& realization, int profile,
                              double eps) {
  double p = 1.0;
  for (int j = 0; j < model.num_players(); ++j) {
    if (j == realization.agent) continue;
    const double pc = model.Connectivity(realization.agent, j, profile, eps);
    p *= Contains(realization.reachable, j) ? pc : 1.0 - pc;
  }
  return p;
}

std::vector<std::pair<Realization, double>> EnumerateRealizations(
    const ConnectivityModel& model, int agent, int profile, double eps,
    int cap) {
  const int n = model.num_players();
  if (n > cap) {
    throw ConfigError("realization enumeration capped at " +
                      std::to_string(cap) +
                      " players; use SampleRealization (Monte Carlo) instead");
  }
  std::vector<int> others;
  for (int j = 0; j < n; ++j) {
    if (j != agent) others.push_back(j);
  }
  std::vector<std::pair<double, double>> link(n);
  for (int j : others) link[j] = model.LogConnectivity(agent, j, profile, eps);

  std::vector<std::pair<Realization, double>> out;
  const std::uint32_t count = std::uint32_t{1} << others.size();
  out.reserve(count);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    AgentSet set = AgentSet{1} << agent;
    double log_p = 0.0;
    for (size_t k = 0; k < others.size(); ++k) {
      const int j = others[k];
      if ((bits >> k) & 1u) {
        set |= AgentSet{1} << j;
        log_p += link[j].first;
      } else {
        log_p += link[j].second;
      }
    }
    out.push_back({{agent, set}, std::exp(log_p)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.reachable < b.first.reachable;
  });
  return out;
}

Realization SampleRealization(const ConnectivityModel& model, int agent,
                              int profile, double eps, std::mt19937_64& rng) {
  Realization r{agent, AgentSet{1} << agent};
  for (int j = 0; j < model.num_players(); ++j) {
    if (j == agent) continue;
    if (UniformDouble(rng) < model.Connectivity(agent, j, profile, eps)) {
      r.reachable |= AgentSet{1} << j;
    }
  }
  return r;
}

PartialUtilityModel::PartialUtilityModel(const Game& game)
    : num_players_(game.num_players()),
      num_profiles_(game.num_profiles()),
      full_(game.utilities()) {
  if (num_players_ > 31) throw ConfigError("too many players for AgentSet");
}

PartialUtilityModel PartialUtilityModel::IgnoreAbsent(
    const Game& game,
    const std::function<double(int, AgentSet, int)>& reduced) {
  PartialUtilityModel model(game);
  model.source_ = PartialUtilitySource::kIgnoreAbsent;
  const int n = game.num_players();
  const AgentSet full = FullSet(n);
  for (int i = 0; i < n; ++i) {
    for (AgentSet set = 0; set < full; ++set) {
      if (!Contains(set, i)) continue;
      for (int s = 0; s < game.num_profiles(); ++s) {
        model.Set(i, set, s, reduced(i, set, s));
      }
    }
  }
  return model;
}

void PartialUtilityModel::Set(int agent, AgentSet subset, int profile,
                              double value) {
  if (agent < 0 || agent >= num_players_ || profile < 0 ||
      profile >= num_profiles_) {
    throw ConfigError("partial utility index out of range");
  }
  if (!Contains(subset, agent) || (subset & ~FullSet(num_players_)) != 0) {
    throw ConfigError("partial utility subset " + FormatAgentSet(subset) +
                      " invalid for agent " + std::to_string(agent + 1));
  }
  if (!std::isfinite(value)) throw ConfigError("partial utility must be finite");
  if (subset == FullSet(num_players_)) {
    if (value != full_(profile, agent)) {
      throw ConfigError("partial utility for the full subset must equal U_" +
                        std::to_string(agent + 1));
    }
    return;
  }
  auto [it, inserted] = tables_.try_emplace(
      {agent, subset},
      Eigen::VectorXd::Constant(num_profiles_,
                                std::numeric_limits<double>::quiet_NaN()));
  it->second(profile) = value;
}

bool PartialUtilityModel::Has(int agent, AgentSet subset, int profile) const {
  if (subset == FullSet(num_players_)) return true;
  auto it = tables_.find({agent, subset});
  return it != tables_.end() && !std::isnan(it->second(profile));
}

double PartialUtilityModel::Value(int agent, AgentSet subset,
                                  int profile) const {
  if (subset == FullSet(num_players_)) return full_(profile, agent);
  auto it = tables_.find({agent, subset});
  if (it == tables_.end() || std::isnan(it->second(profile))) {
    std::ostringstream msg;
    msg << "missing partial utility for agent " << agent + 1 << ", subset "
        << FormatAgentSet(subset) << ", profile " << profile;
    throw ConfigError(msg.str());
  }
  return it->second(profile);
}

}  // namespace blll
