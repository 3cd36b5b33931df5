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

#include "blll/spec_io.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace blll {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> Tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) {
      text.resize(hash);
    }
    std::istringstream stream(text);
    Line line{number, {}};
    for (std::string tok; stream >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

class Reader {
 public:
  Reader(std::string source, const Line& line)
      : source_(std::move(source)), line_(line) {}

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(source_, line_.number, message);
  }

  size_t size() const { return line_.tokens.size(); }
  const std::string& operator[](size_t k) const { return line_.tokens[k]; }

  void ExpectSize(size_t n) const {
    if (size() != n) {
      Fail("'" + line_.tokens[0] + "' expects " + std::to_string(n - 1) +
           " fields, got " + std::to_string(size() - 1));
    }
  }
  void ExpectAtLeast(size_t n) const {
    if (size() < n) {
      Fail("'" + line_.tokens[0] + "' expects at least " +
           std::to_string(n - 1) + " fields");
    }
  }

  double Number(size_t k) const {
    const std::string& tok = line_.tokens[k];
    try {
      size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      Fail("expected a number, got '" + tok + "'");
    }
  }

  int Integer(size_t k) const {
    const std::string& tok = line_.tokens[k];
    try {
      size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      Fail("expected an integer, got '" + tok + "'");
    }
  }

  // 1-based player number -> 0-based index.
  int Player(size_t k, int num_players) const {
    const int p = Integer(k);
    if (p < 1 || p > num_players) {
      Fail("player " + line_.tokens[k] + " out of range 1.." +
           std::to_string(num_players));
    }
    return p - 1;
  }

  int Action(size_t k, const std::vector<std::string>& labels,
             int player) const {
    for (size_t a = 0; a < labels.size(); ++a) {
      if (labels[a] == line_.tokens[k]) return static_cast<int>(a);
    }
    Fail("unknown action '" + line_.tokens[k] + "' for player " +
         std::to_string(player + 1));
  }

  int line() const { return line_.number; }

 private:
  std::string source_;
  const Line& line_;
};

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

}  // namespace

Game ParseGameSpec(std::istream& in, const std::string& source) {
  const std::vector<Line> lines = Tokenize(in);
  int n = 0;
  std::vector<std::vector<std::string>> labels;
  std::vector<int> strides;
  int num_profiles = 0;

  auto profile_at = [&](const Reader& r, size_t first) {
    int index = 0;
    for (int i = 0; i < n; ++i) {
      index += r.Action(first + i, labels[i], i) * strides[i];
    }
    return index;
  };
  auto require_actions = [&](const Reader& r) {
    if (n == 0) r.Fail("'players' must come first");
    for (int i = 0; i < n; ++i) {
      if (labels[i].empty()) {
        r.Fail("actions for player " + std::to_string(i + 1) +
               " must be declared before tables");
      }
    }
    if (strides.empty()) {
      strides.resize(n);
      num_profiles = 1;
      for (int i = 0; i < n; ++i) {
        strides[i] = num_profiles;
        num_profiles *= static_cast<int>(labels[i].size());
      }
    }
  };

  Eigen::MatrixXd utilities;
  std::vector<std::vector<bool>> utility_seen;
  std::optional<Eigen::VectorXd> potential;
  std::vector<bool> potential_seen;
  std::vector<MoveSets> moves;
  std::vector<std::vector<bool>> moves_seen;
  std::vector<std::string> profile_labels;
  int last_line = 0;

  for (const Line& line : lines) {
    const Reader r(source, line);
    last_line = line.number;
    const std::string& key = r[0];
    if (key == "players") {
      r.ExpectSize(2);
      if (n != 0) r.Fail("duplicate 'players'");
      n = r.Integer(1);
      if (n < 1 || n > 31) r.Fail("player count must lie in 1..31");
      labels.assign(n, {});
    } else if (key == "actions") {
      r.ExpectAtLeast(3);
      if (n == 0) r.Fail("'players' must come first");
      if (!strides.empty()) r.Fail("actions must precede tables");
      const int i = r.Player(1, n);
      if (!labels[i].empty()) r.Fail("duplicate actions for player " + r[1]);
      std::set<std::string> unique;
      for (size_t k = 2; k < r.size(); ++k) {
        if (!unique.insert(r[k]).second) r.Fail("duplicate action '" + r[k] + "'");
        labels[i].push_back(r[k]);
      }
    } else if (key == "utility") {
      require_actions(r);
      r.ExpectSize(static_cast<size_t>(n) + 3);
      if (utility_seen.empty()) {
        utilities.setZero(num_profiles, n);
        utility_seen.assign(n, std::vector<bool>(num_profiles, false));
      }
      const int i = r.Player(1, n);
      const int s = profile_at(r, 2);
      if (utility_seen[i][s]) r.Fail("duplicate utility row");
      utility_seen[i][s] = true;
      utilities(s, i) = r.Number(static_cast<size_t>(n) + 2);
    } else if (key == "potential") {
      require_actions(r);
      r.ExpectSize(static_cast<size_t>(n) + 2);
      if (!potential) {
        potential = Eigen::VectorXd::Zero(num_profiles);
        potential_seen.assign(num_profiles, false);
      }
      const int s = profile_at(r, 1);
      if (potential_seen[s]) r.Fail("duplicate potential row");
      potential_seen[s] = true;
      (*potential)(s) = r.Number(static_cast<size_t>(n) + 1);
    } else if (key == "moves") {
      require_actions(r);
      r.ExpectAtLeast(3);
      const int i = r.Player(1, n);
      if (moves.empty()) {
        moves.resize(n);
        moves_seen.resize(n);
      }
      if (moves[i].empty()) {
        moves[i].resize(labels[i].size());
        moves_seen[i].assign(labels[i].size(), false);
      }
      const int from = r.Action(2, labels[i], i);
      if (moves_seen[i][from]) r.Fail("duplicate moves row for '" + r[2] + "'");
      moves_seen[i][from] = true;
      for (size_t k = 3; k < r.size(); ++k) {
        moves[i][from].push_back(r.Action(k, labels[i], i));
      }
    } else if (key == "label") {
      require_actions(r);
      r.ExpectSize(static_cast<size_t>(n) + 2);
      if (profile_labels.empty()) profile_labels.assign(num_profiles, "");
      const int s = profile_at(r, 1);
      if (!profile_labels[s].empty()) r.Fail("duplicate label row");
      profile_labels[s] = r[static_cast<size_t>(n) + 1];
    } else {
      r.Fail("unknown directive '" + key + "'");
    }
  }

  const Line end{last_line + 1, {"<end>"}};
  const Reader at_end(source, end);
  if (n == 0) at_end.Fail("missing 'players'");
  for (int i = 0; i < n; ++i) {
    if (labels[i].empty()) {
      at_end.Fail("missing actions for player " + std::to_string(i + 1));
    }
  }
  if (utility_seen.empty()) at_end.Fail("missing utility table");
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < num_profiles; ++s) {
      if (!utility_seen[i][s]) {
        at_end.Fail("utility table incomplete: no row for player " +
                    std::to_string(i + 1) + " at profile " + std::to_string(s));
      }
    }
  }
  if (potential) {
    for (int s = 0; s < num_profiles; ++s) {
      if (!potential_seen[s]) {
        at_end.Fail("potential table incomplete at profile " + std::to_string(s));
      }
    }
  }
  if (!moves.empty()) {
    for (int i = 0; i < n; ++i) {
      if (moves[i].empty()) {
        // Unconstrained player: every action reachable in one step.
        moves[i].assign(labels[i].size(), {});
        for (auto& next : moves[i]) {
          for (int a = 0; a < static_cast<int>(labels[i].size()); ++a) {
            next.push_back(a);
          }
        }
        continue;
      }
      for (size_t a = 0; a < labels[i].size(); ++a) {
        if (!moves_seen[i][a]) {
          at_end.Fail("moves for player " + std::to_string(i + 1) +
                      " missing a row for action '" + labels[i][a] + "'");
        }
      }
    }
  }
  if (!profile_labels.empty()) {
    for (int s = 0; s < num_profiles; ++s) {
      if (profile_labels[s].empty()) {
        at_end.Fail("label rows must cover every profile");
      }
    }
  }
  return Game(std::move(labels), std::move(utilities), std::move(potential),
              std::move(moves), std::move(profile_labels));
}

Game LoadGameSpec(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return ParseGameSpec(in, path);
}

CommSpec ParseCommSpec(std::istream& in, const Game& game,
                       const std::string& source) {
  const std::vector<Line> lines = Tokenize(in);
  const int n = game.num_players();
  std::optional<ConnectivityMode> mode;
  double uniform_value = 1.0;
  bool uniform_seen = false;
  struct LinkRow {
    int line;
    int i, j;
    std::optional<int> profile;
    double value;
  };
  std::vector<LinkRow> links;
  PartialUtilityModel partial(game);

  // Expands '*' in profile position k over that player's actions.
  auto for_each_profile = [&](const Reader& r, size_t first,
                              const std::function<void(int)>& fn) {
    std::vector<int> fixed(n, -1);
    for (int i = 0; i < n; ++i) {
      if (r[first + i] != "*") {
        fixed[i] = r.Action(first + i, game.action_labels()[i], i);
      }
    }
    for (int s = 0; s < game.num_profiles(); ++s) {
      bool match = true;
      for (int i = 0; i < n && match; ++i) {
        match = fixed[i] < 0 || game.ActionOf(s, i) == fixed[i];
      }
      if (match) fn(s);
    }
  };

  for (const Line& line : lines) {
    const Reader r(source, line);
    const std::string& key = r[0];
    if (key == "mode") {
      r.ExpectSize(2);
      if (mode) r.Fail("duplicate 'mode'");
      if (r[1] == "exponent") {
        mode = ConnectivityMode::kExponentCoupled;
      } else if (r[1] == "probability") {
        mode = ConnectivityMode::kExplicitProbability;
      } else {
        r.Fail("mode must be 'exponent' or 'probability'");
      }
    } else if (key == "uniform") {
      r.ExpectSize(2);
      if (uniform_seen) r.Fail("duplicate 'uniform'");
      uniform_seen = true;
      uniform_value = r.Number(1);
    } else if (key == "link") {
      // link <i> <j> <value> [at <a_1> ... <a_n>]
      if (r.size() != 4 && r.size() != static_cast<size_t>(n) + 5) {
        r.Fail("'link' expects <i> <j> <value> [at <profile>]");
      }
      LinkRow row{r.line(), r.Player(1, n), r.Player(2, n), std::nullopt,
                  r.Number(3)};
      if (row.i == row.j) r.Fail("self-links are fixed to probability 1");
      if (r.size() > 4) {
        if (r[4] != "at") r.Fail("expected 'at' before the profile");
        int s = 0;
        for (int i = 0; i < n; ++i) {
          s = game.WithAction(s, i, r.Action(5 + i, game.action_labels()[i], i));
        }
        row.profile = s;
      }
      links.push_back(row);
    } else if (key == "partial") {
      // partial <agent> <subset> <a_1> ... <a_n> <value>
      r.ExpectSize(static_cast<size_t>(n) + 4);
      const int agent = r.Player(1, n);
      AgentSet subset = 0;
      std::istringstream members(r[2]);
      for (std::string tok; std::getline(members, tok, ',');) {
        int p = 0;
        try {
          size_t used = 0;
          p = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          r.Fail("bad subset '" + r[2] + "'");
        }
        if (p < 1 || p > n) r.Fail("subset member out of range in '" + r[2] + "'");
        subset |= AgentSet{1} << (p - 1);
      }
      const double value = r.Number(static_cast<size_t>(n) + 3);
      try {
        for_each_profile(r, 3, [&](int s) {
          if (subset != FullSet(n) && partial.Has(agent, subset, s)) {
            r.Fail("duplicate partial utility row");
          }
          partial.Set(agent, subset, s, value);
        });
      } catch (const ParseError&) {
        throw;
      } catch (const ConfigError& e) {
        r.Fail(e.what());
      }
    } else {
      r.Fail("unknown directive '" + key + "'");
    }
  }

  const ConnectivityMode resolved =
      mode.value_or(ConnectivityMode::kExplicitProbability);
  if (!mode && (uniform_seen || !links.empty())) {
    throw ParseError(source, lines.empty() ? 1 : lines.front().number,
                     "link values given without 'mode'");
  }
  auto build = [&]() -> ConnectivityModel {
    try {
      ConnectivityModel model(resolved, n, uniform_value);
      for (const LinkRow& row : links) {
        try {
          if (row.profile) {
            model.SetLink(row.i, row.j, *row.profile, row.value);
          } else {
            model.SetLink(row.i, row.j, row.value);
          }
        } catch (const ConfigError& e) {
          throw ParseError(source, row.line, e.what());
        }
      }
      return model;
    } catch (const ParseError&) {
      throw;
    } catch (const ConfigError& e) {
      throw ParseError(source, 1, e.what());
    }
  };
  return CommSpec{build(), std::move(partial)};
}

CommSpec LoadCommSpec(const std::string& path, const Game& game) {
  std::ifstream in = OpenOrThrow(path);
  return ParseCommSpec(in, game, path);
}

SweepConfig ParseSweepConfig(std::istream& in, const std::string& source) {
  const std::vector<Line> lines = Tokenize(in);
  SweepConfig config;
  double tau_min = 0.02, tau_max = 5.0;
  int tau_points = 40;
  double pc_min = 0.5, pc_max = 1.0;
  int pc_points = 41;
  bool pc_drop_first = true;
  std::vector<double> m_values;
  int last_line = 1;
  for (const Line& line : lines) {
    const Reader r(source, line);
    last_line = line.number;
    const std::string& key = r[0];
    if (key == "tau_min") {
      r.ExpectSize(2);
      tau_min = r.Number(1);
    } else if (key == "tau_max") {
      r.ExpectSize(2);
      tau_max = r.Number(1);
    } else if (key == "tau_points") {
      r.ExpectSize(2);
      tau_points = r.Integer(1);
    } else if (key == "axis") {
      r.ExpectSize(2);
      if (r[1] == "pc") {
        config.axis = SweepAxis::kProbability;
      } else if (r[1] == "m") {
        config.axis = SweepAxis::kExponent;
      } else {
        r.Fail("axis must be 'pc' or 'm'");
      }
    } else if (key == "pc_min") {
      r.ExpectSize(2);
      pc_min = r.Number(1);
      pc_drop_first = false;
    } else if (key == "pc_max") {
      r.ExpectSize(2);
      pc_max = r.Number(1);
    } else if (key == "pc_points") {
      r.ExpectSize(2);
      pc_points = r.Integer(1);
    } else if (key == "m_values") {
      r.ExpectAtLeast(2);
      m_values.clear();
      for (size_t k = 1; k < r.size(); ++k) m_values.push_back(r.Number(k));
    } else if (key == "ptar") {
      r.ExpectSize(2);
      config.p_target = r.Number(1);
    } else if (key == "curves") {
      r.ExpectAtLeast(2);
      config.marked_curves.clear();
      for (size_t k = 1; k < r.size(); ++k) {
        config.marked_curves.push_back(r.Number(k));
      }
    } else {
      r.Fail("unknown key '" + key + "'");
    }
  }
  const Line end{last_line, {"<config>"}};
  const Reader at_end(source, end);
  try {
    config.tau = SweepConfig::LogSpace(tau_min, tau_max, tau_points);
    if (config.axis == SweepAxis::kProbability) {
      // The default grid omits p_c = 0.5 itself.
      config.second = SweepConfig::LinSpace(
          pc_min, pc_max, pc_points, pc_drop_first);
    } else {
      if (m_values.empty()) at_end.Fail("axis m needs 'm_values'");
      config.second = m_values;
    }
    config.Validate();
  } catch (const ParseError&) {
    throw;
  } catch (const ConfigError& e) {
    at_end.Fail(e.what());
  }
  return config;
}

SweepConfig LoadSweepConfig(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return ParseSweepConfig(in, path);
}

}  // namespace blll
