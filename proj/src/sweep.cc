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

#include "blll/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "blll/chain.h"
#include "blll/numeric.h"
#include "blll/resistance.h"

namespace blll {

std::vector<double> SweepConfig::LogSpace(double lo, double hi, int points) {
  if (points < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw ConfigError("bad log-spaced grid");
  }
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < points; ++k) {
    out[k] = std::exp(a + (b - a) * k / (points - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> SweepConfig::LinSpace(double lo, double hi, int points,
                                          bool drop_first) {
  if (points < (drop_first ? 2 : 1) || !(hi >= lo)) {
    throw ConfigError("bad linear grid");
  }
  std::vector<double> out;
  for (int k = drop_first ? 1 : 0; k < points; ++k) {
    out.push_back(points == 1 ? lo : lo + (hi - lo) * k / (points - 1));
  }
  return out;
}

void SweepConfig::Validate() const {
  auto increasing = [](const std::vector<double>& v) {
    if (v.empty()) return false;
    for (size_t k = 1; k < v.size(); ++k) {
      if (!(v[k] > v[k - 1])) return false;
    }
    return true;
  };
  if (!increasing(tau)) {
    throw ConfigError("temperature grid must be nonempty and increasing");
  }
  if (!(tau.front() > 0.0)) throw ConfigError("temperatures must be positive");
  if (!increasing(second)) {
    throw ConfigError("second axis must be nonempty and increasing");
  }
  if (axis == SweepAxis::kProbability &&
      !(second.front() > 0.0 && second.back() <= 1.0)) {
    throw ConfigError("link probabilities must lie in (0, 1]");
  }
  if (axis == SweepAxis::kExponent && !(second.front() > 0.0)) {
    throw ConfigError("exponents must be positive");
  }
  if (!(p_target >= 0.0 && p_target <= 1.0)) {
    throw ConfigError("target probability must lie in [0, 1]");
  }
}

SweepRow SolveGridPoint(const Game& game, const PartialUtilityModel& partial,
                        const std::vector<int>& maximizers, double tau,
                        SweepAxis axis, double value) {
  const double eps = EpsilonFromTemperature(tau);
  SweepRow row;
  row.tau = tau;
  const ConnectivityModel comm =
      axis == SweepAxis::kProbability
          ? ConnectivityModel::UniformProbability(game.num_players(), value)
          : ConnectivityModel::UniformExponent(game.num_players(), value);
  if (axis == SweepAxis::kProbability) {
    row.p_c = value;
    // log_eps((1 - p) / p) = -tau * ln((1 - p) / p)
    row.m = value == 1.0 ? std::numeric_limits<double>::infinity()
                         : -tau * std::log((1.0 - value) / value);
  } else {
    row.m = value;
    row.p_c = CurveProbability(value, tau);
  }
  const auto chain = TransitionMatrixStochastic(game, comm, partial, eps);
  row.mu = StationaryLinear(chain).mu;
  for (int s : maximizers) row.mu_maximizers += row.mu(s);
  return row;
}

int DefaultWorkerCount() {
  if (const char* env = std::getenv("BLLL_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct GridPoint {
  double tau;
  double value;
  SweepAxis axis;
};

std::vector<SweepRow> SolveAll(const Game& game,
                               const PartialUtilityModel& partial,
                               const std::vector<GridPoint>& points,
                               int workers) {
  const std::vector<int> maximizers = PotentialMaximizers(game);
  std::vector<SweepRow> rows(points.size());
  if (workers <= 0) workers = DefaultWorkerCount();
  workers = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (size_t k = next++; k < points.size(); k = next++) {
      if (failed) return;
      try {
        rows[k] = SolveGridPoint(game, partial, maximizers, points[k].tau,
                                 points[k].axis, points[k].value);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace

std::vector<SweepRow> RunSweep(const Game& game,
                               const PartialUtilityModel& partial,
                               const SweepConfig& config, int workers) {
  config.Validate();
  std::vector<GridPoint> points;
  for (double tau : config.tau) {
    for (double v : config.second) points.push_back({tau, v, config.axis});
  }
  return SolveAll(game, partial, points, workers);
}

void WriteSweepCsv(std::ostream& out, const Game& game,
                   const std::vector<SweepRow>& rows) {
  const auto old_precision = out.precision(17);
  out << "tau,p_c,m,state_label,mu\n";
  for (const SweepRow& row : rows) {
    for (Eigen::Index s = 0; s < row.mu.size(); ++s) {
      out << row.tau << ',' << row.p_c << ',';
      if (std::isinf(row.m)) {
        out << "inf";
      } else {
        out << row.m;
      }
      out << ',' << game.ProfileLabel(static_cast<int>(s)) << ',' << row.mu(s)
          << '\n';
    }
  }
  out.precision(old_precision);
}

ThresholdResult FindThreshold(const Game& game,
                              const PartialUtilityModel& partial, double m,
                              double p_target,
                              const std::vector<double>& tau_grid) {
  SweepConfig config;
  config.tau = tau_grid;
  config.axis = SweepAxis::kExponent;
  config.second = {m};
  config.p_target = p_target;
  config.Validate();

  const std::vector<int> maximizers = PotentialMaximizers(game);
  auto mass = [&](double tau) {
    return SolveGridPoint(game, partial, maximizers, tau, SweepAxis::kExponent,
                          m)
        .mu_maximizers;
  };
  ThresholdResult result;
  result.p_target = p_target;
  result.m = m;

  int last_ok = -1;
  double last_mass = 0.0;
  for (size_t k = 0; k < tau_grid.size(); ++k) {
    const double mu = mass(tau_grid[k]);
    if (mu < p_target) break;
    last_ok = static_cast<int>(k);
    last_mass = mu;
  }
  if (last_ok < 0) return result;

  double lo = tau_grid[last_ok];
  double lo_mass = last_mass;
  if (last_ok + 1 < static_cast<int>(tau_grid.size())) {
    double hi = tau_grid[last_ok + 1];
    for (int iter = 0; iter < 40 && hi - lo > 1e-9 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double mu = mass(mid);
      if (mu >= p_target) {
        lo = mid;
        lo_mass = mu;
      } else {
        hi = mid;
      }
    }
  }
  result.found = true;
  result.tau_th = lo;
  result.p_c_th = CurveProbability(m, lo);
  result.mu_at_threshold = lo_mass;
  return result;
}

void WriteThresholdCsv(std::ostream& out, const ThresholdResult& result) {
  const auto old_precision = out.precision(17);
  out << "p_tar,tau_th,p_c_th,mu_at_threshold\n" << result.p_target << ',';
  if (result.found) {
    out << result.tau_th << ',' << result.p_c_th << ',' << result.mu_at_threshold;
  } else {
    out << "nan,nan,nan";
  }
  out << '\n';
  out.precision(old_precision);
}

FigureBundle ComputeFigures(const Game& game,
                            const PartialUtilityModel& partial, int workers) {
  const SweepConfig defaults;
  FigureBundle bundle;
  bundle.heatmap = RunSweep(game, partial, defaults, workers);

  std::vector<GridPoint> curves;
  for (double m : kFigureCurveExponents) {
    for (double tau : defaults.tau) curves.push_back({tau, m, SweepAxis::kExponent});
  }
  bundle.tau_curves = SolveAll(game, partial, curves, workers);

  std::vector<GridPoint> by_m;
  const std::vector<double> m_grid = SweepConfig::LinSpace(0.1, 4.0, 40);
  for (double tau : kFigureTemperatures) {
    for (double m : m_grid) by_m.push_back({tau, m, SweepAxis::kExponent});
  }
  bundle.m_curves = SolveAll(game, partial, by_m, workers);
  return bundle;
}

void WriteFigures(const FigureBundle& bundle, const Game& game,
                  const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::vector<SweepRow>& rows) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    WriteSweepCsv(out, game, rows);
  };
  write("heatmap.csv", bundle.heatmap);
  write("mu_vs_tau.csv", bundle.tau_curves);
  write("mu_vs_m.csv", bundle.m_curves);
}

}  // namespace blll
