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

// Parameter sweeps of the exact stationary distribution over temperature and
// link quality, threshold search, and the figure datasets.

#ifndef BLLL_SWEEP_H_
#define BLLL_SWEEP_H_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blll/comm_model.h"
#include "blll/game.h"

namespace blll {

// Second sweep axis.
enum class SweepAxis {
  // Uniform, temperature-independent link probability p_c.
  kProbability,
  // Uniform exponent m, so p_c = 1 / (1 + e^{-m / tau}) moves with tau.
  kExponent,
};

struct SweepConfig {
  std::vector<double> tau = LogSpace(0.02, 5.0, 40);
  SweepAxis axis = SweepAxis::kProbability;
  std::vector<double> second = LinSpace(0.5, 1.0, 41, /*drop_first=*/true);
  double p_target = 0.95;
  // Exponent curves also emitted as separate series by `sweep --curves`.
  std::vector<double> marked_curves = {1.0, 3.0};

  // Nonempty, strictly increasing grids with values in range.
  void Validate() const;

  static std::vector<double> LogSpace(double lo, double hi, int points);
  static std::vector<double> LinSpace(double lo, double hi, int points,
                                      bool drop_first = false);
};

struct SweepRow {
  double tau = 0.0;
  double p_c = 0.0;
  // log_eps((1 - p_c) / p_c); +inf at p_c = 1.
  double m = 0.0;
  Eigen::VectorXd mu;
  // Stationary mass of the potential-maximizer set.
  double mu_maximizers = 0.0;
};

// Builds the uniform-link chain at one grid point and solves it exactly.
SweepRow SolveGridPoint(const Game& game, const PartialUtilityModel& partial,
                        const std::vector<int>& maximizers, double tau,
                        SweepAxis axis, double value);

// Row order: tau outer, second axis inner. Results do not depend on the
// worker count.
std::vector<SweepRow> RunSweep(const Game& game,
                               const PartialUtilityModel& partial,
                               const SweepConfig& config, int workers = 0);

// BLLL_WORKERS if set to a positive integer, else hardware concurrency.
int DefaultWorkerCount();

// Long format: `tau,p_c,m,state_label,mu`, one line per state.
void WriteSweepCsv(std::ostream& out, const Game& game,
                   const std::vector<SweepRow>& rows);

struct ThresholdResult {
  bool found = false;
  double p_target = 0.0;
  double m = 0.0;
  double tau_th = 0.0;
  double p_c_th = 0.0;
  double mu_at_threshold = 0.0;
};

// Empirical search along the exponent-m curve: the largest tau such that
// every grid temperature at or below it puts at least `p_target` mass on the
// potential maximizers, refined by bisection towards the next grid point.
// `tau_grid` must be increasing.
ThresholdResult FindThreshold(const Game& game,
                              const PartialUtilityModel& partial, double m,
                              double p_target,
                              const std::vector<double>& tau_grid);

// `p_tar,tau_th,p_c_th,mu_at_threshold`; an unreachable target is written as
// `nan` fields.
void WriteThresholdCsv(std::ostream& out, const ThresholdResult& result);

struct FigureBundle {
  std::vector<SweepRow> heatmap;      // (tau, p_c) grid
  std::vector<SweepRow> tau_curves;   // fixed m, varying tau
  std::vector<SweepRow> m_curves;     // fixed tau, varying m
};

inline const std::vector<double> kFigureCurveExponents = {0.5, 0.8, 1.0,
                                                          1.5, 2.0, 3.0};
inline const std::vector<double> kFigureTemperatures = {0.05, 0.1, 0.2, 0.5,
                                                        1.0};

FigureBundle ComputeFigures(const Game& game,
                            const PartialUtilityModel& partial,
                            int workers = 0);
// Writes heatmap.csv, mu_vs_tau.csv and mu_vs_m.csv (sweep CSV schema).
void WriteFigures(const FigureBundle& bundle, const Game& game,
                  const std::string& out_dir);

}  // namespace blll

#endif  // BLLL_SWEEP_H_
