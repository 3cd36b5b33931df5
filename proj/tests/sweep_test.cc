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

#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "blll/chain.h"
#include "blll/resistance.h"
#include "blll/sweep.h"
#include "blll/toy_game.h"

namespace blll {
namespace {

using toy::kA3;
using toy::kA4;

struct Toy {
  Game game = toy::ToyGame();
  PartialUtilityModel partial = toy::ToyPartialUtilities(game);
};

std::vector<SweepRow> Curve(const Toy& toy, double m,
                            const std::vector<double>& taus) {
  SweepConfig config;
  config.tau = taus;
  config.axis = SweepAxis::kExponent;
  config.second = {m};
  return RunSweep(toy.game, toy.partial, config);
}

TEST_CASE("grids") {
  const auto log = SweepConfig::LogSpace(0.02, 5.0, 40);
  CHECK(log.size() == 40);
  CHECK(log.front() == 0.02);
  CHECK(log.back() == 5.0);
  for (size_t k = 1; k < log.size(); ++k) {
    CHECK(log[k] / log[k - 1] == doctest::Approx(std::pow(250.0, 1.0 / 39)));
  }
  const auto lin = SweepConfig::LinSpace(0.5, 1.0, 41, true);
  CHECK(lin.size() == 40);
  CHECK(lin.front() == doctest::Approx(0.5125));
  CHECK(lin.back() == 1.0);
  SweepConfig defaults;
  CHECK_NOTHROW(defaults.Validate());
  defaults.second = {0.9, 0.8};
  CHECK_THROWS_AS(defaults.Validate(), ConfigError);
}

TEST_CASE("sweep rows") {
  const Toy toy;
  SweepConfig config;
  config.tau = SweepConfig::LogSpace(0.05, 2.0, 5);
  config.second = {0.6, 0.9, 1.0};
  const auto rows = RunSweep(toy.game, toy.partial, config, 3);
  REQUIRE(rows.size() == 15);
  for (const SweepRow& row : rows) {
    CHECK(row.mu.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(row.mu_maximizers == row.mu(kA4));
    if (row.p_c == 1.0) {
      CHECK(std::isinf(row.m));
      const auto perfect = StationaryLinear(
          TransitionMatrixPerfect(toy.game, EpsilonFromTemperature(row.tau)));
      CHECK((row.mu - perfect.mu).cwiseAbs().maxCoeff() <= 1e-12);
    } else {
      CHECK(CurveProbability(row.m, row.tau) == doctest::Approx(row.p_c).epsilon(1e-12));
    }
  }
  SUBCASE("worker count does not change results") {
    const auto serial = RunSweep(toy.game, toy.partial, config, 1);
    for (size_t k = 0; k < rows.size(); ++k) CHECK(rows[k].mu == serial[k].mu);
  }
  SUBCASE("rows re-solve to identical values") {
    const std::vector<int> maximizers = {kA4};
    for (const SweepRow& row : rows) {
      const SweepRow again = SolveGridPoint(toy.game, toy.partial, maximizers,
                                            row.tau, SweepAxis::kProbability,
                                            row.p_c);
      CHECK(again.mu == row.mu);
    }
  }
}

TEST_CASE("curve behaviour") {
  const Toy toy;
  const auto taus = SweepConfig::LogSpace(0.02, 5.0, 40);
  const auto strong = Curve(toy, 3.0, taus);
  const auto weak = Curve(toy, 0.5, taus);
  CHECK(strong.front().mu(kA4) >= 0.99);
  CHECK(weak.front().mu(kA4) <= 0.5);
  CHECK(weak.front().mu(kA3) > weak.front().mu(kA4));
  for (size_t k = 1; k < taus.size() && taus[k] <= 0.2; ++k) {
    CHECK(weak[k].mu(kA4) > weak[k - 1].mu(kA4));
  }
  SUBCASE("m = 1 separates the curves when cold") {
    const auto above = Curve(toy, 1.5, taus);
    const auto at = Curve(toy, 1.0, taus);
    for (size_t k = 0; k < taus.size() && taus[k] <= 0.1; ++k) {
      CAPTURE(taus[k]);
      CHECK(above[k].mu(kA4) > at[k].mu(kA4));
      CHECK(at[k].mu(kA4) > weak[k].mu(kA4));
    }
  }
}

TEST_CASE("threshold search") {
  const Toy toy;
  const auto taus = SweepConfig::LogSpace(0.02, 5.0, 40);
  SUBCASE("strong links reach the target and the estimate re-checks") {
    const ThresholdResult r = FindThreshold(toy.game, toy.partial, 3.0, 0.95, taus);
    REQUIRE(r.found);
    CHECK(r.tau_th > 0.02);
    CHECK(r.p_c_th < 1.0);
    CHECK(r.p_c_th == doctest::Approx(CurveProbability(3.0, r.tau_th)));
    CHECK(TemperatureOnCurve(r.p_c_th, 3.0) == doctest::Approx(r.tau_th).epsilon(1e-9));
    const SweepRow check = SolveGridPoint(toy.game, toy.partial, {kA4}, r.tau_th,
                                          SweepAxis::kExponent, 3.0);
    CHECK(check.mu_maximizers >= 0.95);
    CHECK(r.mu_at_threshold == check.mu_maximizers);
  }
  SUBCASE("weak links never reach it") {
    const ThresholdResult r = FindThreshold(toy.game, toy.partial, 0.5, 0.95, taus);
    CHECK_FALSE(r.found);
    std::ostringstream out;
    WriteThresholdCsv(out, r);
    CHECK(out.str() == "p_tar,tau_th,p_c_th,mu_at_threshold\n0.94999999999999996,nan,nan,nan\n");
  }
  SUBCASE("zero target holds everywhere") {
    const ThresholdResult r = FindThreshold(toy.game, toy.partial, 0.5, 0.0, taus);
    REQUIRE(r.found);
    CHECK(r.tau_th == taus.back());
  }
}

TEST_CASE("csv output") {
  const Toy toy;
  SweepConfig config;
  config.tau = {1.0};
  config.second = {1.0};
  std::ostringstream out;
  WriteSweepCsv(out, toy.game, RunSweep(toy.game, toy.partial, config));
  const std::string text = out.str();
  CHECK(text.rfind("tau,p_c,m,state_label,mu\n", 0) == 0);
  CHECK(text.find("1,1,inf,a4,") != std::string::npos);
  int lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 5);
}

}  // namespace
}  // namespace blll
