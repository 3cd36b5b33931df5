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
#include <map>
#include <random>

#include "doctest.h"
#include "blll/comm_model.h"
#include "blll/numeric.h"
#include "blll/toy_game.h"
#include "test_util.h"

namespace blll {
namespace {

using toy::kA1;
using toy::kA2;
using toy::kA3;
using toy::kA4;

TEST_CASE("connectivity values") {
  SUBCASE("exponent form tends to one as the temperature vanishes") {
    const auto model = ConnectivityModel::UniformExponent(2, 3.0);
    CHECK(model.Connectivity(0, 1, 0, EpsilonFromTemperature(0.01)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    double last = 0.0;
    for (double tau : {2.0, 1.0, 0.5, 0.1}) {
      const double p = model.Connectivity(0, 1, 0, EpsilonFromTemperature(tau));
      CHECK(p > last);
      last = p;
    }
  }
  SUBCASE("m = 1 at unit temperature") {
    const auto model = ConnectivityModel::UniformExponent(2, 1.0);
    const double p = model.Connectivity(0, 1, 0, std::exp(-1.0));
    CHECK(p == doctest::Approx(0.7310585786300049).epsilon(1e-14));
  }
  SUBCASE("explicit probability is returned as stored") {
    const auto model = ConnectivityModel::UniformProbability(2, 0.96);
    CHECK(model.Connectivity(0, 1, 0, 0.3) == 0.96);
    CHECK(model.Connectivity(1, 0, 3, 0.3) == 0.96);
  }
  SUBCASE("self links always deliver") {
    const auto model = ConnectivityModel::UniformProbability(3, 0.2);
    CHECK(model.Connectivity(1, 1, 0, 0.5) == 1.0);
  }
  SUBCASE("exponent form stays above one half") {
    for (double m : {0.01, 0.5, 3.0, 40.0}) {
      const auto model = ConnectivityModel::UniformExponent(2, m);
      for (double eps : {1e-9, 0.1, 0.5, 0.999}) {
        CHECK(model.Connectivity(0, 1, 0, eps) > 0.5);
      }
    }
  }
  SUBCASE("eps outside (0, 1) is rejected in exponent mode") {
    const auto model = ConnectivityModel::UniformExponent(2, 1.0);
    CHECK_THROWS(model.Connectivity(0, 1, 0, 0.0));
    CHECK_THROWS(model.Connectivity(0, 1, 0, 1.0));
  }
  SUBCASE("invalid stored values") {
    CHECK_THROWS_AS(ConnectivityModel::UniformProbability(2, 0.0), ConfigError);
    CHECK_THROWS_AS(ConnectivityModel::UniformProbability(2, 1.5), ConfigError);
    CHECK_THROWS_AS(ConnectivityModel::UniformExponent(2, -1.0), ConfigError);
  }
  SUBCASE("links are symmetric, overrides are per profile") {
    ConnectivityModel model(ConnectivityMode::kExplicitProbability, 3, 0.9);
    CHECK(model.uniform());
    model.SetLink(0, 2, 0.4);
    model.SetLink(2, 1, kA4, 0.7);
    CHECK_FALSE(model.uniform());
    for (int s = 0; s < 4; ++s) {
      CHECK(model.Value(2, 0, s) == 0.4);
      CHECK(model.Value(0, 2, s) == 0.4);
    }
    CHECK(model.Value(1, 2, kA4) == 0.7);
    CHECK(model.Value(1, 2, kA3) == 0.9);
  }
}

TEST_CASE("exponent recovers from the connectivity form") {
  for (double m : {0.25, 1.0, 3.0}) {
    for (double tau : {0.2, 1.0, 5.0}) {
      const double eps = EpsilonFromTemperature(tau);
      const auto model = ConnectivityModel::UniformExponent(2, m);
      const auto [log_p, log_q] = model.LogConnectivity(0, 1, 0, eps);
      CHECK((log_q - log_p) / std::log(eps) == doctest::Approx(m).epsilon(1e-12));
    }
  }
}

TEST_CASE("realization probability") {
  SUBCASE("full set with perfect links") {
    const auto model = ConnectivityModel::UniformProbability(3, 1.0);
    CHECK(RealizationProbability(model, {0, 0b111}, 0, 0.5) == 1.0);
  }
  SUBCASE("isolated agent in a pair") {
    const auto model = ConnectivityModel::UniformProbability(2, 0.8);
    CHECK(RealizationProbability(model, {0, 0b01}, 0, 0.5) ==
          doctest::Approx(0.2));
  }
  SUBCASE("three players hearing one neighbour") {
    const auto model = ConnectivityModel::UniformProbability(3, 0.9);
    CHECK(RealizationProbability(model, {0, 0b011}, 0, 0.5) ==
          doctest::Approx(0.09).epsilon(1e-14));
    CHECK(std::exp(LogRealizationProbability(model, {0, 0b011}, 0, 0.5)) ==
          doctest::Approx(0.09).epsilon(1e-14));
  }
}

TEST_CASE("enumerate realizations") {
  SUBCASE("two players") {
    const auto model = ConnectivityModel::UniformProbability(2, 0.7);
    const auto list = EnumerateRealizations(model, 0, 0, 0.5);
    REQUIRE(list.size() == 2);
    CHECK(list[0].first.reachable == 0b01);
    CHECK(list[0].second == doctest::Approx(0.3));
    CHECK(list[1].first.reachable == 0b11);
    CHECK(list[1].second == doctest::Approx(0.7));
  }
  SUBCASE("perfect links put all mass on the full set") {
    const auto model = ConnectivityModel::UniformProbability(3, 1.0);
    for (const auto& [r, p] : EnumerateRealizations(model, 1, 0, 0.5)) {
      CHECK(p == (r.reachable == 0b111 ? 1.0 : 0.0));
    }
  }
  SUBCASE("fair coins give four equal subsets") {
    const auto model = ConnectivityModel::UniformProbability(3, 0.5);
    const auto list = EnumerateRealizations(model, 2, 0, 0.5);
    REQUIRE(list.size() == 4);
    for (const auto& [r, p] : list) {
      CHECK(Contains(r.reachable, 2));
      CHECK(p == 0.25);
    }
  }
  SUBCASE("cap") {
    const auto model = ConnectivityModel::UniformProbability(5, 0.5);
    CHECK_THROWS_AS(EnumerateRealizations(model, 0, 0, 0.5, 4), ConfigError);
  }
  SUBCASE("random models sum to one") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 5;
      const bool exponent = trial % 2 == 0;
      ConnectivityModel model(exponent ? ConnectivityMode::kExponentCoupled
                                       : ConnectivityMode::kExplicitProbability,
                              n, exponent ? 3 * unit(rng) : unit(rng));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          model.SetLink(i, j, exponent ? 3 * unit(rng) : unit(rng));
        }
      }
      const double eps = unit(rng) * 0.99;
      for (int agent = 0; agent < n; ++agent) {
        double sum = 0.0;
        for (const auto& entry : EnumerateRealizations(model, agent, 0, eps)) {
          sum += entry.second;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sample realization") {
  SUBCASE("perfect links always give the full set") {
    const auto model = ConnectivityModel::UniformProbability(3, 1.0);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 1000; ++k) {
      CHECK(SampleRealization(model, 0, 0, 0.5, rng).reachable == 0b111);
    }
  }
  SUBCASE("fair links include each neighbour half the time") {
    const auto model = ConnectivityModel::UniformProbability(3, 0.5);
    std::mt19937_64 rng(2);
    const int draws = 100000;
    int with1 = 0, with2 = 0;
    for (int k = 0; k < draws; ++k) {
      const Realization r = SampleRealization(model, 0, 0, 0.5, rng);
      CHECK(Contains(r.reachable, 0));
      with1 += Contains(r.reachable, 1);
      with2 += Contains(r.reachable, 2);
    }
    CHECK(std::abs(with1 / double(draws) - 0.5) < 0.01);
    CHECK(std::abs(with2 / double(draws) - 0.5) < 0.01);
  }
  SUBCASE("m = 1 at unit temperature") {
    const auto model = ConnectivityModel::UniformExponent(2, 1.0);
    std::mt19937_64 rng(3);
    const int draws = 100000;
    int full = 0;
    for (int k = 0; k < draws; ++k) {
      full += SampleRealization(model, 1, 0, std::exp(-1.0), rng).reachable == 0b11;
    }
    CHECK(std::abs(full / double(draws) - 0.7310585786300049) < 0.01);
  }
  SUBCASE("subset frequencies within four sigma of the enumeration") {
    ConnectivityModel model(ConnectivityMode::kExplicitProbability, 4, 0.6);
    model.SetLink(0, 1, 0.9);
    model.SetLink(0, 3, 0.3);
    std::mt19937_64 rng(4);
    const int draws = 100000;
    std::map<AgentSet, int> counts;
    for (int k = 0; k < draws; ++k) {
      ++counts[SampleRealization(model, 0, 0, 0.5, rng).reachable];
    }
    for (const auto& [r, p] : EnumerateRealizations(model, 0, 0, 0.5)) {
      const double sigma = std::sqrt(p * (1 - p) / draws);
      CHECK(std::abs(counts[r.reachable] / double(draws) - p) <= 4 * sigma);
    }
  }
}

TEST_CASE("partial utilities") {
  const Game game = toy::ToyGame();
  const PartialUtilityModel partial = toy::ToyPartialUtilities(game);
  SUBCASE("isolated agent one") {
    CHECK(partial.Value(0, 0b01, kA2) == 3);  // T
    CHECK(partial.Value(0, 0b01, kA3) == 3);  // T
    CHECK(partial.Value(0, 0b01, kA4) == 1);  // B
    CHECK(partial.Value(0, 0b01, kA1) == 1);  // B
  }
  SUBCASE("isolated agent two") {
    CHECK(partial.Value(1, 0b10, kA2) == 1);  // L
    CHECK(partial.Value(1, 0b10, kA4) == 1);  // L
    CHECK(partial.Value(1, 0b10, kA3) == 2);  // R
    CHECK(partial.Value(1, 0b10, kA1) == 2);  // R
  }
  SUBCASE("full set is the true utility") {
    for (int i = 0; i < 2; ++i) {
      for (int s = 0; s < 4; ++s) {
        CHECK(partial.Value(i, 0b11, s) == game.Utility(i, s));
      }
    }
    PartialUtilityModel fresh(game);
    CHECK(fresh.Value(1, 0b11, kA4) == 4);
    CHECK_THROWS_AS(fresh.Set(1, 0b11, kA4, 3.0), ConfigError);
  }
  SUBCASE("missing entry names agent and subset") {
    PartialUtilityModel fresh(game);
    try {
      fresh.Value(0, 0b01, kA1);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      CHECK(what.find("agent 1") != std::string::npos);
      CHECK(what.find("{1}") != std::string::npos);
    }
  }
  SUBCASE("subset must contain the agent") {
    PartialUtilityModel fresh(game);
    CHECK_THROWS_AS(fresh.Set(0, 0b10, kA1, 1.0), ConfigError);
  }
  SUBCASE("ignore-absent adapter") {
    const auto adapted = PartialUtilityModel::IgnoreAbsent(
        game, [](int agent, AgentSet, int profile) {
          return 10.0 * agent + profile;
        });
    CHECK(adapted.source() == PartialUtilitySource::kIgnoreAbsent);
    CHECK(adapted.Value(1, 0b10, kA3) == 12.0);
    CHECK(adapted.Value(1, 0b11, kA3) == 2.0);
  }
}

}  // namespace
}  // namespace blll
