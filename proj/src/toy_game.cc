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

#include "blll/toy_game.h"

namespace blll::toy {

Game ToyGame() {
  // Rows: (T,L), (B,L), (T,R), (B,R).
  Eigen::MatrixXd u(4, 2);
  u << 1, 1,
       3, 4,
       3, 2,
       1, 1;
  Eigen::VectorXd phi(4);
  phi << 2, 4, 3, 1;
  return Game({{"T", "B"}, {"L", "R"}}, u, phi, {}, {"a2", "a4", "a3", "a1"});
}

PartialUtilityModel ToyPartialUtilities(const Game& game) {
  PartialUtilityModel partial(game);
  const AgentSet only1 = 0b01;
  const AgentSet only2 = 0b10;
  for (int s = 0; s < game.num_profiles(); ++s) {
    const int a1 = game.ActionOf(s, 0);
    const int a2 = game.ActionOf(s, 1);
    partial.Set(0, only1, s, a1 == 0 ? 3.0 : 1.0);
    partial.Set(1, only2, s, a2 == 0 ? 1.0 : 2.0);
  }
  return partial;
}

}  // namespace blll::toy
