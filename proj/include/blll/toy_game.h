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

// Two-player, two-action benchmark game with labeled profiles a1..a4.
//
//            L        R
//     T   (1, 1)   (3, 2)
//     B   (3, 4)   (1, 1)
//
// a1 = (B,R), a2 = (T,L), a3 = (T,R), a4 = (B,L); potential 1, 2, 3, 4.
// When the two agents cannot hear each other, agent 1 values T at 3 and B at
// 1, and agent 2 values L at 1 and R at 2.

#ifndef BLLL_TOY_GAME_H_
#define BLLL_TOY_GAME_H_

#include "blll/comm_model.h"
#include "blll/game.h"

namespace blll::toy {

// Profile indices (player 1 varies fastest).
inline constexpr int kA1 = 3;
inline constexpr int kA2 = 0;
inline constexpr int kA3 = 2;
inline constexpr int kA4 = 1;

Game ToyGame();

// Full-information tables plus the isolated-agent values.
PartialUtilityModel ToyPartialUtilities(const Game& game);

}  // namespace blll::toy

#endif  // BLLL_TOY_GAME_H_
