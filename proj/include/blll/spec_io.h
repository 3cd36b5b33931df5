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

// Line-oriented text formats for games, link models and sweep settings.
// The grammar is documented in docs/file_formats.md. Tokens are separated by
// whitespace, '#' starts a comment, players are numbered from 1.

#ifndef BLLL_SPEC_IO_H_
#define BLLL_SPEC_IO_H_

#include <iosfwd>
#include <string>

#include "blll/comm_model.h"
#include "blll/game.h"
#include "blll/sweep.h"

namespace blll {

// Parse failure; what() is "<source>:<line>: <message>".
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& source, int line, const std::string& message)
      : ConfigError(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Game ParseGameSpec(std::istream& in, const std::string& source = "<game>");
Game LoadGameSpec(const std::string& path);

struct CommSpec {
  ConnectivityModel connectivity;
  PartialUtilityModel partial;
};

CommSpec ParseCommSpec(std::istream& in, const Game& game,
                       const std::string& source = "<comm>");
CommSpec LoadCommSpec(const std::string& path, const Game& game);

SweepConfig ParseSweepConfig(std::istream& in,
                             const std::string& source = "<sweep>");
SweepConfig LoadSweepConfig(const std::string& path);

}  // namespace blll

#endif  // BLLL_SPEC_IO_H_
