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

#ifndef BLLL_NUMERIC_H_
#define BLLL_NUMERIC_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>

namespace blll {

// log(1 + e^x) without overflow.
template <typename Scalar>
Scalar Softplus(Scalar x) {
  using std::exp;
  using std::log1p;
  if (x > Scalar(0)) return x + log1p(exp(-x));
  return log1p(exp(x));
}

// 1 / (1 + e^-x).
template <typename Scalar>
Scalar Logistic(Scalar x) {
  using std::exp;
  if (x >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-x));
  const Scalar e = exp(x);
  return e / (Scalar(1) + e);
}

// log(1 / (1 + e^-x)).
template <typename Scalar>
Scalar LogLogistic(Scalar x) {
  return -Softplus(-x);
}

// log(e^a + e^b); either argument may be -inf.
template <typename Scalar>
Scalar LogAddExp(Scalar a, Scalar b) {
  using std::exp;
  using std::log1p;
  if (a == -std::numeric_limits<Scalar>::infinity()) return b;
  if (b == -std::numeric_limits<Scalar>::infinity()) return a;
  if (a < b) std::swap(a, b);
  return a + log1p(exp(b - a));
}

// Temperature <-> perturbation: eps = exp(-1 / tau).
inline double EpsilonFromTemperature(double tau) { return std::exp(-1.0 / tau); }
inline double TemperatureFromEpsilon(double eps) { return -1.0 / std::log(eps); }

// Uniform double in [0, 1) from the top 53 bits; identical on every platform
// for a given engine state, unlike std::uniform_real_distribution.
inline double UniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline int UniformIndex(std::mt19937_64& rng, int n) {
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(rng()) * static_cast<std::uint64_t>(n);
  return static_cast<int>(wide >> 64);
}

}  // namespace blll

#endif  // BLLL_NUMERIC_H_
