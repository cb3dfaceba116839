// Copyright 2026 The firoozbakht-gaps Authors
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

#pragma once

// Numeric thresholds and coefficients used by the bound checks. Decimal
// coefficients are kept as exact rationals so interval code can enclose them
// with directed rounding instead of inheriting a binary rounding error.

#include <array>
#include <cstdint>

namespace firoozbakht::constants {

struct Rational {
  std::uint64_t num;
  std::uint64_t den = 1;
};

// (x + ln^2 x)/(ln x - 1 - 1/ln x) < x/(ln x - 1 - 1/ln x - 1/ln^2 x) from here on.
inline constexpr std::uint64_t kShiftedPiBoundThreshold = 285967;

// Axler's lower bound x/(ln x - 1 - 1/ln x - 1/ln^2 x) < pi(x) holds from here on,
// and so does the two-sided form with 3.83 in the upper bound.
inline constexpr std::uint64_t kAxlerLowerThreshold = 1772201;
inline constexpr std::uint64_t kAxlerLowerThresholdIndex = 133115;  // pi(1772201)

// pi(x) < x/(ln x - 1 - 1.17/ln x) for real x >= 5.43; first integer is 6.
inline constexpr Rational kAxlerUpperThreshold{543, 100};
inline constexpr std::uint64_t kAxlerUpperFirstInteger = 6;

// Upper bound family with the 3.83 coefficient: valid for x >= 9.25.
inline constexpr Rational kAxlerUpper383Threshold{925, 100};

// The ell-family conditions are stated for k > 9, i.e. p_k >= 29.
inline constexpr std::uint64_t kSmallIndexCutoff = 9;
inline constexpr std::uint64_t kFirstConditionPrime = 29;

// Record-based verification checks p_{k+1} < p_k^{1+1/k} directly up to this prime.
inline constexpr std::uint64_t kRecordDirectCheckPrime = 89;

// f_k < ell_k for every index from here on (p_k = 11783).
inline constexpr std::uint64_t kCrossoverIndex = 1412;
inline constexpr std::uint64_t kCrossoverPrime = 11783;

// ell_k - b with b = 1.17 is a sufficient condition.
inline constexpr Rational kB117{117, 100};

// Coefficients of 1/L, 1/L^2, 1/L^3 subtracted from ell - 1 in the second to
// fourth sufficient conditions (L = ln p_k).
inline constexpr Rational kC2a{383, 100};
inline constexpr Rational kC3a{335, 100};
inline constexpr Rational kC3b{1543, 100};
inline constexpr Rational kC4a{335, 100};
inline constexpr Rational kC4b{1265, 100};
inline constexpr Rational kC4c{896, 10};

// Upper-bound coefficient of the two-sided pi(x) enclosure behind the f_k sandwich.
inline constexpr Rational kSandwich383{383, 100};

}  // namespace firoozbakht::constants
