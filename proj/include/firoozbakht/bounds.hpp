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

// Enclosures of the prime-gap bounds:
//   f_k   = p_k^{1+1/k} - p_k          (gap allowed by Firoozbakht's conjecture)
//   ell_k = ln^2 p_k - ln p_k          (Cramer-type bound implied by it)
// the four sufficient conditions ell - b(L), Axler's bounds on pi(x), and the
// auxiliary inequalities used when chaining them.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "firoozbakht/constants.hpp"
#include "firoozbakht/error.hpp"
#include "firoozbakht/precision.hpp"

namespace firoozbakht {

using constants::Rational;

inline Interval enclose(Rational r, unsigned bits) { return Interval::rational(r.num, r.den, bits); }

inline Interval eval_ell(std::uint64_t p_k, unsigned bits = kDefaultBits) {
  if (p_k < 2) throw Error(ErrorCode::domain_error, "ell needs p_k >= 2");
  Interval L = ln_enclose(p_k, bits);
  return sqr(L) - L;
}

inline Interval eval_f(std::uint64_t k, std::uint64_t p_k, unsigned bits = kDefaultBits) {
  if (k == 0 || p_k < 2) throw Error(ErrorCode::domain_error, "f needs k >= 1 and p_k >= 2");
  if (k == 1) return Interval::exact(p_k, bits) * (p_k - 1);
  return expm1(ln_enclose(p_k, bits) / k) * p_k;
}

/// Right-hand sides of the four sufficient conditions, L = ln p_k:
///   C1 = ell - 1.17
///   C2 = ell - 1 - 3.83/L
///   C3 = ell - 1 - 3.35/L - 15.43/L^2
///   C4 = ell - 1 - 3.35/L - 12.65/L^2 - 89.6/L^3
inline std::array<Interval, 4> eval_thm4_rhs(std::uint64_t p_k, unsigned bits = kDefaultBits) {
  using namespace constants;
  if (p_k < kFirstConditionPrime) {
    throw Error(ErrorCode::domain_error, "sufficient conditions are stated for p_k >= 29");
  }
  const Interval L = ln_enclose(p_k, bits);
  const Interval L2 = sqr(L);
  const Interval L3 = L2 * L;
  const Interval ell = L2 - L;
  const Interval base = ell - 1;
  return {
      ell - enclose(kB117, bits),
      base - enclose(kC2a, bits) / L,
      base - enclose(kC3a, bits) / L - enclose(kC3b, bits) / L2,
      base - enclose(kC4a, bits) / L - enclose(kC4b, bits) / L2 - enclose(kC4c, bits) / L3,
  };
}

struct BoundProfile {
  std::uint64_t k = 0;  // 0 when the index is unknown
  std::uint64_t p_k = 0;
  std::optional<Interval> f;  // needs k
  Interval ell;
  std::optional<std::array<Interval, 4>> conditions;  // needs p_k >= 29
};

inline BoundProfile make_profile(std::uint64_t k, std::uint64_t p_k, unsigned bits = kDefaultBits) {
  BoundProfile profile;
  profile.k = k;
  profile.p_k = p_k;
  profile.ell = eval_ell(p_k, bits);
  if (k != 0) profile.f = eval_f(k, p_k, bits);
  if (p_k >= constants::kFirstConditionPrime) profile.conditions = eval_thm4_rhs(p_k, bits);
  return profile;
}

/// Reusable workspace for sweeps: ln p, ell and f for one prime at a time
/// without reallocating. f uses a single expm1 call; the upper end is
/// widened through expm1(t + d) <= E + (1 + E)(d + d^2) for 0 <= d <= 1,
/// where E bounds expm1(t) from above and d is the width of t.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(unsigned bits = kDefaultBits)
      : bits_(std::max(bits, 64u)), ln_(bits_), ell_(bits_), f_(bits_), t_lo_(bits_), t_hi_(bits_),
        d_(bits_), e_up_(bits_), tmp_(bits_) {}

  unsigned bits() const noexcept { return bits_; }

  void set_prime(std::uint64_t p) {
    if (p < 2) throw Error(ErrorCode::domain_error, "BoundEvaluator needs p >= 2");
    p_ = p;
    mpfr_set_uj(tmp_.get(), p, MPFR_RNDN);
    const int inexact = mpfr_log(ln_.lo().get(), tmp_.get(), MPFR_RNDD);
    mpfr_set(ln_.hi().get(), ln_.lo().get(), MPFR_RNDN);
    if (inexact != 0) mpfr_nextabove(ln_.hi().get());
    // ell = L^2 - L with L > 0
    mpfr_sqr(ell_.lo().get(), ln_.lo().get(), MPFR_RNDD);
    mpfr_sub(ell_.lo().get(), ell_.lo().get(), ln_.hi().get(), MPFR_RNDD);
    mpfr_sqr(ell_.hi().get(), ln_.hi().get(), MPFR_RNDU);
    mpfr_sub(ell_.hi().get(), ell_.hi().get(), ln_.lo().get(), MPFR_RNDU);
  }

  void compute_f(std::uint64_t k) {
    if (k == 0) throw Error(ErrorCode::domain_error, "f needs k >= 1");
    if (k == 1) {
      mpfr_set_uj(f_.lo().get(), p_, MPFR_RNDD);
      mpfr_mul_ui(f_.lo().get(), f_.lo().get(), p_ - 1, MPFR_RNDD);
      mpfr_set_uj(f_.hi().get(), p_, MPFR_RNDU);
      mpfr_mul_ui(f_.hi().get(), f_.hi().get(), p_ - 1, MPFR_RNDU);
      return;
    }
    mpfr_div_ui(t_lo_.get(), ln_.lo().get(), k, MPFR_RNDD);
    mpfr_div_ui(t_hi_.get(), ln_.hi().get(), k, MPFR_RNDU);
    const int inexact = mpfr_expm1(f_.lo().get(), t_lo_.get(), MPFR_RNDD);
    mpfr_set(e_up_.get(), f_.lo().get(), MPFR_RNDN);
    if (inexact != 0) mpfr_nextabove(e_up_.get());
    mpfr_sub(d_.get(), t_hi_.get(), t_lo_.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(d_.get(), 1) <= 0) {
      mpfr_sqr(tmp_.get(), d_.get(), MPFR_RNDU);
      mpfr_add(d_.get(), d_.get(), tmp_.get(), MPFR_RNDU);
      mpfr_add_ui(tmp_.get(), e_up_.get(), 1, MPFR_RNDU);
      mpfr_mul(tmp_.get(), tmp_.get(), d_.get(), MPFR_RNDU);
      mpfr_add(f_.hi().get(), e_up_.get(), tmp_.get(), MPFR_RNDU);
    } else {
      mpfr_expm1(f_.hi().get(), t_hi_.get(), MPFR_RNDU);
    }
    mpfr_mul_ui(f_.lo().get(), f_.lo().get(), p_, MPFR_RNDD);
    mpfr_mul_ui(f_.hi().get(), f_.hi().get(), p_, MPFR_RNDU);
  }

  std::uint64_t prime() const noexcept { return p_; }
  const Interval& ln() const noexcept { return ln_; }
  const Interval& ell() const noexcept { return ell_; }
  const Interval& f() const noexcept { return f_; }

 private:
  unsigned bits_;
  std::uint64_t p_ = 0;
  Interval ln_, ell_, f_;
  Real t_lo_, t_hi_, d_, e_up_, tmp_;
};

/// Decides gap < bound(bits) for an integer gap, escalating precision when
/// the enclosure of the bound contains the integer.
template <class Bound>
Verdict gap_below(std::uint64_t gap, Bound&& bound, const PrecisionConfig& cfg = {}) {
  return compare_strict([gap](unsigned bits) { return Interval::exact(gap, std::max(bits, 64u)); },
                        std::forward<Bound>(bound), cfg);
}

// ---------------------------------------------------------------------------
// Axler's bounds on pi(x).

struct AxlerBounds {
  std::optional<Interval> lower;        // x/(L - 1 - 1/L - 1/L^2)
  std::optional<Interval> upper;        // x/(L - 1 - 1.17/L)
  std::optional<Interval> upper_sharp;  // x/(L - 1 - 1/L - 3.83/L^2)
  bool lower_applicable = false;        // x >= 1772201
  bool upper_applicable = false;        // x >= 5.43
  bool upper_sharp_applicable = false;  // x >= 9.25
};

/// Each bound is present only when its denominator is certainly positive;
/// the flags say whether x lies in the range where the bound is proven.
inline AxlerBounds axler_pi_bounds(std::uint64_t x, unsigned bits = kDefaultBits) {
  using namespace constants;
  if (x < 2) throw Error(ErrorCode::domain_error, "axler_pi_bounds needs x >= 2");
  const Interval X = Interval::exact(x, bits);
  const Interval L = ln_enclose(x, bits);
  const Interval invL = Interval::exact(1, bits) / L;
  const Interval invL2 = sqr(invL);
  AxlerBounds out;
  auto quotient = [&](const Interval& den) -> std::optional<Interval> {
    if (!den.certainly_positive()) return std::nullopt;
    return X / den;
  };
  out.lower = quotient(L - 1 - invL - invL2);
  out.upper = quotient(L - 1 - enclose(kB117, bits) * invL);
  out.upper_sharp = quotient(L - 1 - invL - enclose(kSandwich383, bits) * invL2);
  out.lower_applicable = x >= kAxlerLowerThreshold;
  // x >= num/den  <=>  x*den >= num (x integer)
  auto at_least = [x](Rational r) {
    return static_cast<unsigned __int128>(x) * r.den >= r.num;
  };
  out.upper_applicable = at_least(kAxlerUpperThreshold);
  out.upper_sharp_applicable = at_least(kAxlerUpper383Threshold);
  return out;
}

/// (x + L^2)/(L - 1 - 1/L) < x/(L - 1 - 1/L - 1/L^2), L = ln x. Throws
/// not_applicable when the right denominator is not positive (x <= 6).
inline Verdict check_shifted_pi_bound(std::uint64_t x, const PrecisionConfig& cfg = {}) {
  if (x < 2) throw Error(ErrorCode::not_applicable, "x must be at least 2");
  auto d2 = [x](unsigned bits) {
    const Interval L = ln_int(x, bits);
    const Interval invL = Interval::exact(1, bits) / L;
    return L - 1 - invL - sqr(invL);
  };
  Verdict sign = compare_strict([](unsigned bits) { return Interval::exact(0, bits); }, d2, cfg);
  if (sign.outcome != Outcome::holds) {
    throw Error(ErrorCode::not_applicable,
                "ln x - 1 - 1/ln x - 1/ln^2 x is not positive at x = " + std::to_string(x));
  }
  auto lhs = [x](unsigned bits) {
    const Interval L = ln_int(x, bits);
    const Interval invL = Interval::exact(1, bits) / L;
    return (Interval::exact(x, bits) + sqr(L)) / (L - 1 - invL);
  };
  auto rhs = [x](unsigned bits) {
    const Interval L = ln_int(x, bits);
    const Interval invL = Interval::exact(1, bits) / L;
    return Interval::exact(x, bits) / (L - 1 - invL - sqr(invL));
  };
  return compare_strict(lhs, rhs, cfg);
}

/// y/(x + y) < ln(x + y) - ln x for positive rationals x, y. The right side
/// is evaluated as log1p(y/x), which is the same real without cancellation.
inline Verdict check_log_ratio(Rational x, Rational y, const PrecisionConfig& cfg = {}) {
  if (x.num == 0 || y.num == 0 || x.den == 0 || y.den == 0) {
    throw Error(ErrorCode::nonpositive_argument, "check_log_ratio needs x, y > 0");
  }
  auto lhs = [&](unsigned bits) {
    const Interval X = Interval::rational(x.num, x.den, bits);
    const Interval Y = Interval::rational(y.num, y.den, bits);
    return Y / (X + Y);
  };
  auto rhs = [&](unsigned bits) {
    const Interval X = Interval::rational(x.num, x.den, bits);
    const Interval Y = Interval::rational(y.num, y.den, bits);
    return log1p(Y / X);
  };
  return compare_strict(lhs, rhs, cfg);
}

// ---------------------------------------------------------------------------
// Panaitopol's coefficients: k_n + 1! k_{n-1} + 2! k_{n-2} + ... + (n-1)! k_1 = n n!.

struct PanaitopolCoefficients {
  std::vector<mpz_class> terms;  // terms[0] = k_1
};

inline PanaitopolCoefficients panaitopol_coefficients(unsigned n) {
  if (n < 1 || n > 64) throw Error(ErrorCode::domain_error, "panaitopol_coefficients needs 1 <= n <= 64");
  std::vector<mpz_class> factorial(n + 1);
  factorial[0] = 1;
  for (unsigned j = 1; j <= n; ++j) factorial[j] = factorial[j - 1] * j;
  PanaitopolCoefficients out;
  out.terms.reserve(n);
  for (unsigned m = 1; m <= n; ++m) {
    mpz_class value = factorial[m] * m;
    for (unsigned j = 1; j < m; ++j) value -= factorial[j] * out.terms[m - j - 1];
    out.terms.push_back(value);
  }
  return out;
}

}  // namespace firoozbakht
