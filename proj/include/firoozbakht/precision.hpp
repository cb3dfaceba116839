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

// Rigorous real arithmetic. An Interval encloses a real number between two
// MPFR values computed with directed rounding (lower end toward -inf, upper
// end toward +inf), so every operation returns a set that contains the exact
// result for every member of its inputs.

#include <stdint.h>  // must precede mpfr.h for the intmax_t interfaces
#ifndef MPFR_USE_INTMAX_T
#define MPFR_USE_INTMAX_T 1
#endif

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "firoozbakht/error.hpp"

namespace firoozbakht {

inline constexpr unsigned kDefaultBits = 96;

/// RAII owner of one mpfr_t.
class Real {
 public:
  explicit Real(unsigned bits = kDefaultBits) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(bits));
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  unsigned bits() const noexcept { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Fixed-point decimal rendering, rounded in the given direction.
  std::string to_fixed(int decimals, mpfr_rnd_t rnd) const {
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDf" : rnd == MPFR_RNDU ? "%.*RUf" : "%.*RNf";
    mpfr_asprintf(&buf, fmt, decimals, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(unsigned bits = kDefaultBits) : lo_(bits), hi_(bits) {}

  /// Enclosure of a non-negative integer; exact whenever bits >= 64.
  static Interval exact(std::uint64_t x, unsigned bits = kDefaultBits) {
    Interval r(bits);
    mpfr_set_uj(r.lo_.get(), x, MPFR_RNDD);
    mpfr_set_uj(r.hi_.get(), x, MPFR_RNDU);
    return r;
  }

  /// Enclosure of an exact integer of any size.
  static Interval exact(const mpz_class& x, unsigned bits = kDefaultBits) {
    Interval r(bits);
    mpfr_set_z(r.lo_.get(), x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), x.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  /// Enclosure of num/den (den > 0).
  static Interval rational(std::uint64_t num, std::uint64_t den, unsigned bits = kDefaultBits) {
    if (den == 0) throw Error(ErrorCode::domain_error, "rational with zero denominator");
    Interval r(bits);
    mpfr_set_uj(r.lo_.get(), num, MPFR_RNDD);
    mpfr_set_uj(r.hi_.get(), num, MPFR_RNDU);
    Real d(std::max(bits, 64u));
    mpfr_set_uj(d.get(), den, MPFR_RNDN);
    mpfr_div(r.lo_.get(), r.lo_.get(), d.get(), MPFR_RNDD);
    mpfr_div(r.hi_.get(), r.hi_.get(), d.get(), MPFR_RNDU);
    return r;
  }

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  Real& lo() noexcept { return lo_; }
  Real& hi() noexcept { return hi_; }
  unsigned bits() const noexcept { return lo_.bits(); }

  Real width() const {
    Real w(bits());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }

  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_.get(), other.lo_.get()); }
  bool certainly_greater(const Interval& other) const {
    return mpfr_greater_p(lo_.get(), other.hi_.get());
  }
  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

  bool contains(const Interval& inner) const {
    return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) &&
           mpfr_lessequal_p(inner.hi_.get(), hi_.get());
  }
  bool contains(std::uint64_t x) const {
    static_assert(sizeof(unsigned long) == 8);
    return mpfr_cmp_ui(lo_.get(), x) <= 0 && mpfr_cmp_ui(hi_.get(), x) >= 0;
  }

  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }
  double mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

  /// "[lo, hi]" with outward-rounded decimals.
  std::string to_string(int decimals = 12) const {
    return "[" + lo_.to_fixed(decimals, MPFR_RNDD) + ", " + hi_.to_fixed(decimals, MPFR_RNDU) + "]";
  }

 private:
  Real lo_;
  Real hi_;
};

namespace detail {

inline unsigned result_bits(const Interval& a, const Interval& b) {
  return std::max(a.bits(), b.bits());
}

// Smallest and largest of the four endpoint products/quotients, each rounded
// outward.
template <class Op>
Interval corner_hull(const Interval& a, const Interval& b, Op op) {
  Interval r(result_bits(a, b));
  Real t(r.bits());
  bool first = true;
  for (const Real* x : {&a.lo(), &a.hi()}) {
    for (const Real* y : {&b.lo(), &b.hi()}) {
      op(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo().get())) mpfr_set(r.lo().get(), t.get(), MPFR_RNDD);
      op(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi().get())) mpfr_set(r.hi().get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

template <class Fn>
Interval monotone(const Interval& a, Fn fn) {
  Interval r(a.bits());
  fn(r.lo().get(), a.lo().get(), MPFR_RNDD);
  fn(r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

}  // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
  Interval r(detail::result_bits(a, b));
  mpfr_add(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

inline Interval operator-(const Interval& a, const Interval& b) {
  Interval r(detail::result_bits(a, b));
  mpfr_sub(r.lo().get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(r.hi().get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return r;
}

inline Interval operator-(const Interval& a) {
  Interval r(a.bits());
  mpfr_neg(r.lo().get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
  return r;
}

inline Interval operator*(const Interval& a, const Interval& b) {
  return detail::corner_hull(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
    mpfr_mul(r, x, y, rnd);
  });
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorCode::domain_error, "division by an interval containing 0");
  return detail::corner_hull(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
    mpfr_div(r, x, y, rnd);
  });
}

inline Interval operator*(const Interval& a, std::uint64_t n) {
  Interval r(a.bits());
  mpfr_mul_ui(r.lo().get(), a.lo().get(), n, MPFR_RNDD);
  mpfr_mul_ui(r.hi().get(), a.hi().get(), n, MPFR_RNDU);
  return r;
}
inline Interval operator*(std::uint64_t n, const Interval& a) { return a * n; }

inline Interval operator/(const Interval& a, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::domain_error, "division by 0");
  Interval r(a.bits());
  mpfr_div_ui(r.lo().get(), a.lo().get(), n, MPFR_RNDD);
  mpfr_div_ui(r.hi().get(), a.hi().get(), n, MPFR_RNDU);
  return r;
}

inline Interval operator+(const Interval& a, std::uint64_t n) {
  return a + Interval::exact(n, std::max(a.bits(), 64u));
}
inline Interval operator-(const Interval& a, std::uint64_t n) {
  return a - Interval::exact(n, std::max(a.bits(), 64u));
}

inline Interval sqr(const Interval& a) {
  Interval r(a.bits());
  if (mpfr_sgn(a.lo().get()) >= 0) {
    mpfr_sqr(r.lo().get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqr(r.hi().get(), a.hi().get(), MPFR_RNDU);
  } else if (mpfr_sgn(a.hi().get()) <= 0) {
    mpfr_sqr(r.lo().get(), a.hi().get(), MPFR_RNDD);
    mpfr_sqr(r.hi().get(), a.lo().get(), MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo().get(), 1);
    Real t(a.bits());
    mpfr_sqr(r.hi().get(), a.lo().get(), MPFR_RNDU);
    mpfr_sqr(t.get(), a.hi().get(), MPFR_RNDU);
    mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  }
  return r;
}

/// Integer power.
inline Interval pow(const Interval& a, unsigned long n) {
  if (n == 0) return Interval::exact(1, a.bits());
  if (n % 2 == 1 || mpfr_sgn(a.lo().get()) >= 0) {
    return detail::monotone(a, [n](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) {
      mpfr_pow_ui(r, x, n, rnd);
    });
  }
  Interval r(a.bits());
  if (mpfr_sgn(a.hi().get()) <= 0) {
    mpfr_pow_ui(r.lo().get(), a.hi().get(), n, MPFR_RNDD);
    mpfr_pow_ui(r.hi().get(), a.lo().get(), n, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo().get(), 1);
    Real t(a.bits());
    mpfr_pow_ui(r.hi().get(), a.lo().get(), n, MPFR_RNDU);
    mpfr_pow_ui(t.get(), a.hi().get(), n, MPFR_RNDU);
    mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  }
  return r;
}

inline Interval log(const Interval& a) {
  if (!a.certainly_positive()) {
    throw Error(ErrorCode::nonpositive_argument, "logarithm of " + a.to_string());
  }
  return detail::monotone(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_log(r, x, rnd); });
}

inline Interval log1p(const Interval& a) {
  if (mpfr_cmp_si(a.lo().get(), -1) <= 0) {
    throw Error(ErrorCode::nonpositive_argument, "log1p of " + a.to_string());
  }
  return detail::monotone(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_log1p(r, x, rnd); });
}

inline Interval exp(const Interval& a) {
  return detail::monotone(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_exp(r, x, rnd); });
}

inline Interval expm1(const Interval& a) {
  return detail::monotone(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_expm1(r, x, rnd); });
}

/// Natural log of a positive integer. MPFR rounds correctly, so one call
/// rounded down plus one ulp brackets the exact value.
inline Interval ln_enclose(std::uint64_t x, unsigned bits = kDefaultBits) {
  if (x == 0) throw Error(ErrorCode::nonpositive_argument, "ln(0)");
  if (bits < 53) throw Error(ErrorCode::domain_error, "ln_enclose needs at least 53 bits");
  Interval r(bits);
  if (bits < 64) return log(Interval::exact(x, bits));
  mpfr_set_uj(r.hi().get(), x, MPFR_RNDN);
  const int inexact = mpfr_log(r.lo().get(), r.hi().get(), MPFR_RNDD);
  mpfr_set(r.hi().get(), r.lo().get(), MPFR_RNDN);
  if (inexact != 0) mpfr_nextabove(r.hi().get());
  return r;
}

inline Interval ln_enclose(const Interval& x, unsigned bits = kDefaultBits) {
  if (bits < 53) throw Error(ErrorCode::domain_error, "ln_enclose needs at least 53 bits");
  Interval widened(std::max(bits, x.bits()));
  mpfr_set(widened.lo().get(), x.lo().get(), MPFR_RNDD);
  mpfr_set(widened.hi().get(), x.hi().get(), MPFR_RNDU);
  return log(widened);
}

/// ln of a positive integer at any precision; below 64 bits the integer
/// itself may need rounding, so the general interval log is used.
inline Interval ln_int(std::uint64_t x, unsigned bits) {
  if (bits >= 64) return ln_enclose(x, bits);
  if (x == 0) throw Error(ErrorCode::nonpositive_argument, "ln(0)");
  return log(Interval::exact(x, bits));
}

/// Re-rounds an enclosure outward to another precision.
inline Interval with_bits(const Interval& x, unsigned bits) {
  Interval r(bits);
  mpfr_set(r.lo().get(), x.lo().get(), MPFR_RNDD);
  mpfr_set(r.hi().get(), x.hi().get(), MPFR_RNDU);
  return r;
}

/// 3-decimal display value with round-half-even, valid for every point of
/// the enclosure; nullopt when the endpoints round differently.
inline std::optional<std::string> display3(const Interval& x) {
  const unsigned work = x.bits() + 16;
  Real a(work), b(work);
  mpfr_mul_ui(a.get(), x.lo().get(), 1000, MPFR_RNDD);
  mpfr_mul_ui(b.get(), x.hi().get(), 1000, MPFR_RNDU);
  mpfr_rint(a.get(), a.get(), MPFR_RNDN);  // ties to even
  mpfr_rint(b.get(), b.get(), MPFR_RNDN);
  if (!mpfr_equal_p(a.get(), b.get())) return std::nullopt;
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), a.get(), MPFR_RNDN);
  const bool negative = n < 0;
  if (negative) n = -n;
  mpz_class whole = n / 1000;
  mpz_class frac = n % 1000;
  std::string f = frac.get_str();
  f.insert(0, 3 - f.size(), '0');
  return (negative ? "-" : "") + whole.get_str() + "." + f;
}

/// Display value of the midpoint; used where an enclosure straddles a
/// rounding boundary and a single value is still wanted for humans.
inline std::string display3_mid(const Interval& x) {
  if (auto d = display3(x)) return *d;
  Interval mid(x.bits() + 8);
  mpfr_add(mid.lo().get(), x.lo().get(), x.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.lo().get(), mid.lo().get(), 1, MPFR_RNDN);
  mpfr_set(mid.hi().get(), mid.lo().get(), MPFR_RNDN);
  return display3(mid).value_or("?");
}

// ---------------------------------------------------------------------------
// Strict comparison with precision escalation.

struct PrecisionConfig {
  unsigned bits_start = kDefaultBits;
  unsigned bits_cap = 4096;
  std::uint64_t bigint_digit_cap = 10'000'000;
};

enum class Outcome { holds, fails, inconclusive };
enum class Method { interval, exact_integer, log_certificate };

constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::interval: return "interval";
    case Method::exact_integer: return "exact-integer";
    case Method::log_certificate: return "log-certificate";
  }
  return "?";
}

/// outcome == holds  <=> lhs.hi < rhs.lo at bits_used
/// outcome == fails  <=> lhs.lo > rhs.hi at bits_used
/// (exact_integer verdicts carry the last, non-separating enclosures.)
struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  Interval lhs;
  Interval rhs;
  unsigned bits_used = 0;
  Method method = Method::interval;
};

/// Decides lhs < rhs. Both arguments are callables `Interval(unsigned bits)`
/// re-evaluated at doubling precision until the enclosures separate or the
/// cap is reached. Evaluation domain errors caused by low precision (e.g. a
/// denominator straddling zero) escalate too; at the cap they propagate.
template <class Lhs, class Rhs>
Verdict compare_strict(Lhs&& lhs, Rhs&& rhs, unsigned bits_start = kDefaultBits,
                       unsigned bits_cap = 4096) {
  if (bits_start == 0 || bits_start > bits_cap) {
    throw Error(ErrorCode::domain_error, "need 0 < bits_start <= bits_cap");
  }
  for (unsigned bits = bits_start;; bits = std::min(bits_cap, bits * 2)) {
    Verdict v;
    try {
      v.lhs = lhs(bits);
      v.rhs = rhs(bits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::domain_error || bits >= bits_cap) throw;
      continue;
    }
    v.bits_used = bits;
    if (v.lhs.certainly_less(v.rhs)) {
      v.outcome = Outcome::holds;
      return v;
    }
    if (v.lhs.certainly_greater(v.rhs)) {
      v.outcome = Outcome::fails;
      return v;
    }
    if (bits >= bits_cap) return v;
  }
}

template <class Lhs, class Rhs>
Verdict compare_strict(Lhs&& lhs, Rhs&& rhs, const PrecisionConfig& cfg) {
  return compare_strict(std::forward<Lhs>(lhs), std::forward<Rhs>(rhs), cfg.bits_start,
                        cfg.bits_cap);
}

/// Decides p_next < p_k^{1 + 1/k}, i.e. p_next^k < p_k^{k+1}, by comparing
/// k ln(p_next) with (k + 1) ln(p_k). The two integer powers can never be
/// equal: they are powers of distinct primes, and unique factorization rules
/// out q^k = p^(k+1). So the interval comparison separates at some finite
/// precision; when the cap is hit first the powers are compared exactly.
inline Verdict firoozbakht_exact(std::uint64_t k, std::uint64_t p_k, std::uint64_t p_next,
                                 const PrecisionConfig& cfg = {}) {
  if (k == 0 || p_k < 2 || p_next <= p_k) {
    throw Error(ErrorCode::domain_error, "firoozbakht_exact needs k >= 1 and 2 <= p_k < p_next");
  }
  auto lhs = [&](unsigned bits) { return ln_int(p_next, bits) * k; };
  auto rhs = [&](unsigned bits) { return ln_int(p_k, bits) * (k + 1); };
  Verdict v = compare_strict(lhs, rhs, cfg);
  if (v.outcome != Outcome::inconclusive) return v;

  // Decimal digits of p_k^(k+1), the larger operand.
  const double digits = static_cast<double>(k + 1) * std::log10(static_cast<double>(p_k)) + 1;
  if (digits > static_cast<double>(cfg.bigint_digit_cap)) return v;
  mpz_class lhs_pow, rhs_pow;
  mpz_ui_pow_ui(lhs_pow.get_mpz_t(), p_next, k);
  mpz_ui_pow_ui(rhs_pow.get_mpz_t(), p_k, k + 1);
  v.outcome = lhs_pow < rhs_pow ? Outcome::holds : Outcome::fails;
  v.method = Method::exact_integer;
  return v;
}

/// Sweep-oriented front end to firoozbakht_exact. Most events are settled by
/// a certificate in exact integer arithmetic:
///   k ln(p_next / p_k) < k g / p_k   (ln(1 + x) < x, g = p_next - p_k)
/// so k g < p_k * L with L <= ln p_k implies the inequality. L is a cached
/// lower bound ln(anchor) for some anchor <= p_k, stored as a 2^-40 fixed
/// point integer rounded down. Events the certificate cannot settle go
/// through firoozbakht_exact.
class FiroozbakhtChecker {
 public:
  struct Decision {
    Outcome outcome = Outcome::inconclusive;
    Method method = Method::interval;
    unsigned bits_used = 0;
  };

  explicit FiroozbakhtChecker(PrecisionConfig cfg = {}) : cfg_(cfg) {}

  const PrecisionConfig& config() const noexcept { return cfg_; }

  Decision decide(std::uint64_t k, std::uint64_t p_k, std::uint64_t p_next) {
    if (certificate_holds(k, p_k, p_next)) return {Outcome::holds, Method::log_certificate, 0};
    Verdict v = firoozbakht_exact(k, p_k, p_next, cfg_);
    return {v.outcome, v.method, v.bits_used};
  }

  bool certificate_holds(std::uint64_t k, std::uint64_t p_k, std::uint64_t p_next) {
    if (k == 0 || p_next <= p_k) return false;
    const std::uint64_t gap = p_next - p_k;
    if (gap >= (std::uint64_t{1} << 24) || k >= (std::uint64_t{1} << 60)) return false;
    if (anchor_ == 0 || p_k < anchor_ || p_k - anchor_ > anchor_ / 4096) refresh(p_k);
    const unsigned __int128 lhs = (static_cast<unsigned __int128>(k) * gap) << kFixedBits;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(p_k) * ln_anchor_fixed_;
    return lhs < rhs;
  }

 private:
  static constexpr unsigned kFixedBits = 40;

  void refresh(std::uint64_t anchor) {
    anchor_ = anchor;
    Interval l = ln_enclose(anchor, 128);
    mpfr_mul_2ui(l.lo().get(), l.lo().get(), kFixedBits, MPFR_RNDD);
    ln_anchor_fixed_ = mpfr_get_uj(l.lo().get(), MPFR_RNDD);
  }

  PrecisionConfig cfg_;
  std::uint64_t anchor_ = 0;
  std::uint64_t ln_anchor_fixed_ = 0;
};

}  // namespace firoozbakht
