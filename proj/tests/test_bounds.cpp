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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "firoozbakht/bounds.hpp"
#include "firoozbakht/report.hpp"
#include "firoozbakht/sieve.hpp"

namespace fb = firoozbakht;

namespace {
std::string d3(const fb::Interval& x) { return fb::display3(x).value_or("straddles"); }
}  // namespace

// k_1 = 1*1! = 1
// k_2 = 2*2! - 1!*k_1 = 4 - 1 = 3
// k_3 = 3*3! - 1!*k_2 - 2!*k_1 = 18 - 3 - 2 = 13
// k_4 = 4*4! - 1!*k_3 - 2!*k_2 - 3!*k_1 = 96 - 13 - 6 - 6 = 71
// k_5 = 5*5! - 1!*k_4 - 2!*k_3 - 3!*k_2 - 4!*k_1 = 600 - 71 - 26 - 18 - 24 = 461
TEST(PanaitopolOracle, HandDerivedTerms) {
  const auto pc = fb::panaitopol_coefficients(5);
  ASSERT_EQ(pc.terms.size(), 5u);
  const long expect[] = {1, 3, 13, 71, 461};
  for (int i = 0; i < 5; ++i) EXPECT_EQ(pc.terms[i], expect[i]);
  EXPECT_EQ(fb::panaitopol_coefficients(1).terms, std::vector<mpz_class>{1});
}

TEST(PanaitopolOracle, RecurrenceHoldsBySubstitution) {
  const auto pc = fb::panaitopol_coefficients(64);
  std::vector<mpz_class> f{1};
  for (unsigned j = 1; j <= 64; ++j) f.push_back(f.back() * j);
  for (unsigned n = 1; n <= 64; ++n) {
    mpz_class sum = pc.terms[n - 1];
    for (unsigned j = 1; j < n; ++j) sum += f[j] * pc.terms[n - 1 - j];
    EXPECT_EQ(sum, f[n] * n) << n;
    EXPECT_GT(pc.terms[n - 1], 0);
  }
  EXPECT_THROW(fb::panaitopol_coefficients(0), fb::Error);
  EXPECT_THROW(fb::panaitopol_coefficients(65), fb::Error);
}

TEST(Bounds, FAtTrivialAndTableRows) {
  const fb::Interval f12 = fb::eval_f(1, 2);
  EXPECT_EQ(mpfr_cmp_ui(f12.lo().get(), 2), 0);
  EXPECT_EQ(mpfr_cmp_ui(f12.hi().get(), 2), 0);
  EXPECT_EQ(d3(fb::eval_f(217, 1327)), "44.709");
  EXPECT_EQ(d3(fb::eval_f(49749629143526ULL, 1693182318746371ULL)), "1193.418");
}

TEST(Bounds, FWidthAtDefaultPrecision) {
  for (const auto& row : fb::kTable1) {
    const fb::Interval f = fb::eval_f(row.k, row.p_k);
    EXPECT_LT(mpfr_get_d(f.width().get(), MPFR_RNDU), 1e-6) << row.k;
  }
}

TEST(Bounds, Ell) {
  EXPECT_EQ(d3(fb::eval_ell(13)), "4.014");
  EXPECT_EQ(d3(fb::eval_ell(1327)), "44.515");
  const fb::Interval e2 = fb::eval_ell(2);
  EXPECT_TRUE(e2.certainly_less(fb::Interval::exact(0)));
  EXPECT_NEAR(e2.mid_double(), -0.2127, 1e-4);
  EXPECT_TRUE(fb::eval_ell(5).certainly_positive());
}

TEST(Bounds, TableOneReproducesEveryRow) {
  for (const auto& row : fb::kTable1) {
    EXPECT_EQ(d3(fb::eval_f(row.k, row.p_k)), row.f_printed) << "k=" << row.k;
    EXPECT_EQ(d3(fb::eval_ell(row.p_k)), row.ell_printed) << "k=" << row.k;
  }
}

TEST(Bounds, EvaluatorMatchesDirectEvaluation) {
  fb::BoundEvaluator ev(96);
  for (const auto& row : fb::kTable1) {
    ev.set_prime(row.p_k);
    ev.compute_f(row.k);
    EXPECT_TRUE(ev.f().contains(fb::eval_f(row.k, row.p_k, 300))) << row.k;
    EXPECT_TRUE(ev.ell().contains(fb::eval_ell(row.p_k, 300))) << row.k;
  }
  ev.set_prime(7);
  ev.compute_f(1);
  EXPECT_EQ(mpfr_cmp_ui(ev.f().lo().get(), 42), 0);
}

TEST(Bounds, ConditionsAt29) {
  const auto c = fb::eval_thm4_rhs(29);
  EXPECT_NEAR(c[0].mid_double(), 6.802, 1e-3);
  EXPECT_NEAR(fb::eval_ell(29).mid_double(), 7.972, 1e-3);
  EXPECT_THROW(fb::eval_thm4_rhs(23), fb::Error);
}

TEST(Bounds, ConditionsTendToEllMinusOne) {
  const std::uint64_t p = 1'000'000'000;
  const auto c = fb::eval_thm4_rhs(p);
  const fb::Interval L = fb::ln_enclose(p, 96);
  const fb::Interval top = fb::eval_ell(p) - 1;
  const fb::Interval bottom = top - fb::Interval::exact(5) / L;
  for (int i = 1; i < 4; ++i) {
    EXPECT_TRUE(c[i].certainly_less(top)) << i;
    EXPECT_TRUE(c[i].certainly_greater(bottom)) << i;
  }
}

TEST(Bounds, ConditionOrderAtThreshold) {
  // Order fixed by direct evaluation at p = 1772201: C4 < C3 < C2 < C1.
  const auto c = fb::eval_thm4_rhs(1772201);
  EXPECT_TRUE(c[3].certainly_less(c[2]));
  EXPECT_TRUE(c[2].certainly_less(c[1]));
  EXPECT_TRUE(c[1].certainly_less(c[0]));
}

TEST(Bounds, ProfileWithoutIndexHasNoF) {
  const auto with = fb::make_profile(217, 1327);
  ASSERT_TRUE(with.f.has_value());
  ASSERT_TRUE(with.conditions.has_value());
  const auto without = fb::make_profile(0, 1327);
  EXPECT_FALSE(without.f.has_value());
  EXPECT_FALSE(fb::make_profile(4, 7).conditions.has_value());
  EXPECT_TRUE(with.f->certainly_positive());
}

TEST(Bounds, AxlerAtThreshold) {
  fb::SieveConfig cfg;
  cfg.limit = 2'000'000;
  const fb::Sieve sieve(cfg);
  const std::uint64_t pi = sieve.pi(1772201);
  ASSERT_EQ(pi, 133115u);
  const auto b = fb::axler_pi_bounds(1772201);
  ASSERT_TRUE(b.lower && b.upper);
  EXPECT_TRUE(b.lower_applicable);
  EXPECT_TRUE(b.lower->certainly_less(fb::Interval::exact(pi)));
  EXPECT_TRUE(b.upper->certainly_greater(fb::Interval::exact(pi)));
}

TEST(Bounds, AxlerSmallArguments) {
  const auto b29 = fb::axler_pi_bounds(29);
  EXPECT_TRUE(b29.upper_applicable);
  EXPECT_NEAR(b29.upper->mid_double(), 14.3, 0.1);
  EXPECT_TRUE(b29.upper->certainly_greater(fb::Interval::exact(10)));
  const auto b6 = fb::axler_pi_bounds(1'000'000);
  EXPECT_FALSE(b6.lower_applicable);
  EXPECT_TRUE(b6.upper_applicable);
  EXPECT_FALSE(fb::axler_pi_bounds(5).upper_applicable);
  EXPECT_TRUE(fb::axler_pi_bounds(6).upper_applicable);
  EXPECT_FALSE(fb::axler_pi_bounds(9).upper_sharp_applicable);
  EXPECT_TRUE(fb::axler_pi_bounds(10).upper_sharp_applicable);
}

TEST(Bounds, AxlerUpperAgainstSieve) {
  // x/(ln x - 1 - 1.17/ln x) bounds pi(x) on [6, 59752]; pi(59753) = 6041
  // exceeds it (6040.787...), as does pi at many larger primes.
  fb::SieveConfig cfg;
  cfg.limit = 200'000;
  const fb::Sieve sieve(cfg);
  for (std::uint64_t x = 6; x < 59753; ++x) {
    const auto b = fb::axler_pi_bounds(x, 64);
    ASSERT_TRUE(b.upper) << x;
    ASSERT_TRUE(b.upper->certainly_greater(fb::Interval::exact(sieve.pi(x)))) << x;
  }
  const auto at = fb::axler_pi_bounds(59753);
  EXPECT_EQ(sieve.pi(59753), 6041u);
  EXPECT_TRUE(at.upper->certainly_less(fb::Interval::exact(6041)));
  EXPECT_NEAR(at.upper->mid_double(), 6040.787, 1e-3);
  // The sharper bound with 3.83 stays valid there.
  EXPECT_TRUE(at.upper_sharp->certainly_greater(fb::Interval::exact(6041)));
}

TEST(Bounds, ShiftedPiBound) {
  EXPECT_EQ(fb::check_shifted_pi_bound(285967).outcome, fb::Outcome::holds);
  EXPECT_EQ(fb::check_shifted_pi_bound(1'000'000'000).outcome, fb::Outcome::holds);
  // Below the threshold, from direct evaluation.
  EXPECT_EQ(fb::check_shifted_pi_bound(10).outcome, fb::Outcome::fails);
  EXPECT_EQ(fb::check_shifted_pi_bound(285966).outcome, fb::Outcome::fails);
  try {
    fb::check_shifted_pi_bound(3);
    FAIL();
  } catch (const fb::Error& e) {
    EXPECT_EQ(e.code(), fb::ErrorCode::not_applicable);
  }
}

TEST(Bounds, LogRatio) {
  EXPECT_EQ(fb::check_log_ratio({1}, {1}).outcome, fb::Outcome::holds);
  EXPECT_EQ(fb::check_log_ratio({1327}, {34}).outcome, fb::Outcome::holds);
  EXPECT_THROW(fb::check_log_ratio({0}, {1}), fb::Error);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const fb::Rational x{1 + rng() % 1'000'000'000, 1 + rng() % 1'000'000};
    const fb::Rational y{1 + rng() % 1'000'000, 1 + rng() % 1'000'000'000};
    ASSERT_EQ(fb::check_log_ratio(x, y).outcome, fb::Outcome::holds) << x.num << "/" << x.den << " " << y.num << "/" << y.den;
  }
}
