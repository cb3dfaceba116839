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

#include <random>

#include "firoozbakht/sieve.hpp"
#include "oracles.hpp"

namespace fb = firoozbakht;

namespace {

fb::Sieve small_sieve(std::uint64_t limit, std::uint64_t segment = 1 << 16, unsigned threads = 1) {
  fb::SieveConfig cfg;
  cfg.limit = limit;
  cfg.segment_size = segment;
  cfg.threads = threads;
  return fb::Sieve(cfg);
}

std::vector<fb::PrimeGapEvent> oracle_events(std::uint64_t lo, std::uint64_t hi) {
  std::vector<fb::PrimeGapEvent> out;
  std::uint64_t k = 0, prev = 0;
  for (std::uint64_t n = 2;; ++n) {
    if (!oracle::is_prime_trial(n)) continue;
    if (prev != 0 && prev >= lo) out.push_back({k, prev, n});
    if (n >= hi) break;
    ++k;
    prev = n;
  }
  return out;
}

}  // namespace

TEST(SieveOracle, PiMatchesTrialDivisionUpToOneMillion) {
  const auto pi = oracle::pi_table(1'000'000);
  const fb::Sieve sieve = small_sieve(2'000'000);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(0, 1'000'000);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t x = dist(rng);
    ASSERT_EQ(sieve.pi(x), pi[x]) << "x=" << x;
  }
  EXPECT_EQ(sieve.pi(1'000'000), pi[1'000'000]);
}

TEST(SieveOracle, SegmentsMatchTrialDivision) {
  const fb::Sieve sieve = small_sieve(1'000'000, 4096);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> dist(2, 1'000'000 - 4096);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t lo = dist(rng);
    const std::uint64_t hi = lo + 1 + rng() % 4095;
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (oracle::is_prime_trial(n)) expect.push_back(n);
    }
    ASSERT_EQ(sieve.sieve_range(lo, hi).primes, expect) << lo << ".." << hi;
  }
}

TEST(Sieve, FirstPrimes) {
  const fb::Sieve sieve = small_sieve(1000);
  EXPECT_EQ(sieve.sieve_range(2, 30).primes, (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(Sieve, CrossoverWindow) {
  const fb::Sieve sieve = small_sieve(100'000);
  EXPECT_EQ(sieve.sieve_range(11780, 11790).primes, (std::vector<std::uint64_t>{11783, 11789}));
}

TEST(Sieve, NearMissWindow) {
  const fb::Sieve sieve = small_sieve(3'000'000);
  const auto primes = sieve.sieve_range(2010720, 2010940).primes;
  EXPECT_NE(std::find(primes.begin(), primes.end(), 2010733), primes.end());
  EXPECT_NE(std::find(primes.begin(), primes.end(), 2010929), primes.end());
}

TEST(Sieve, PiValues) {
  const fb::Sieve sieve = small_sieve(2'000'000);
  EXPECT_EQ(sieve.pi(0), 0u);
  EXPECT_EQ(sieve.pi(1), 0u);
  EXPECT_EQ(sieve.pi(29), 10u);
  EXPECT_EQ(sieve.pi(1772201), 133115u);
}

TEST(Sieve, Errors) {
  const fb::Sieve sieve = small_sieve(10'000, 1024);
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const fb::Error& e) {
      return e.code();
    }
    return fb::ErrorCode::io_error;
  };
  EXPECT_EQ(code_of([&] { sieve.sieve_range(2, 5000); }), fb::ErrorCode::range_too_large);
  EXPECT_EQ(code_of([&] { sieve.sieve_range(9990, 10'100); }), fb::ErrorCode::limit_exceeded);
  EXPECT_EQ(code_of([&] { sieve.sieve_range(10, 10); }), fb::ErrorCode::domain_error);
  EXPECT_EQ(code_of([&] { sieve.pi(10'001); }), fb::ErrorCode::limit_exceeded);
  EXPECT_EQ(code_of([&] { sieve.gap_events(100, 200, 24); }), fb::ErrorCode::inconsistent_index);
}

TEST(Sieve, GapEventsFromTheStart) {
  const fb::Sieve sieve = small_sieve(1000);
  const auto events = sieve.gap_events(2, 10, 0);
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.front(), (fb::PrimeGapEvent{1, 2, 3}));
  EXPECT_EQ(events.back(), (fb::PrimeGapEvent{4, 7, 11}));  // successor beyond hi
}

TEST(Sieve, TableRowsAsEvents) {
  const fb::Sieve sieve = small_sieve(10'000, 256);
  const auto events = sieve.gap_events(2, 2000, 0);
  auto find = [&](std::uint64_t p) {
    for (const auto& e : events) {
      if (e.p == p) return e;
    }
    return fb::PrimeGapEvent{};
  };
  EXPECT_EQ(find(113), (fb::PrimeGapEvent{30, 113, 127}));
  EXPECT_EQ(find(1327), (fb::PrimeGapEvent{217, 1327, 1361}));
}

TEST(Sieve, EventsMatchOracleAcrossTinySegments) {
  const fb::Sieve sieve = small_sieve(100'000, 64);
  EXPECT_EQ(sieve.gap_events(2, 20'000, 0), oracle_events(2, 20'000));
  EXPECT_EQ(sieve.gap_events(1000, 20'000, sieve.pi(999)), oracle_events(1000, 20'000));
}

TEST(Sieve, RandomSplitsConcatenate) {
  const fb::Sieve sieve = small_sieve(2'000'000, 1 << 12);
  const auto whole = sieve.gap_events(2, 1'000'000, 0);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::uint64_t> cuts{2};
    while (cuts.back() < 1'000'000) cuts.push_back(std::min<std::uint64_t>(1'000'000, cuts.back() + 1 + rng() % 300'000));
    std::vector<fb::PrimeGapEvent> joined;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      auto part = sieve.gap_events(cuts[i], cuts[i + 1], sieve.pi(cuts[i] - 1));
      joined.insert(joined.end(), part.begin(), part.end());
    }
    ASSERT_EQ(joined, whole);
  }
}

TEST(Sieve, IndicesMatchFreshCount) {
  const fb::Sieve sieve = small_sieve(2'000'000);
  const auto events = sieve.gap_events(500'000, 1'500'000, sieve.pi(499'999));
  for (std::size_t i = 0; i < events.size(); i += 997) {
    EXPECT_EQ(sieve.pi(events[i].p), events[i].k);
    EXPECT_EQ(fb::next_prime_u64(events[i].p), events[i].p_next);
  }
}

TEST(Sieve, ThreadCountDoesNotChangeEvents) {
  const fb::Sieve one = small_sieve(2'000'000, 1 << 14, 1);
  const fb::Sieve four = small_sieve(2'000'000, 1 << 14, 4);
  EXPECT_EQ(one.gap_events(2, 1'000'000, 0), four.gap_events(2, 1'000'000, 0));
}

TEST(Sieve, MillerRabinAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 200'000; ++n) ASSERT_EQ(fb::is_prime_u64(n), oracle::is_prime_trial(n)) << n;
  EXPECT_TRUE(fb::is_prime_u64(1693182318746371ULL));
  EXPECT_FALSE(fb::is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Sieve, PrevPrime) {
  const fb::Sieve sieve = small_sieve(100'000, 128);
  EXPECT_EQ(sieve.prev_prime(3), 2u);
  EXPECT_EQ(sieve.prev_prime(11783), 11779u);
  EXPECT_EQ(sieve.prev_prime(1361), 1327u);
}
