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

// Segmented sieve of Eratosthenes over odd numbers, prime counting and a
// streaming enumeration of consecutive-prime gaps with global indices.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <future>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "firoozbakht/error.hpp"

namespace firoozbakht {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the seven bases are known to be exact for n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Least prime strictly greater than n.
inline std::uint64_t next_prime_u64(std::uint64_t n) {
  if (n < 2) return 2;
  std::uint64_t c = (n % 2 == 0) ? n + 1 : n + 2;
  for (; c > n; c += 2) {
    if (is_prime_u64(c)) return c;
  }
  throw Error(ErrorCode::limit_exceeded, "no prime above " + std::to_string(n) + " fits in 64 bits");
}

struct SieveConfig {
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  // Every sieved number must be <= limit.
  std::uint64_t limit = 26'000'000'000ULL;
  unsigned threads = 1;
  // gap_events recounts pi(lo - 1) to validate a caller-supplied index when
  // lo - 1 is at most this value.
  std::uint64_t recount_threshold = std::uint64_t{1} << 24;
};

// Largest limit accepted: the base-prime table grows as sqrt(limit).
inline constexpr std::uint64_t kMaxSieveLimit = 10'000'000'000'000'000ULL;

struct Segment {
  std::uint64_t lo = 0;  // inclusive
  std::uint64_t hi = 0;  // exclusive
  std::vector<std::uint64_t> primes;
};

struct PrimeGapEvent {
  std::uint64_t k = 0;  // p_1 = 2
  std::uint64_t p = 0;
  std::uint64_t p_next = 0;

  std::uint64_t gap() const noexcept { return p_next - p; }
  friend bool operator==(const PrimeGapEvent&, const PrimeGapEvent&) = default;
};

/// A run of consecutive primes; event i is (primes[i], primes[i + 1]) with
/// index first_k + i.
struct GapBlock {
  std::uint64_t first_k = 0;
  std::vector<std::uint64_t> primes;

  std::size_t size() const noexcept { return primes.size() < 2 ? 0 : primes.size() - 1; }
  PrimeGapEvent operator[](std::size_t i) const {
    return PrimeGapEvent{first_k + i, primes[i], primes[i + 1]};
  }
};

/// Resumable position of a gap sweep. `carry` is the largest prime below
/// `next_lo` whose gap event has not been emitted yet (0 if none), and
/// `k_before` = pi(next_lo - 1).
struct StreamState {
  std::uint64_t next_lo = 2;
  std::uint64_t carry = 0;
  std::uint64_t k_before = 0;

  friend bool operator==(const StreamState&, const StreamState&) = default;
};

class Sieve {
 public:
  explicit Sieve(SieveConfig config = {}) : config_(config) {
    if (config_.segment_size < 64 || config_.segment_size % 2 != 0) {
      throw Error(ErrorCode::domain_error, "segment size must be even and at least 64");
    }
    if (config_.limit < 2 || config_.limit > kMaxSieveLimit) {
      throw Error(ErrorCode::limit_exceeded,
                  "sieve limit must lie in [2, " + std::to_string(kMaxSieveLimit) + "]");
    }
    if (config_.threads == 0) config_.threads = 1;
    build_base_primes(detail::isqrt(config_.limit) + 1);
  }

  const SieveConfig& config() const noexcept { return config_; }

  /// Primes in [lo, hi) for a single segment-sized window.
  Segment sieve_range(std::uint64_t lo, std::uint64_t hi) const {
    check_range(lo, hi);
    if (hi - lo > config_.segment_size) {
      throw Error(ErrorCode::range_too_large, "window of " + std::to_string(hi - lo) +
                                                  " numbers exceeds segment size " +
                                                  std::to_string(config_.segment_size));
    }
    return Segment{lo, hi, segment_primes(lo, hi)};
  }

  /// Number of primes in [lo, hi); streams over segments.
  std::uint64_t count_range(std::uint64_t lo, std::uint64_t hi) const {
    if (hi <= lo) return 0;
    lo = std::max<std::uint64_t>(lo, 2);
    if (hi <= lo) return 0;
    check_range(lo, hi);
    std::uint64_t total = 0;
    for (std::uint64_t a = lo; a < hi;) {
      std::uint64_t b = std::min(hi, a + config_.segment_size);
      total += segment_count(a, b);
      a = b;
    }
    return total;
  }

  std::uint64_t pi(std::uint64_t x) const {
    if (x > config_.limit) {
      throw Error(ErrorCode::limit_exceeded,
                  "pi(" + std::to_string(x) + ") beyond limit " + std::to_string(config_.limit));
    }
    if (x < 2) return 0;
    return count_range(2, x + 1);
  }

  /// Gap events for every prime p in [lo, hi); k_at_lo = pi(lo - 1). The
  /// successor of the last prime may lie beyond hi.
  std::vector<PrimeGapEvent> gap_events(std::uint64_t lo, std::uint64_t hi,
                                        std::uint64_t k_at_lo) const {
    std::vector<PrimeGapEvent> out;
    for_each_gap_block(lo, hi, k_at_lo, [&](const GapBlock& block) {
      for (std::size_t i = 0; i < block.size(); ++i) out.push_back(block[i]);
    });
    return out;
  }

  template <class Fn>
  void for_each_gap_block(std::uint64_t lo, std::uint64_t hi, std::uint64_t k_at_lo,
                          Fn&& fn) const {
    check_range(lo, hi);
    validate_index(lo, k_at_lo);
    sweep(StreamState{lo, 0, k_at_lo}, hi,
          [](const GapBlock& block) -> const GapBlock* { return &block; },
          [&](const GapBlock* block) { fn(*block); });
  }

  /// Checks a caller-supplied pi(lo - 1) by recounting when that is cheap.
  void validate_index(std::uint64_t lo, std::uint64_t k_at_lo) const {
    if (lo - 1 > config_.recount_threshold) return;
    std::uint64_t actual = pi(lo - 1);
    if (actual != k_at_lo) {
      throw Error(ErrorCode::inconsistent_index,
                  "supplied pi(" + std::to_string(lo - 1) + ") = " + std::to_string(k_at_lo) +
                      " but recount gives " + std::to_string(actual));
    }
  }

  /// Streams gap blocks from `start` up to hi. Segments of one batch are
  /// sieved and mapped in parallel; `reduce` sees results in ascending order.
  /// `after_batch` receives the resumable state after each batch. The final
  /// event (whose successor lies at or beyond hi) is emitted before returning.
  template <class Map, class Reduce, class AfterBatch>
  StreamState sweep(StreamState state, std::uint64_t hi, Map&& map, Reduce&& reduce,
                    AfterBatch&& after_batch) const {
    using Result = std::invoke_result_t<Map&, const GapBlock&>;
    if (state.next_lo < 2) state.next_lo = 2;
    if (hi > state.next_lo) check_range(state.next_lo, hi);
    const std::size_t batch = config_.threads;
    while (state.next_lo < hi) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
      for (std::uint64_t a = state.next_lo; a < hi && ranges.size() < batch;) {
        std::uint64_t b = std::min(hi, a + config_.segment_size);
        ranges.emplace_back(a, b);
        a = b;
      }
      std::vector<std::vector<std::uint64_t>> primes(ranges.size());
      parallel_for(ranges.size(), [&](std::size_t i) {
        primes[i] = segment_primes(ranges[i].first, ranges[i].second);
      });

      std::vector<GapBlock> blocks(ranges.size());
      for (std::size_t i = 0; i < ranges.size(); ++i) {
        GapBlock& block = blocks[i];
        if (state.carry != 0) {
          block.first_k = state.k_before;
          block.primes.reserve(primes[i].size() + 1);
          block.primes.push_back(state.carry);
          block.primes.insert(block.primes.end(), primes[i].begin(), primes[i].end());
        } else {
          block.first_k = state.k_before + 1;
          block.primes = std::move(primes[i]);
        }
        state.k_before += block.primes.size() - (state.carry != 0 ? 1 : 0);
        if (!block.primes.empty()) state.carry = block.primes.back();
        state.next_lo = ranges[i].second;
      }

      if constexpr (std::is_void_v<Result>) {
        parallel_for(blocks.size(), [&](std::size_t i) { map(blocks[i]); });
      } else {
        std::vector<std::optional<Result>> results(blocks.size());
        parallel_for(blocks.size(), [&](std::size_t i) { results[i].emplace(map(blocks[i])); });
        for (auto& r : results) reduce(std::move(*r));
      }
      after_batch(static_cast<const StreamState&>(state));
    }
    if (state.carry != 0) {
      GapBlock tail{state.k_before, {state.carry, next_prime_u64(state.carry)}};
      if constexpr (std::is_void_v<Result>) {
        map(tail);
      } else {
        reduce(map(tail));
      }
      state.carry = 0;
    }
    return state;
  }

  template <class Map, class Reduce>
  StreamState sweep(StreamState state, std::uint64_t hi, Map&& map, Reduce&& reduce) const {
    return sweep(state, hi, std::forward<Map>(map), std::forward<Reduce>(reduce),
                 [](const StreamState&) {});
  }

  /// Largest prime below n, found by sieving one window back (n >= 3).
  std::uint64_t prev_prime(std::uint64_t n) const {
    if (n <= 2) throw Error(ErrorCode::domain_error, "no prime below " + std::to_string(n));
    for (std::uint64_t hi = n; hi > 2;) {
      std::uint64_t lo = hi > config_.segment_size + 2 ? hi - config_.segment_size : 2;
      auto primes = segment_primes(lo, hi);
      if (!primes.empty()) return primes.back();
      hi = lo;
    }
    throw Error(ErrorCode::domain_error, "no prime below " + std::to_string(n));
  }

 private:
  void check_range(std::uint64_t lo, std::uint64_t hi) const {
    if (lo < 2 || lo >= hi) {
      throw Error(ErrorCode::domain_error,
                  "invalid range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    }
    if (hi - 1 > config_.limit) {
      throw Error(ErrorCode::limit_exceeded, "range end " + std::to_string(hi) +
                                                 " exceeds sieve limit " +
                                                 std::to_string(config_.limit));
    }
  }

  template <class Fn>
  void parallel_for(std::size_t n, Fn&& fn) const {
    if (config_.threads <= 1 || n <= 1) {
      for (std::size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    std::vector<std::future<void>> tasks;
    tasks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) tasks.push_back(std::async(std::launch::async, fn, i));
    for (auto& t : tasks) t.get();
  }

  void build_base_primes(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 3; i * i <= bound; i += 2) {
      if (composite[i]) continue;
      for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = true;
    }
    for (std::uint64_t i = 3; i <= bound; i += 2) {
      if (!composite[i]) base_primes_.push_back(static_cast<std::uint32_t>(i));
    }
  }

  // Bit j of `bits` stands for first_odd + 2j; set bits are primes.
  std::uint64_t mark(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& bits) const {
    const std::uint64_t first_odd = lo | 1;
    const std::uint64_t n_odd = first_odd >= hi ? 0 : (hi - first_odd + 1) / 2;
    bits.assign((n_odd + 63) / 64, ~std::uint64_t{0});
    if (n_odd % 64 != 0) bits.back() = (std::uint64_t{1} << (n_odd % 64)) - 1;
    if (n_odd == 0) return first_odd;
    if (first_odd == 1) bits[0] &= ~std::uint64_t{1};
    for (std::uint32_t p32 : base_primes_) {
      const std::uint64_t p = p32;
      if (p * p >= hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      std::uint64_t* words = bits.data();
      for (std::uint64_t j = (start - first_odd) / 2; j < n_odd; j += p) {
        words[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
      }
    }
    return first_odd;
  }

  std::vector<std::uint64_t> segment_primes(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> bits;
    const std::uint64_t first_odd = mark(lo, hi, bits);
    std::size_t count = 0;
    for (std::uint64_t w : bits) count += static_cast<std::size_t>(std::popcount(w));
    std::vector<std::uint64_t> primes;
    primes.reserve(count + 1);
    if (lo <= 2 && hi > 2) primes.push_back(2);
    for (std::size_t w = 0; w < bits.size(); ++w) {
      for (std::uint64_t word = bits[w]; word != 0; word &= word - 1) {
        primes.push_back(first_odd + 2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(word))));
      }
    }
    return primes;
  }

  std::uint64_t segment_count(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> bits;
    mark(lo, hi, bits);
    std::uint64_t count = (lo <= 2 && hi > 2) ? 1 : 0;
    for (std::uint64_t w : bits) count += static_cast<std::uint64_t>(std::popcount(w));
    return count;
  }

  SieveConfig config_;
  std::vector<std::uint32_t> base_primes_;
};

}  // namespace firoozbakht
