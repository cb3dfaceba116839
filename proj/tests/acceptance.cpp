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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of unexpected outcomes. Run a subset with e.g. `acceptance 1 5 9`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "firoozbakht/bounds.hpp"
#include "firoozbakht/records.hpp"
#include "firoozbakht/report.hpp"
#include "firoozbakht/sieve.hpp"
#include "firoozbakht/verify.hpp"
#include "oracles.hpp"

namespace fb = firoozbakht;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

fb::Sieve make_sieve(std::uint64_t limit) {
  fb::SieveConfig cfg;
  cfg.limit = limit;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  return fb::Sieve(cfg);
}

void ac1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const fb::Table t = fb::table1_report();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::size_t matched = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) matched += t.at(i, "match") == "match";
  o.require(t.rows.size() == 13 && matched == 13, "13 of 13 rows match");
  o.require(t.at(3, "f") == "44.709" && t.at(3, "ell") == "44.515", "k=217 row");
  o.require(t.at(6, "f") == "194.972" && t.at(6, "ell") == "196.142", "k=149689 row");
  o.require(secs < 1.0, "runtime < 1 s");
  o.detail << matched << "/13 rows match at 3 decimals";
}

void ac2(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const fb::Sieve sieve = make_sieve(2'000'000);
  const auto r = fb::verify_theorem1_range(sieve);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(r.outcome == fb::ReportOutcome::all_hold, "all-hold");
  o.require(r.witnesses.empty(), "zero violations");
  o.require(r.count("events") == 133114 - 9, "every 9 < k < 133115 checked");
  o.require(secs < 5.0, "runtime < 5 s");
  o.detail << r.count("events") << " gaps with 9 < k < 133115, " << r.witnesses.size() << " violations";
}

void ac3(Outcome& o) {
  const fb::Sieve sieve = make_sieve(1'000'000'001);
  const auto ex = fb::verify_firoozbakht(sieve, 1'000'000'000, fb::VerifyMode::exhaustive);
  o.require(ex.outcome == fb::ReportOutcome::all_hold, "exhaustive all-hold");
  o.require(ex.count("violations") == 0 && ex.count("inconclusive") == 0, "zero violations/inconclusives");
  o.require(ex.count("events") == 50'847'534, "every p_k < 10^9 checked");

  // Records mode below 10^7, compared event by event with the direct verdicts.
  const std::uint64_t small = 10'000'000;
  const auto table = fb::scan_records(sieve, small);
  const auto rec = fb::verify_firoozbakht(sieve, small, fb::VerifyMode::records, {}, &table);
  o.require(rec.outcome == fb::ReportOutcome::all_hold, "records all-hold");
  const auto checks = fb::check_records_condition(table, fb::constants::kRecordDirectCheckPrime, small);
  std::set<std::uint64_t> record_ok;
  for (const auto& c : checks) {
    if (c.outcome == fb::Outcome::holds) record_ok.insert(c.record.p_start);
  }
  std::uint64_t events = 0, disagreements = 0;
  fb::FiroozbakhtChecker checker;
  for (const auto& e : sieve.gap_events(2, small, 0)) {
    ++events;
    const bool direct = checker.decide(e.k, e.p, e.p_next).outcome == fb::Outcome::holds;
    bool via_records;
    if (e.p <= fb::constants::kRecordDirectCheckPrime) {
      via_records = fb::firoozbakht_exact(e.k, e.p, e.p_next).outcome == fb::Outcome::holds;
    } else {
      via_records = record_ok.count(table.covering(e.p)->p_start) != 0;
    }
    disagreements += direct != via_records;
  }
  o.require(disagreements == 0, "records mode agrees event-for-event below 10^7");
  const auto cov = fb::verify_record_coverage(sieve, table, small);
  o.require(cov.outcome == fb::ReportOutcome::all_hold, "record-interval coverage");
  o.detail << ex.count("events") << " events below 10^9 (max " << ex.max_bits << " bits), " << events
           << " events below 10^7 compared, " << disagreements << " disagreements";
}

void ac4(Outcome& o) {
  const fb::Sieve sieve = make_sieve(100'000'001);
  const auto r = fb::verify_crossover(sieve, 100'000'000);
  o.require(r.count("crossover_index") == 1412, "K = 1412");
  o.require(r.count("crossover_prime") == 11783, "p_K = 11783");
  o.require(r.outcome == fb::ReportOutcome::all_hold, "no inconclusive comparison");
  o.detail << "K = " << r.count("crossover_index") << ", p_K = " << r.count("crossover_prime") << " over "
           << r.count("events") << " events";
}

void ac5(Outcome& o) {
  const fb::Sieve sieve = make_sieve(2'200'000);
  const auto r = fb::near_miss_scan(sieve, 2'000'000, 2'100'001);
  const fb::Witness* hit = nullptr;
  for (const auto& w : r.findings) {
    if (w.p_k == 2010733 && w.q == 2010929) hit = &w;
  }
  o.require(hit != nullptr && hit->kind == fb::witness_kind::near_miss, "q = 2010929 certainly inside");
  o.require(hit != nullptr && hit->p_next == 2010881 && hit->detail == "actual gap < f_k", "gap 148 < f_k");
  o.detail << r.count("near_misses") << " near-misses in [2.0e6, 2.1e6]";
  if (hit) o.detail << "; p_k=2010733 q=2010929 f=" << hit->lhs << " ell=" << hit->rhs;
}

void ac6(Outcome& o) {
  const fb::Sieve sieve = make_sieve(100'000'001);
  const auto r = fb::verify_asymptotic(sieve, 100'000'001);
  o.require(r.outcome == fb::ReportOutcome::all_hold, "sandwich holds for every prime");
  o.require(r.witnesses.empty(), "no witnesses");
  o.require(r.decades.size() == 2 && r.decades[0].decade == 6 && r.decades[1].decade == 7, "decades 10^6, 10^7");
  o.require(r.count("decades_decreasing") == 1, "max deviation decreases");
  o.detail << r.count("events") << " primes;";
  for (const auto& d : r.decades) o.detail << " 10^" << d.decade << ": " << d.max_dev;
}

void ac7(Outcome& o) {
  o.require(fb::check_shifted_pi_bound(285967).outcome == fb::Outcome::holds, "x = 285967");
  std::size_t shifted_fail = 0;
  const double a = std::log(285967.0), b = std::log(1e12);
  for (int i = 0; i < 10'000; ++i) {
    const auto x = static_cast<std::uint64_t>(std::ceil(std::exp(a + (b - a) * i / 9999.0)));
    shifted_fail += fb::check_shifted_pi_bound(std::max<std::uint64_t>(x, 285967)).outcome != fb::Outcome::holds;
  }
  o.require(shifted_fail == 0, "log-spaced samples to 10^12");
  std::mt19937_64 rng(20240917);
  std::size_t ratio_fail = 0;
  for (int i = 0; i < 10'000; ++i) {
    const fb::Rational x{1 + rng() % 1'000'000'000'000, 1 + rng() % 1'000'000};
    const fb::Rational y{1 + rng() % 1'000'000'000'000, 1 + rng() % 1'000'000};
    ratio_fail += fb::check_log_ratio(x, y).outcome != fb::Outcome::holds;
  }
  o.require(ratio_fail == 0, "random positive pairs");
  o.detail << "shifted bound: " << shifted_fail << " failures in 10^4 samples; Eq9: " << ratio_fail << " failures in 10^4 pairs";
}

void ac8(Outcome& o) {
  const fb::Sieve sieve = make_sieve(2'000'000);
  const std::uint64_t pi = sieve.pi(1772201);
  const auto b = fb::axler_pi_bounds(1772201);
  o.require(pi == 133115, "pi(1772201) = 133115");
  o.require(b.lower && b.lower->certainly_less(fb::Interval::exact(pi)), "lower < pi");
  o.require(b.upper && b.upper->certainly_greater(fb::Interval::exact(pi)), "pi < upper");
  std::uint64_t failures = 0, count = 0, first_failure = 0, running = sieve.pi(5);
  const auto primes = sieve.gap_events(6, 1'000'001, running);
  std::size_t next = 0;
  for (std::uint64_t x = 6; x <= 1'000'000; ++x) {
    while (next < primes.size() && primes[next].p <= x) running = primes[next++].k;
    const auto ub = fb::axler_pi_bounds(x, 64);
      const bool ok = ub.upper_applicable && ub.upper && ub.upper->certainly_greater(fb::Interval::exact(running));
    if (!ok && first_failure == 0) first_failure = x;
    failures += !ok;
    ++count;
  }
  o.require(failures == 0, "upper bound on [6, 10^6]");
  o.detail << "lower=" << fb::display3_mid(*b.lower) << " < 133115 < upper=" << fb::display3_mid(*b.upper) << "; "
           << count << " integers checked, " << failures << " failures";
  if (first_failure != 0) {
    const auto ub = fb::axler_pi_bounds(first_failure);
    o.detail << ", first at x=" << first_failure << ": pi(x)=" << sieve.pi(first_failure)
             << " > x/(ln x - 1 - 1.17/ln x)=" << ub.upper->to_string(6);
  }
}

void ac9(Outcome& o) {
  const auto pc = fb::panaitopol_coefficients(64);
  // 1, 3 = 4-1, 13 = 18-3-2, 71 = 96-13-6-6, 461 = 600-71-26-18-24
  const long hand[] = {1, 3, 13, 71, 461};
  bool first_ok = true;
  for (int i = 0; i < 5; ++i) first_ok = first_ok && pc.terms[i] == hand[i];
  o.require(first_ok, "first five terms");
  std::vector<mpz_class> f{1};
  for (unsigned j = 1; j <= 64; ++j) f.push_back(f.back() * j);
  bool identity = true;
  for (unsigned n = 1; n <= 64; ++n) {
    mpz_class sum = pc.terms[n - 1];
    for (unsigned j = 1; j < n; ++j) sum += f[j] * pc.terms[n - 1 - j];
    identity = identity && sum == f[n] * n;
  }
  o.require(identity, "recurrence for n <= 64");
  o.detail << "k_1..k_5 = 1, 3, 13, 71, 461; identity re-verified for n <= 64";
}

void ac10(Outcome& o) {
  const fb::Sieve sieve = make_sieve(100'000);
  const auto events = sieve.gap_events(2, 17'400, 0);  // p_2001 = 17401
  std::mt19937_64 rng(10);
  std::uint64_t disagreements = 0;
  for (int i = 0; i < 10'000; ++i) {
    const auto& e = events[rng() % 2000];
    const fb::Verdict v = fb::firoozbakht_exact(e.k, e.p, e.p_next);
    disagreements += (v.outcome == fb::Outcome::holds) != oracle::power_holds(e.k, e.p, e.p_next) ||
                     v.outcome == fb::Outcome::inconclusive;
  }
  o.require(events.size() >= 2000 && events[1999].k == 2000, "pairs with k <= 2000");
  o.require(disagreements == 0, "agreement with the power oracle");
  const fb::Verdict fake = fb::firoozbakht_exact(149689, 2010733, 2010929);
  o.require(fake.outcome == fb::Outcome::fails, "falsifier fails");
  o.detail << "10^4 pairs, " << disagreements << " disagreements; falsifier -> " << fb::to_string(fake.outcome);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"Table 1 reproduction", ac1},
      {"direct range 9 < k < 133115", ac2},
      {"conjecture below 10^9, records mode agreement", ac3},
      {"crossover index 1412", ac4},
      {"near-miss q = 2010929", ac5},
      {"asymptotic sandwich to 10^8", ac6},
      {"shifted pi bound threshold and log ratio", ac7},
      {"Axler bound instances", ac8},
      {"Panaitopol coefficients", ac9},
      {"oracle equivalence", ac10},
  };
  // Positional ids select criteria; --known-fail N marks a criterion whose
  // failure is documented, so only a change of its outcome is unexpected.
  std::set<int> only, known_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-fail" && i + 1 < argc) {
      known_fail.insert(std::atoi(argv[++i]));
    } else {
      only.insert(std::atoi(argv[i]));
    }
  }
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool known = known_fail.count(id) != 0;
    unexpected += o.pass == known;
    std::printf("AC%-2d %s  %s: %s (%.2f s)%s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.str().c_str(), secs,
                known ? (o.pass ? "  [listed as known failure but passed]" : "  [known failure]") : "");
    std::fflush(stdout);
  }
  return unexpected;
}
