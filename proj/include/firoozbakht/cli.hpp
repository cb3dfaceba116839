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

// Command-line front end. run_cli is the whole program; tools/firoozbakht.cpp
// only forwards argv so tests can drive every subcommand in-process.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 violation (or table mismatch),
// 3 inconclusive.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "firoozbakht/bounds.hpp"
#include "firoozbakht/error.hpp"
#include "firoozbakht/records.hpp"
#include "firoozbakht/report.hpp"
#include "firoozbakht/sieve.hpp"
#include "firoozbakht/verify.hpp"

namespace firoozbakht {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInconclusive = 3;

/// Parses counts like "1000000", "1e6", "2.6e10". The value must be integral.
inline std::uint64_t parse_count(std::string_view s) {
  auto bad = [&] { return Error(ErrorCode::domain_error, "not a non-negative integer: '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  const auto e = s.find_first_of("eE");
  const std::string_view mant = s.substr(0, e);
  long exp10 = 0;
  if (e != std::string_view::npos) {
    const std::string_view ex = s.substr(e + 1);
    if (ex.empty() || ex.size() > 3 || !std::all_of(ex.begin(), ex.end(), ::isdigit)) throw bad();
    exp10 = std::stol(std::string(ex));
  }
  std::string digits;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_dot) --exp10;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  // drop trailing zeros consumed by a negative exponent
  while (exp10 < 0 && digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    ++exp10;
  }
  if (exp10 < 0) throw bad();
  digits.append(static_cast<std::size_t>(exp10), '0');
  mpz_class v(digits, 10);
  if (v > mpz_class(std::to_string(UINT64_MAX), 10)) throw bad();
  return std::stoull(v.get_str());
}

struct RunConfig {
  std::uint64_t limit = 1'000'000;
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  unsigned threads = 0;  // 0: hardware concurrency
  unsigned precision_start = 96;
  unsigned precision_cap = 4096;
  std::uint64_t bigint_digit_cap = 10'000'000;
  Format format = Format::text;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::filesystem::path> records;
  std::optional<std::filesystem::path> record_gaps;
  std::optional<std::filesystem::path> out;

  void validate() const {
    if (limit == 0 || segment_size == 0 || precision_start == 0 || precision_cap == 0 || bigint_digit_cap == 0) {
      throw Error(ErrorCode::domain_error, "numeric settings must be positive");
    }
    if (precision_start > precision_cap) {
      throw Error(ErrorCode::domain_error, "--precision-start exceeds --precision-cap");
    }
  }

  PrecisionConfig precision() const { return {precision_start, precision_cap, bigint_digit_cap}; }

  Sieve make_sieve(std::uint64_t reach) const {
    SieveConfig sc;
    sc.segment_size = segment_size;
    sc.limit = std::max<std::uint64_t>(reach, 100);
    sc.threads = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (sc.limit > sieve_default_limit()) {
      std::cerr << "warning: sieving to " << sc.limit << " beyond the default " << sieve_default_limit()
                << " may take hours\n";
    }
    return Sieve(sc);
  }

  static std::uint64_t sieve_default_limit() { return SieveConfig{}.limit; }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void emit(const RunConfig& rc, std::ostream& out, const std::string& text) {
  if (!rc.out) {
    out << text;
    return;
  }
  std::ofstream f(*rc.out, std::ios::trunc);
  if (!f) throw Error(ErrorCode::io_error, "cannot write " + rc.out->string());
  f << text;
  if (!f) throw Error(ErrorCode::io_error, "short write to " + rc.out->string());
}

inline int exit_code(ReportOutcome o) {
  switch (o) {
    case ReportOutcome::violation: return kExitViolation;
    case ReportOutcome::inconclusive: return kExitInconclusive;
    default: return kExitOk;
  }
}

inline int worst(const std::vector<VerdictReport>& reports) {
  int code = kExitOk;
  for (const auto& r : reports) {
    const int c = exit_code(r.outcome);
    if (c == kExitViolation || (c == kExitInconclusive && code == kExitOk)) code = c;
  }
  return code;
}

inline Table reports_summary(const std::vector<VerdictReport>& reports) {
  Table t{{"check_id", "lo", "hi", "outcome", "witnesses", "findings", "max_bits"}, {}};
  for (const auto& r : reports) {
    t.add_row({r.check_id, std::to_string(r.lo), std::to_string(r.hi), std::string(to_string(r.outcome)),
               std::to_string(r.witnesses.size()), std::to_string(r.findings.size()), std::to_string(r.max_bits)});
  }
  return t;
}

inline std::string render_reports(const std::vector<VerdictReport>& reports, Format f) {
  if (f == Format::json) return nlohmann::json(reports).dump(2) + "\n";
  if (f == Format::csv) return to_csv(reports_summary(reports));
  std::string s;
  for (const auto& r : reports) s += summary_text(r);
  return s;
}

inline PrimeGapEvent parse_event(const std::string& s) {
  std::vector<std::uint64_t> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(parse_count(item));
  if (parts.size() != 3) throw Error(ErrorCode::domain_error, "expected k:p:q, got '" + s + "'");
  return PrimeGapEvent{parts[0], parts[1], parts[2]};
}

/// Scanned records up to `limit`, merged with b-files when given.
inline RecordTable load_records(const RunConfig& rc, const Sieve& sieve, std::uint64_t limit) {
  RecordTable scanned = scan_records(sieve, limit);
  if (!rc.records) return scanned;
  if (!rc.record_gaps) throw Error(ErrorCode::domain_error, "--records needs --record-gaps");
  const auto starts = parse_bfile(read_file(*rc.records));
  const auto gaps = parse_bfile(read_file(*rc.record_gaps));
  return merge_tables(scanned, starts, gaps);
}

inline SweepOptions sweep_options(const RunConfig& rc, std::string_view suffix = {}) {
  SweepOptions o;
  if (rc.checkpoint) {
    o.checkpoint = *rc.checkpoint;
    if (!suffix.empty()) *o.checkpoint += std::string(suffix);
  }
  return o;
}

}  // namespace detail

/// Parses argv and runs one subcommand; diagnostics go to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Firoozbakht conjecture and prime-gap bound verification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");

  RunConfig rc;
  std::string limit_s, segment_s, digit_cap_s, format_s = "text", mode_s = "exhaustive";
  std::string checkpoint_s, records_s, record_gaps_s, out_s;
  std::vector<std::string> injected;
  std::string k_s, p_s, lo_s;
  unsigned pan_n = 8;

  app.add_option("--limit", limit_s, "upper end of the range (e.g. 1e6, 2.6e10)");
  app.add_option("--segment-size", segment_s, "sieve segment size in numbers");
  app.add_option("--threads", rc.threads, "worker threads (0 = all cores)");
  app.add_option("--precision-start", rc.precision_start, "initial interval precision in bits");
  app.add_option("--precision-cap", rc.precision_cap, "maximal interval precision in bits");
  app.add_option("--bigint-digit-cap", digit_cap_s, "digit cap for exact power comparison");
  app.add_option("--format", format_s, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--checkpoint", checkpoint_s, "checkpoint file for long sweeps");
  app.add_option("--records", records_s, "b-file of record gap starts");
  app.add_option("--record-gaps", record_gaps_s, "b-file of record gap sizes, aligned with --records");
  app.add_option("--out", out_s, "write output here instead of stdout");

  auto* table1 = app.add_subcommand("table1", "recompute f_k and ell_k for the fixture rows");
  auto* verify = app.add_subcommand("verify", "check the conjecture and the sufficient conditions");
  verify->add_option("--mode", mode_s, "exhaustive or records")->check(CLI::IsMember({"exhaustive", "records"}));
  verify->add_option("--inject-event", injected, "extra hypothetical event k:p:q to check");
  auto* scan = app.add_subcommand("scan-records", "maximal gaps below --limit");
  auto* bounds = app.add_subcommand("bounds", "bound profile at one prime");
  bounds->add_option("--k", k_s, "index of p (computed by sieving when omitted)");
  bounds->add_option("--p", p_s, "the prime p_k")->required();
  auto* near = app.add_subcommand("near-miss", "primes q in [p_k + f_k, p_k + ell_k]");
  near->add_option("--lo", lo_s, "lower end of p_k (default 11783)");
  auto* asym = app.add_subcommand("asymptotic", "sandwich check and per-decade deviation");
  auto* pan = app.add_subcommand("panaitopol", "coefficients of Panaitopol's formula");
  pan->add_option("--n", pan_n, "number of terms (1..64)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!limit_s.empty()) rc.limit = parse_count(limit_s);
    if (!segment_s.empty()) rc.segment_size = parse_count(segment_s);
    if (!digit_cap_s.empty()) rc.bigint_digit_cap = parse_count(digit_cap_s);
    rc.format = format_from_string(format_s);
    if (!checkpoint_s.empty()) rc.checkpoint = checkpoint_s;
    if (!records_s.empty()) rc.records = records_s;
    if (!record_gaps_s.empty()) rc.record_gaps = record_gaps_s;
    if (!out_s.empty()) rc.out = out_s;
    rc.validate();
    const VerifyConfig vc{rc.precision(), detail::sweep_options(rc)};

    if (*table1) {
      const Table t = table1_report(rc.precision());
      detail::emit(rc, out, render(t, rc.format));
      return table1_all_match(t) ? kExitOk : kExitViolation;
    }

    if (*verify) {
      const Sieve sieve = rc.make_sieve(rc.limit + 1);
      std::vector<VerdictReport> reports;
      if (mode_s == "exhaustive") {
        reports.push_back(verify_firoozbakht(sieve, rc.limit, VerifyMode::exhaustive, vc));
      } else {
        const RecordTable table = detail::load_records(rc, sieve, rc.limit);
        reports.push_back(verify_firoozbakht(sieve, rc.limit, VerifyMode::records, vc, &table));
      }
      reports.push_back(verify_sufficient_conditions(
          sieve, rc.limit, VerifyConfig{rc.precision(), detail::sweep_options(rc, ".conditions")}));
      if (!injected.empty()) {
        std::vector<PrimeGapEvent> events;
        for (const auto& s : injected) events.push_back(detail::parse_event(s));
        reports.push_back(verify_events(events, vc));
      }
      detail::emit(rc, out, detail::render_reports(reports, rc.format));
      return detail::worst(reports);
    }

    if (*scan) {
      const Sieve sieve = rc.make_sieve(rc.limit + 1);
      const RecordTable table = detail::load_records(rc, sieve, rc.limit);
      detail::emit(rc, out, render(records_report(table), rc.format));
      return kExitOk;
    }

    if (*bounds) {
      const std::uint64_t p = parse_count(p_s);
      std::uint64_t k = k_s.empty() ? 0 : parse_count(k_s);
      if (k == 0) {
        if (!is_prime_u64(p)) throw Error(ErrorCode::domain_error, std::to_string(p) + " is not prime");
        k = rc.make_sieve(p + 1).pi(p);
      }
      const Table t = bounds_report({make_profile(k, p, rc.precision_start)});
      detail::emit(rc, out, render(t, rc.format));
      return kExitOk;
    }

    if (*near) {
      const std::uint64_t lo = lo_s.empty() ? constants::kCrossoverPrime : parse_count(lo_s);
      const Sieve sieve = rc.make_sieve(rc.limit + 1);
      const VerdictReport r = near_miss_scan(sieve, lo, rc.limit, vc);
      detail::emit(rc, out, rc.format == Format::text ? summary_text(r) + to_text(near_miss_report(r))
                                                      : render(near_miss_report(r), rc.format));
      return detail::exit_code(r.outcome);
    }

    if (*asym) {
      const Sieve sieve = rc.make_sieve(rc.limit + 1);
      const VerdictReport r = verify_asymptotic(sieve, rc.limit, vc);
      detail::emit(rc, out, rc.format == Format::text ? summary_text(r) + to_text(asymptotic_report(r))
                                                      : render(asymptotic_report(r), rc.format));
      return detail::exit_code(r.outcome);
    }

    if (*pan) {
      detail::emit(rc, out, render(panaitopol_report(pan_n), rc.format));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace firoozbakht
