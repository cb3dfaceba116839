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

// Maximal prime gaps: discovery by scanning and ingestion of published
// tables in OEIS b-file format.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "firoozbakht/error.hpp"
#include "firoozbakht/sieve.hpp"

namespace firoozbakht {

enum class RecordSource { scanned, ingested };

constexpr std::string_view to_string(RecordSource s) {
  return s == RecordSource::scanned ? "scanned" : "ingested";
}

struct GapRecord {
  std::uint64_t gap = 0;
  std::uint64_t p_start = 0;
  std::uint64_t k_start = 0;  // 0 when unknown
  RecordSource source = RecordSource::scanned;

  friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

/// Records sorted by p_start; complete for every p_start < limit.
struct RecordTable {
  std::vector<GapRecord> records;
  std::uint64_t limit = 0;

  friend bool operator==(const RecordTable&, const RecordTable&) = default;

  RecordTable restricted(std::uint64_t new_limit) const {
    RecordTable out;
    out.limit = std::min(limit, new_limit);
    for (const auto& r : records) {
      if (r.p_start < out.limit) out.records.push_back(r);
    }
    return out;
  }

  /// The record whose interval [p_start, next p_start) contains p.
  const GapRecord* covering(std::uint64_t p) const {
    auto it = std::upper_bound(records.begin(), records.end(), p,
                               [](std::uint64_t v, const GapRecord& r) { return v < r.p_start; });
    if (it == records.begin()) return nullptr;
    return &*std::prev(it);
  }
};

/// Running max-gap reduction. `local_records` is the per-block map, `merge`
/// the ordered reduce; merging block results in ascending order reproduces
/// a sequential scan exactly.
class RecordAccumulator {
 public:
  static std::vector<GapRecord> local_records(const GapBlock& block) {
    std::vector<GapRecord> out;
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < block.size(); ++i) {
      const PrimeGapEvent e = block[i];
      if (e.gap() > best) {
        best = e.gap();
        out.push_back(GapRecord{e.gap(), e.p, e.k, RecordSource::scanned});
      }
    }
    return out;
  }

  void merge(std::vector<GapRecord>&& candidates) {
    for (auto& r : candidates) {
      if (r.gap > max_gap_) {
        max_gap_ = r.gap;
        records_.push_back(r);
      }
    }
  }

  void restore(std::vector<GapRecord> records) {
    records_ = std::move(records);
    max_gap_ = records_.empty() ? 0 : records_.back().gap;
  }

  const std::vector<GapRecord>& records() const noexcept { return records_; }
  std::uint64_t max_gap() const noexcept { return max_gap_; }

 private:
  std::vector<GapRecord> records_;
  std::uint64_t max_gap_ = 0;
};

/// Every maximal gap whose opening prime is below limit, with exact indices.
inline RecordTable scan_records(const Sieve& sieve, std::uint64_t limit) {
  if (limit < 3) throw Error(ErrorCode::domain_error, "scan_records needs limit >= 3");
  RecordAccumulator acc;
  sieve.sweep(StreamState{2, 0, 0}, limit, &RecordAccumulator::local_records,
              [&](std::vector<GapRecord>&& r) { acc.merge(std::move(r)); });
  return RecordTable{acc.records(), limit};
}

// ---------------------------------------------------------------------------
// OEIS b-files: '#' comment lines, blank lines, and "n a(n)" pairs.

struct BFileEntry {
  std::uint64_t index = 0;
  std::uint64_t value = 0;

  friend bool operator==(const BFileEntry&, const BFileEntry&) = default;
};

inline std::vector<BFileEntry> parse_bfile(std::string_view text) {
  std::vector<BFileEntry> out;
  std::size_t line_no = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::uint64_t fields[2] = {0, 0};
    std::size_t n_fields = 0;
    while (!line.empty()) {
      std::size_t end = 0;
      while (end < line.size() && !is_space(line[end])) ++end;
      const std::string_view token = line.substr(0, end);
      line.remove_prefix(end);
      while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
      if (n_fields == 2) {
        throw Error(ErrorCode::malformed_line, "line " + std::to_string(line_no) + ": more than two fields");
      }
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), fields[n_fields]);
      if (ec == std::errc::result_out_of_range) {
        throw Error(ErrorCode::value_too_large,
                    "line " + std::to_string(line_no) + ": '" + std::string(token) + "' exceeds 2^64-1");
      }
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::malformed_line, "line " + std::to_string(line_no) + ": '" +
                                                   std::string(token) + "' is not a non-negative integer");
      }
      ++n_fields;
    }
    if (n_fields != 2) {
      throw Error(ErrorCode::malformed_line, "line " + std::to_string(line_no) + ": expected 'n a(n)'");
    }
    if (!out.empty() && fields[0] <= out.back().index) {
      throw Error(ErrorCode::non_monotonic_index, "line " + std::to_string(line_no) + ": index " +
                                                      std::to_string(fields[0]) + " after " +
                                                      std::to_string(out.back().index));
    }
    out.push_back(BFileEntry{fields[0], fields[1]});
  }
  return out;
}

inline std::string write_bfile(const std::vector<BFileEntry>& entries, std::string_view comment = {}) {
  std::string out;
  if (!comment.empty()) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  for (const auto& e : entries) {
    out += std::to_string(e.index);
    out += ' ';
    out += std::to_string(e.value);
    out += '\n';
  }
  return out;
}

/// A record table as three aligned b-files (n from 1): opening primes, gap
/// sizes and indices of the opening primes.
struct RecordBFiles {
  std::vector<BFileEntry> starts;
  std::vector<BFileEntry> gaps;
  std::vector<BFileEntry> indices;
};

inline RecordBFiles to_bfiles(const RecordTable& table) {
  RecordBFiles out;
  std::uint64_t n = 1;
  for (const auto& r : table.records) {
    out.starts.push_back({n, r.p_start});
    out.gaps.push_back({n, r.gap});
    out.indices.push_back({n, r.k_start});
    ++n;
  }
  return out;
}

inline void check_aligned(const std::vector<BFileEntry>& a, const std::vector<BFileEntry>& b,
                          std::string_view what) {
  bool ok = a.size() == b.size();
  for (std::size_t i = 0; ok && i < a.size(); ++i) ok = a[i].index == b[i].index;
  if (!ok) {
    throw Error(ErrorCode::inconsistent_table, "record starts and " + std::string(what) + " are not aligned");
  }
}

inline RecordTable table_from_bfiles(const std::vector<BFileEntry>& starts,
                                     const std::vector<BFileEntry>& gaps,
                                     const std::vector<BFileEntry>* indices, RecordSource source,
                                     std::uint64_t limit) {
  check_aligned(starts, gaps, "gaps");
  if (indices != nullptr) check_aligned(starts, *indices, "indices");
  RecordTable table;
  table.limit = limit;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const GapRecord r{gaps[i].value, starts[i].value, indices ? (*indices)[i].value : 0, source};
    if (!table.records.empty() &&
        (r.gap <= table.records.back().gap || r.p_start <= table.records.back().p_start)) {
      throw Error(ErrorCode::inconsistent_table,
                  "records must increase in gap and start (row n=" + std::to_string(starts[i].index) + ")");
    }
    table.records.push_back(r);
  }
  return table;
}

/// Combines a scanned table with ingested rows. Rows opening below the scan
/// horizon must coincide with scanned records; rows beyond it are appended.
/// When the ingested rows are the full sequence prefix (n = 1, 2, 3, ...),
/// the merged table is complete through its last ingested start.
inline RecordTable merge_tables(const RecordTable& scanned, const std::vector<BFileEntry>& starts,
                                const std::vector<BFileEntry>& gaps,
                                const std::vector<BFileEntry>* indices = nullptr) {
  check_aligned(starts, gaps, "gaps");
  if (indices != nullptr) check_aligned(starts, *indices, "indices");
  RecordTable merged = scanned;
  bool full_prefix = true;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (starts[i].index != i + 1) full_prefix = false;
    const std::uint64_t p = starts[i].value;
    const std::uint64_t g = gaps[i].value;
    const std::uint64_t k = indices ? (*indices)[i].value : 0;
    if (p < scanned.limit) {
      const GapRecord* match = scanned.covering(p);
      if (match == nullptr || match->p_start != p || match->gap != g ||
          (k != 0 && match->k_start != 0 && k != match->k_start)) {
        throw Error(ErrorCode::overlap_mismatch,
                    "ingested record (p=" + std::to_string(p) + ", gap=" + std::to_string(g) +
                        ") disagrees with the scanned table below " + std::to_string(scanned.limit));
      }
      ++matched;
      continue;
    }
    if (!merged.records.empty() &&
        (g <= merged.records.back().gap || p <= merged.records.back().p_start)) {
      throw Error(ErrorCode::overlap_mismatch,
                  "ingested record (p=" + std::to_string(p) + ", gap=" + std::to_string(g) +
                      ") does not extend the record sequence");
    }
    merged.records.push_back(GapRecord{g, p, k, RecordSource::ingested});
  }
  if (full_prefix && !starts.empty() && starts.back().value >= merged.limit) {
    if (matched != scanned.records.size()) {
      throw Error(ErrorCode::overlap_mismatch, "ingested sequence omits " +
                                                   std::to_string(scanned.records.size() - matched) +
                                                   " scanned record(s)");
    }
    merged.limit = starts.back().value + 1;
  }
  return merged;
}

}  // namespace firoozbakht
