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

// Resumable sweeps. A checkpoint is a single JSON document:
//
//   {
//     "schema_version": 1,
//     "check_id":       "<sweep name>",
//     "start":          <first number of the sweep>,
//     "limit":          <exclusive end of the sweep>,
//     "last_hi":        <every number below this has been sieved>,
//     "k_at_last_hi":   <pi(last_hi - 1)>,
//     "last_prime":     <largest prime below last_hi; its gap is still pending; 0 = sweep complete>,
//     "records":        [{"gap": g, "p_start": p, "k_start": k}, ...],
//     "stats":          { sweep-specific partial results }
//   }
//
// Resuming re-sieves the window just below last_hi and requires that its
// largest prime equal last_prime; when last_hi is small enough the index is
// recounted as well.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "firoozbakht/error.hpp"
#include "firoozbakht/records.hpp"
#include "firoozbakht/sieve.hpp"

namespace firoozbakht {

inline constexpr int kCheckpointSchemaVersion = 1;

struct CheckpointState {
  int schema_version = kCheckpointSchemaVersion;
  std::string check_id;
  std::uint64_t start = 2;
  std::uint64_t limit = 0;
  std::uint64_t last_hi = 0;
  std::uint64_t k_at_last_hi = 0;
  std::uint64_t last_prime = 0;
  std::vector<GapRecord> records;
  nlohmann::json stats = nlohmann::json::object();

  bool complete() const noexcept { return last_prime == 0 && last_hi >= limit; }
};

inline nlohmann::json to_json(const CheckpointState& s) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : s.records) {
    records.push_back({{"gap", r.gap}, {"p_start", r.p_start}, {"k_start", r.k_start}});
  }
  return {{"schema_version", s.schema_version},
          {"check_id", s.check_id},
          {"start", s.start},
          {"limit", s.limit},
          {"last_hi", s.last_hi},
          {"k_at_last_hi", s.k_at_last_hi},
          {"last_prime", s.last_prime},
          {"records", std::move(records)},
          {"stats", s.stats}};
}

inline CheckpointState checkpoint_from_json(const nlohmann::json& j) {
  try {
    CheckpointState s;
    s.schema_version = j.at("schema_version").get<int>();
    if (s.schema_version != kCheckpointSchemaVersion) {
      throw Error(ErrorCode::checkpoint_invalid,
                  "unsupported schema_version " + std::to_string(s.schema_version));
    }
    s.check_id = j.at("check_id").get<std::string>();
    s.start = j.at("start").get<std::uint64_t>();
    s.limit = j.at("limit").get<std::uint64_t>();
    s.last_hi = j.at("last_hi").get<std::uint64_t>();
    s.k_at_last_hi = j.at("k_at_last_hi").get<std::uint64_t>();
    s.last_prime = j.at("last_prime").get<std::uint64_t>();
    for (const auto& r : j.at("records")) {
      s.records.push_back(GapRecord{r.at("gap").get<std::uint64_t>(), r.at("p_start").get<std::uint64_t>(),
                                    r.at("k_start").get<std::uint64_t>(), RecordSource::scanned});
    }
    s.stats = j.at("stats");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::checkpoint_invalid, e.what());
  }
}

/// Written to a sibling temporary and renamed, so a crash never leaves a
/// truncated checkpoint behind.
inline void save_checkpoint(const std::filesystem::path& path, const CheckpointState& state) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out << to_json(state).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::io_error, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<CheckpointState> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::checkpoint_invalid, path.string() + " is not valid JSON");
  return checkpoint_from_json(j);
}

/// Stream position encoded by a checkpoint, after re-validating the overlap
/// window below last_hi.
inline StreamState resume_state(const Sieve& sieve, const CheckpointState& cp) {
  if (cp.last_hi < cp.start) throw Error(ErrorCode::checkpoint_invalid, "last_hi precedes start");
  if (cp.complete()) return StreamState{cp.last_hi, 0, cp.k_at_last_hi};
  if (cp.last_prime != 0) {
    if (cp.last_prime >= cp.last_hi || sieve.prev_prime(cp.last_hi) != cp.last_prime) {
      throw Error(ErrorCode::checkpoint_invalid, "last_prime " + std::to_string(cp.last_prime) +
                                                     " is not the largest prime below " +
                                                     std::to_string(cp.last_hi));
    }
  }
  if (cp.last_hi >= 3 && cp.last_hi - 1 <= sieve.config().recount_threshold &&
      sieve.pi(cp.last_hi - 1) != cp.k_at_last_hi) {
    throw Error(ErrorCode::checkpoint_invalid, "k_at_last_hi does not match a recount");
  }
  return StreamState{cp.last_hi, cp.last_prime, cp.k_at_last_hi};
}

struct SweepOptions {
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t checkpoint_every = 64;  // batches between writes
  // Called after every batch (and after any checkpoint write); progress
  // reporting, or an exception to abandon the sweep.
  std::function<void(const StreamState&)> on_batch;
};

/// Runs `sieve.sweep` over gap events with p in [lo, hi), optionally
/// persisting progress. `snapshot(CheckpointState&)` stores the caller's
/// partial results into records/stats; `restore(const CheckpointState&)`
/// loads them back before a resumed sweep continues.
template <class Map, class Reduce, class Snapshot, class Restore>
void run_sweep(const Sieve& sieve, std::string_view check_id, std::uint64_t lo, std::uint64_t hi,
               const SweepOptions& opts, Map&& map, Reduce&& reduce, Snapshot&& snapshot,
               Restore&& restore) {
  if (hi <= lo) return;
  StreamState state{lo, 0, lo <= 2 ? 0 : sieve.pi(lo - 1)};
  if (opts.checkpoint) {
    if (auto cp = load_checkpoint(*opts.checkpoint)) {
      if (cp->check_id != check_id || cp->start != lo || cp->limit != hi) {
        throw Error(ErrorCode::checkpoint_invalid,
                    "checkpoint belongs to " + cp->check_id + " [" + std::to_string(cp->start) + ", " +
                        std::to_string(cp->limit) + ")");
      }
      state = resume_state(sieve, *cp);
      restore(*cp);
      if (cp->complete()) return;
    }
  }
  auto save = [&](const StreamState& s) {
    CheckpointState cp;
    cp.check_id = std::string(check_id);
    cp.start = lo;
    cp.limit = hi;
    cp.last_hi = s.next_lo;
    cp.k_at_last_hi = s.k_before;
    cp.last_prime = s.carry;
    snapshot(cp);
    save_checkpoint(*opts.checkpoint, cp);
  };
  std::uint64_t batches = 0;
  const std::uint64_t every = opts.checkpoint_every == 0 ? 1 : opts.checkpoint_every;
  StreamState end = sieve.sweep(state, hi, std::forward<Map>(map), std::forward<Reduce>(reduce),
                                [&](const StreamState& s) {
                                  if (opts.checkpoint && ++batches % every == 0) save(s);
                                  if (opts.on_batch) opts.on_batch(s);
                                });
  if (opts.checkpoint) save(end);
}

}  // namespace firoozbakht
