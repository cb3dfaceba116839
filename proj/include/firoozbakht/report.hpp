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

// Tabular output: every report becomes a Table with a fixed column order,
// written as CSV, JSON (array of objects keyed by column) or aligned text.

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "firoozbakht/bounds.hpp"
#include "firoozbakht/error.hpp"
#include "firoozbakht/precision.hpp"
#include "firoozbakht/records.hpp"
#include "firoozbakht/verify.hpp"

namespace firoozbakht {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Table&, const Table&) = default;

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
      throw Error(ErrorCode::domain_error, "row has " + std::to_string(row.size()) + " cells, expected " +
                                               std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
  }

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw Error(ErrorCode::domain_error, "no column '" + std::string(name) + "'");
  }

  const std::string& at(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
};

enum class Format { csv, json, text };

inline Format format_from_string(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  throw Error(ErrorCode::domain_error, "unknown format '" + std::string(s) + "'");
}

namespace detail {

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os << ',';
    os << csv_cell(cells[i]);
  }
  os << '\n';
}

// RFC 4180 style: quoted cells may contain commas, doubled quotes, newlines.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        cells.push_back(std::move(cell));
        lines.push_back(std::move(cells));
      }
      cells.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::malformed_line, "unterminated quote in CSV");
  if (any || !cell.empty()) {
    cells.push_back(std::move(cell));
    lines.push_back(std::move(cells));
  }
  return lines;
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  detail::write_csv_line(os, t.columns);
  for (const auto& r : t.rows) detail::write_csv_line(os, r);
  return os.str();
}

inline Table table_from_csv(std::string_view text) {
  auto lines = detail::parse_csv(text);
  if (lines.empty()) throw Error(ErrorCode::malformed_line, "CSV without header");
  Table t;
  t.columns = std::move(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != t.columns.size()) {
      throw Error(ErrorCode::malformed_line, "CSV line " + std::to_string(i + 1) + ": wrong cell count");
    }
    t.rows.push_back(std::move(lines[i]));
  }
  return t;
}

// JSON keeps every cell a string so round-trips are exact.
inline nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
    rows.push_back(std::move(obj));
  }
  return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

inline Table table_from_json(const nlohmann::json& j) {
  try {
    Table t;
    j.at("columns").get_to(t.columns);
    for (const auto& obj : j.at("rows")) {
      std::vector<std::string> row;
      for (const auto& c : t.columns) row.push_back(obj.at(c).get<std::string>());
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_line, std::string("table JSON: ") + e.what());
  }
}

inline std::string to_text(const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != 0) os << "  ";
      os << std::string(width[i] - cells[i].size(), ' ') << cells[i];
    }
    os << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

inline std::string render(const Table& t, Format f) {
  switch (f) {
    case Format::csv: return to_csv(t);
    case Format::json: return to_json(t).dump(2) + "\n";
    case Format::text: return to_text(t);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Fixture: rows of the published table of gap bounds.

struct Table1Row {
  std::uint64_t k;
  std::uint64_t p_k;
  std::uint64_t gap;
  // Printed values, kept only to compare against; f and ell are recomputed.
  std::string_view f_printed;
  std::string_view ell_printed;
};

inline constexpr std::array<Table1Row, 13> kTable1 = {{
    {6, 13, 4, "6.934", "4.014"},
    {9, 23, 6, "9.586", "6.696"},
    {30, 113, 14, "19.286", "17.621"},
    {217, 1327, 34, "44.709", "44.515"},
    {3385, 31397, 72, "96.188", "96.861"},
    {31545, 370261, 112, "150.529", "151.581"},
    {149689, 2010733, 148, "194.972", "196.142"},
    {1319945, 20831323, 210, "265.959", "267.137"},
    {1094330259, 25056082087, 456, "548.237", "549.389"},
    {94906079600, 2614941710599, 652, "787.801", "788.925"},
    {662221289043, 19581334192423, 766, "904.982", "906.097"},
    {6822667965940, 218209405436543, 906, "1055.966", "1057.071"},
    {49749629143526, 1693182318746371, 1132, "1193.418", "1194.516"},
}};

/// Enclosure narrow enough to fix the 3-decimal display, or the display of
/// the cap-precision midpoint if the enclosure keeps straddling.
template <class Eval>
std::pair<Interval, std::string> displayed(Eval&& eval, const PrecisionConfig& cfg) {
  for (unsigned bits = std::max(cfg.bits_start, 64u);; bits = std::min(cfg.bits_cap, bits * 2)) {
    Interval x = eval(bits);
    if (auto d = display3(x)) return {x, *d};
    if (bits >= cfg.bits_cap) return {x, display3_mid(x)};
  }
}

inline Table table1_report(const PrecisionConfig& cfg = {}) {
  Table t{{"k", "p_k", "gap", "f_lo", "f_hi", "f", "f_printed", "ell_lo", "ell_hi", "ell", "ell_printed", "match"},
          {}};
  for (const auto& row : kTable1) {
    auto [f, fd] = displayed([&](unsigned b) { return eval_f(row.k, row.p_k, b); }, cfg);
    auto [l, ld] = displayed([&](unsigned b) { return eval_ell(row.p_k, b); }, cfg);
    const bool match = fd == row.f_printed && ld == row.ell_printed;
    t.add_row({std::to_string(row.k), std::to_string(row.p_k), std::to_string(row.gap), f.lo().to_fixed(9, MPFR_RNDD),
               f.hi().to_fixed(9, MPFR_RNDU), fd, std::string(row.f_printed), l.lo().to_fixed(9, MPFR_RNDD),
               l.hi().to_fixed(9, MPFR_RNDU), ld, std::string(row.ell_printed), match ? "match" : "mismatch"});
  }
  return t;
}

inline bool table1_all_match(const Table& t) {
  const std::size_t c = t.column("match");
  for (const auto& r : t.rows) {
    if (r[c] != "match") return false;
  }
  return !t.rows.empty();
}

// ---------------------------------------------------------------------------
// Converters to the documented CSV schemas.

inline Table records_report(const RecordTable& table) {
  Table t{{"n", "gap", "p_start", "k_start", "source"}, {}};
  std::uint64_t n = 0;
  for (const auto& r : table.records) {
    t.add_row({std::to_string(++n), std::to_string(r.gap), std::to_string(r.p_start), std::to_string(r.k_start),
               std::string(to_string(r.source))});
  }
  return t;
}

inline RecordTable records_from_report(const Table& t, std::uint64_t limit) {
  RecordTable table;
  table.limit = limit;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const std::string src = t.at(i, "source");
    table.records.push_back(GapRecord{std::stoull(t.at(i, "gap")), std::stoull(t.at(i, "p_start")),
                                      std::stoull(t.at(i, "k_start")),
                                      src == "ingested" ? RecordSource::ingested : RecordSource::scanned});
  }
  return table;
}

/// One row per profile. Without k the f columns stay empty; below p = 29 the
/// condition columns do.
inline Table bounds_report(const std::vector<BoundProfile>& profiles) {
  Table t{{"k", "p_k", "f_lo", "f_hi", "ell_lo", "ell_hi", "c1", "c2", "c3", "c4"}, {}};
  for (const auto& p : profiles) {
    std::vector<std::string> row{std::to_string(p.k), std::to_string(p.p_k)};
    if (p.f) {
      row.push_back(p.f->lo().to_fixed(9, MPFR_RNDD));
      row.push_back(p.f->hi().to_fixed(9, MPFR_RNDU));
    } else {
      row.insert(row.end(), {"", ""});
    }
    row.push_back(p.ell.lo().to_fixed(9, MPFR_RNDD));
    row.push_back(p.ell.hi().to_fixed(9, MPFR_RNDU));
    for (std::size_t c = 0; c < 4; ++c) row.push_back(p.conditions ? display3_mid((*p.conditions)[c]) : "");
    t.add_row(std::move(row));
  }
  return t;
}

namespace detail {
// Witness enclosures are "[lo, hi]".
inline std::string display_of_enclosure(const std::string& s, unsigned bits) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return s;
  const auto comma = s.find(',');
  if (comma == std::string::npos) return s;
  Interval x(bits);
  const std::string lo = s.substr(1, comma - 1);
  const std::string hi = s.substr(comma + 2, s.size() - comma - 3);
  mpfr_set_str(x.lo().get(), lo.c_str(), 10, MPFR_RNDD);
  mpfr_set_str(x.hi().get(), hi.c_str(), 10, MPFR_RNDU);
  return display3_mid(x);
}
}  // namespace detail

inline Table near_miss_report(const VerdictReport& report) {
  Table t{{"k", "p_k", "q", "p_next", "f_k", "ell_k"}, {}};
  for (const auto& w : report.findings) {
    if (w.kind != witness_kind::near_miss && w.kind != witness_kind::ambiguous) continue;
    t.add_row({std::to_string(w.k), std::to_string(w.p_k), std::to_string(w.q), std::to_string(w.p_next),
               detail::display_of_enclosure(w.lhs, 128), detail::display_of_enclosure(w.rhs, 128)});
  }
  return t;
}

inline Table asymptotic_report(const VerdictReport& report) {
  Table t{{"decade", "max_abs_dev", "sandwich_ok"}, {}};
  for (const auto& d : report.decades) {
    t.add_row({std::to_string(d.decade), d.max_dev, d.sandwich_ok ? "true" : "false"});
  }
  return t;
}

/// k_n beside the coefficient of L^-(n-1) in each sufficient condition,
/// written as ell - c_0 - c_1/L - c_2/L^2 - c_3/L^3.
inline Table panaitopol_report(unsigned n) {
  const PanaitopolCoefficients pc = panaitopol_coefficients(n);
  static const std::array<std::array<const char*, 4>, 4> kCondition = {{
      {"1.17", "1", "1", "1"},
      {"", "3.83", "3.35", "3.35"},
      {"", "", "15.43", "12.65"},
      {"", "", "", "89.6"},
  }};
  Table t{{"n", "k_n", "c1", "c2", "c3", "c4"}, {}};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::string> row{std::to_string(i + 1), pc.terms[i].get_str()};
    for (std::size_t c = 0; c < 4; ++c) row.push_back(i < 4 ? kCondition[i][c] : "");
    t.add_row(std::move(row));
  }
  return t;
}

/// Short human summary of a verification report.
inline std::string summary_text(const VerdictReport& r) {
  std::ostringstream os;
  os << r.check_id << " [" << r.lo << ", " << r.hi << "): " << to_string(r.outcome) << '\n';
  for (const auto& [key, n] : r.counts) os << "  " << key << " = " << n << '\n';
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  std::size_t shown = 0;
  for (const auto& w : r.witnesses) {
    if (++shown > 20) {
      os << "  ... " << r.witnesses.size() - 20 << " more\n";
      break;
    }
    os << "  " << w.kind << ": k=" << w.k << " p_k=" << w.p_k << " p_next=" << w.p_next << " lhs=" << w.lhs
       << " rhs=" << w.rhs << (w.detail.empty() ? "" : " (" + w.detail + ")") << '\n';
  }
  if (!r.findings.empty()) os << "  findings: " << r.findings.size() << '\n';
  os << "  max_bits = " << r.max_bits << '\n';
  return os.str();
}

}  // namespace firoozbakht
