#pragma once

// Deterministic table serialization for the CLI:
//  - CSV: provenance comment lines prefixed `#` (the resolved run config as
//    one JSON line), a header row, then one data row per record. Numbers are
//    printed with 17 significant digits so every double survives a
//    parse/print round trip; output is locale-independent with LF endings.
//  - JSON: a single top-level object {config, columns, rows}.
// Row cells are JSON values (number, string, bool or null), so every report
// type funnels through the same two writers.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "analysis.hpp"
#include "verify.hpp"

namespace gascatter::io {

using nlohmann::json;

// 17 significant digits: the shortest precision that reproduces any double
// bit-exactly on re-parse.
inline std::string format_number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Render one cell for CSV. Cell strings are enum-like names and never
// contain separators, so no quoting is needed.
inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  return v.get<std::string>();
}

inline void write_csv(std::ostream& os, const std::string& title, const json& config,
                      const std::vector<std::string>& columns, const json& rows) {
  os << "# gascatter " << title << "\n";
  os << "# config " << config.dump() << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << "\n";
  for (const json& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << "\n";
  }
}

inline void write_json(std::ostream& os, const json& config,
                       const std::vector<std::string>& columns, const json& rows) {
  json doc;
  doc["config"] = config;
  doc["columns"] = columns;
  doc["rows"] = rows;
  os << doc.dump(2) << "\n";
}

// --- row builders ----------------------------------------------------------

inline json spectrum_rows(const SpectrumTable& t) {
  json rows = json::array();
  for (const SpectrumRow& r : t.rows)
    rows.push_back(json::array({r.axis, r.t_minus, r.r_minus, r.t_conv, r.t_minus_rev,
                                r.r_minus_rev, r.t_conv_rev, r.i1, r.i2, r.lamb_shift,
                                r.eff_decay, int(r.pole)}));
  return rows;
}

inline const char* zero_kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::StaticZero: return "static";
    case ZeroKind::MovingZero: return "moving";
    case ZeroKind::MarkovChannelSuppression: return "whole_window";
  }
  return "unknown";
}

inline std::vector<std::string> zero_columns() {
  return {"kind", "delta_star", "m", "residual"};
}

inline json zero_rows(const std::vector<ZeroReport>& zeros) {
  json rows = json::array();
  for (const ZeroReport& z : zeros) {
    json row = json::array();
    row.push_back(zero_kind_name(z.kind));
    if (std::isnan(z.delta_star)) {  // whole-window report: no single location
      row.push_back(nullptr);
      row.push_back(nullptr);
    } else {
      row.push_back(z.delta_star);
      row.push_back(z.m);
    }
    row.push_back(z.residual);
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<std::string> extremum_columns() { return {"delta", "I2", "kind"}; }

inline json extremum_rows(const std::vector<ExtremumReport>& ext) {
  json rows = json::array();
  for (const ExtremumReport& e : ext)
    rows.push_back(json::array({e.delta, e.value, e.is_max ? "max" : "min"}));
  return rows;
}

inline std::vector<std::string> unity_columns() { return {"n", "phi_J", "delta", "I2"}; }

inline json unity_rows(const std::vector<UnityConversionHit>& hits) {
  json rows = json::array();
  for (const UnityConversionHit& h : hits)
    rows.push_back(json::array({h.n, h.phi_j, h.delta, h.i2}));
  return rows;
}

// Machine-readable verification report; `pass` aggregates all suites.
inline json verify_report(const std::vector<SuiteReport>& suites) {
  json arr = json::array();
  bool all = true;
  for (const SuiteReport& s : suites) {
    arr.push_back(json{{"suite", s.suite},
                       {"samples", s.samples},
                       {"skipped", s.skipped},
                       {"max_abs_error", s.max_abs_error},
                       {"tolerance", s.tolerance},
                       {"pass", s.pass}});
    all = all && s.pass;
  }
  return json{{"suites", arr}, {"pass", all}};
}

}  // namespace gascatter::io
