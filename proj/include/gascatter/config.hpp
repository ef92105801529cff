#pragma once

// Run configuration for the CLI: one JSON document (preset, file or stdin)
// merged in layers, with command-line flags applied last. Unknown keys are
// rejected so config typos fail loudly instead of silently using defaults.
//
// Layering order (later wins): built-in defaults -> --preset -> --config
// file -> flags. The fully resolved config is echoed into every output
// table's provenance header and re-parses to an equivalent configuration.

#include <cmath>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "analysis.hpp"
#include "verify.hpp"

namespace gascatter {

using nlohmann::json;

// Configuration problems map to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

// Photon-number x coupling-phase scan payload for the contrast subcommand:
// report every (n, phi_J) whose best contrast extremum reaches `threshold`.
struct ScanSpec {
  int n_lo = 1, n_hi = 16;
  int phi_count = 41;          // phi_J samples on [-pi, pi], endpoints included
  double threshold = 0.999;
  double delta_lo = -3.0, delta_hi = 3.0;
};

struct RunConfig {
  // Baseline: resonant doublet in Gamma = 1 units (|J1| = |J2| = 1/sqrt(2),
  // v = 1), so minimal config documents only override what they study.
  RunConfig() {
    sweep.params.omega_e = 10.0;
    sweep.params.omega_f = 5.0;
    sweep.params.omega_c = 5.0;
    sweep.params.g = 1.0;
    sweep.params.j1_mag = sweep.params.j2_mag = 1.0 / std::sqrt(2.0);
  }

  SweepSpec sweep;               // parameters + axis payload (spectrum/sweep)
  ZeroSearchSpec zeros;          // find-zeros window; defaults to sweep lo/hi
  bool zeros_set = false;        // config carried an explicit "zeros" object
  std::optional<ScanSpec> scan;  // contrast: scan mode instead of one-n extrema
  SampleSpec verify;             // verification sample sizes + rng seed
  OutputFormat format = OutputFormat::Csv;
  std::string out;               // output path; empty writes to stdout
  bool strict = false;           // exit 3 when a table row hits a pole
};

namespace detail {

inline void require_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) { known = true; break; }
    if (!known) throw ConfigError(std::string(where) + ": unknown key \"" + it.key() + "\"");
  }
}

inline double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config: \"" + key + "\" must be a number");
  return v.get<double>();
}

inline int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config: \"" + key + "\" must be an integer");
  return v.get<int>();
}

inline bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config: \"" + key + "\" must be a boolean");
  return v.get<bool>();
}

inline std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config: \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline Regime parse_regime(const std::string& s) {
  if (s == "markov") return Regime::Markov;
  if (s == "exact") return Regime::Exact;
  throw ConfigError("config: regime must be \"markov\" or \"exact\", got \"" + s + "\"");
}

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "delta") return SweepAxis::Delta;
  if (s == "phi_J") return SweepAxis::PhiJ;
  if (s == "phi_plus") return SweepAxis::PhiPlus;
  if (s == "phi_minus") return SweepAxis::PhiMinus;
  if (s == "n") return SweepAxis::PhotonNumber;
  throw ConfigError(
      "config: axis must be one of delta, phi_J, phi_plus, phi_minus, n; got \"" + s + "\"");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("config: format must be \"csv\" or \"json\", got \"" + s + "\"");
}

inline const char* regime_name(Regime r) { return r == Regime::Markov ? "markov" : "exact"; }

inline const char* axis_config_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Delta: return "delta";
    case SweepAxis::PhiJ: return "phi_J";
    case SweepAxis::PhiPlus: return "phi_plus";
    case SweepAxis::PhiMinus: return "phi_minus";
    case SweepAxis::PhotonNumber: return "n";
  }
  return "delta";
}

// Merge one JSON document into `rc`. Only keys present in the document are
// touched, so layered application (preset, then file) behaves as override.
inline void apply_config_json(RunConfig& rc, const json& doc) {
  detail::require_keys(doc, "config",
                       {"params", "n", "regime", "axis", "lo", "hi", "count", "delta",
                        "pinned", "threads", "zeros", "scan", "format", "out", "strict",
                        "seed", "samples", "detunings"});

  if (doc.contains("params")) {
    const json& p = doc["params"];
    detail::require_keys(p, "config.params",
                         {"omega_e", "omega_f", "omega_c", "g", "j1_mag", "j2_mag", "phi1",
                          "phi2", "v", "tau"});
    SystemParams& sp = rc.sweep.params;
    if (p.contains("omega_e")) sp.omega_e = detail::as_number(p["omega_e"], "params.omega_e");
    if (p.contains("omega_f")) sp.omega_f = detail::as_number(p["omega_f"], "params.omega_f");
    if (p.contains("omega_c")) sp.omega_c = detail::as_number(p["omega_c"], "params.omega_c");
    if (p.contains("g")) sp.g = detail::as_number(p["g"], "params.g");
    if (p.contains("j1_mag")) sp.j1_mag = detail::as_number(p["j1_mag"], "params.j1_mag");
    if (p.contains("j2_mag")) sp.j2_mag = detail::as_number(p["j2_mag"], "params.j2_mag");
    if (p.contains("phi1")) sp.phi1 = detail::as_number(p["phi1"], "params.phi1");
    if (p.contains("phi2")) sp.phi2 = detail::as_number(p["phi2"], "params.phi2");
    if (p.contains("v")) sp.v = detail::as_number(p["v"], "params.v");
    if (p.contains("tau")) sp.tau = detail::as_number(p["tau"], "params.tau");
  }
  if (doc.contains("n")) rc.sweep.n = detail::as_int(doc["n"], "n");
  if (doc.contains("regime"))
    rc.sweep.regime = parse_regime(detail::as_string(doc["regime"], "regime"));
  if (doc.contains("axis")) rc.sweep.axis = parse_axis(detail::as_string(doc["axis"], "axis"));
  if (doc.contains("lo")) rc.sweep.lo = detail::as_number(doc["lo"], "lo");
  if (doc.contains("hi")) rc.sweep.hi = detail::as_number(doc["hi"], "hi");
  if (doc.contains("count")) rc.sweep.count = detail::as_int(doc["count"], "count");
  if (doc.contains("delta")) rc.sweep.delta = detail::as_number(doc["delta"], "delta");
  if (doc.contains("threads")) rc.sweep.threads = detail::as_int(doc["threads"], "threads");

  if (doc.contains("pinned")) {
    const json& q = doc["pinned"];
    if (q.is_null()) {
      rc.sweep.pinned.reset();
    } else {
      detail::require_keys(q, "config.pinned", {"phi_plus", "phi_minus", "phi_n"});
      if (!q.contains("phi_plus") || !q.contains("phi_minus"))
        throw ConfigError("config.pinned: needs both phi_plus and phi_minus");
      const double pp = detail::as_number(q["phi_plus"], "pinned.phi_plus");
      const double pm = detail::as_number(q["phi_minus"], "pinned.phi_minus");
      rc.sweep.pinned = q.contains("phi_n")
                            ? explicit_phases(pp, pm, detail::as_number(q["phi_n"], "pinned.phi_n"))
                            : explicit_phases(pp, pm);
    }
  }

  if (doc.contains("zeros")) {
    const json& z = doc["zeros"];
    detail::require_keys(z, "config.zeros", {"lo", "hi", "grid", "threshold"});
    if (z.contains("lo")) rc.zeros.lo = detail::as_number(z["lo"], "zeros.lo");
    if (z.contains("hi")) rc.zeros.hi = detail::as_number(z["hi"], "zeros.hi");
    if (z.contains("grid")) rc.zeros.grid = detail::as_int(z["grid"], "zeros.grid");
    if (z.contains("threshold"))
      rc.zeros.threshold = detail::as_number(z["threshold"], "zeros.threshold");
    rc.zeros_set = true;
  }

  if (doc.contains("scan")) {
    const json& s = doc["scan"];
    if (s.is_null()) {
      rc.scan.reset();
    } else {
      detail::require_keys(s, "config.scan",
                           {"n_lo", "n_hi", "phi_count", "threshold", "delta_lo", "delta_hi"});
      ScanSpec sc = rc.scan.value_or(ScanSpec{});
      if (s.contains("n_lo")) sc.n_lo = detail::as_int(s["n_lo"], "scan.n_lo");
      if (s.contains("n_hi")) sc.n_hi = detail::as_int(s["n_hi"], "scan.n_hi");
      if (s.contains("phi_count")) sc.phi_count = detail::as_int(s["phi_count"], "scan.phi_count");
      if (s.contains("threshold"))
        sc.threshold = detail::as_number(s["threshold"], "scan.threshold");
      if (s.contains("delta_lo")) sc.delta_lo = detail::as_number(s["delta_lo"], "scan.delta_lo");
      if (s.contains("delta_hi")) sc.delta_hi = detail::as_number(s["delta_hi"], "scan.delta_hi");
      rc.scan = sc;
    }
  }

  if (doc.contains("format"))
    rc.format = parse_format(detail::as_string(doc["format"], "format"));
  if (doc.contains("out")) rc.out = detail::as_string(doc["out"], "out");
  if (doc.contains("strict")) rc.strict = detail::as_bool(doc["strict"], "strict");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer())
      throw ConfigError("config: \"seed\" must be an integer");
    rc.verify.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("samples")) rc.verify.param_sets = detail::as_int(doc["samples"], "samples");
  if (doc.contains("detunings"))
    rc.verify.detunings = detail::as_int(doc["detunings"], "detunings");
}

// The effective find-zeros window: an explicit "zeros" object wins, else the
// sweep window with default grid density and threshold.
inline ZeroSearchSpec effective_zeros(const RunConfig& rc) {
  if (rc.zeros_set) return rc.zeros;
  ZeroSearchSpec zs = rc.zeros;
  zs.lo = rc.sweep.lo;
  zs.hi = rc.sweep.hi;
  return zs;
}

// Full echo of the resolved configuration. apply_config_json(defaults, echo)
// reconstructs an equivalent RunConfig (round-trip used by the provenance
// headers).
inline json resolved_config(const RunConfig& rc) {
  const SystemParams& sp = rc.sweep.params;
  json doc;
  doc["params"] = json{{"omega_e", sp.omega_e}, {"omega_f", sp.omega_f},
                       {"omega_c", sp.omega_c}, {"g", sp.g},
                       {"j1_mag", sp.j1_mag},   {"j2_mag", sp.j2_mag},
                       {"phi1", sp.phi1},       {"phi2", sp.phi2},
                       {"v", sp.v},             {"tau", sp.tau}};
  doc["n"] = rc.sweep.n;
  doc["regime"] = regime_name(rc.sweep.regime);
  doc["axis"] = axis_config_name(rc.sweep.axis);
  doc["lo"] = rc.sweep.lo;
  doc["hi"] = rc.sweep.hi;
  doc["count"] = rc.sweep.count;
  doc["delta"] = rc.sweep.delta;
  doc["threads"] = rc.sweep.threads;
  if (rc.sweep.pinned) {
    doc["pinned"] = json{{"phi_plus", rc.sweep.pinned->phi_plus},
                         {"phi_minus", rc.sweep.pinned->phi_minus},
                         {"phi_n", rc.sweep.pinned->phi_n}};
  }
  const ZeroSearchSpec zs = effective_zeros(rc);
  doc["zeros"] = json{{"lo", zs.lo}, {"hi", zs.hi}, {"grid", zs.grid},
                      {"threshold", zs.threshold}};
  if (rc.scan) {
    doc["scan"] = json{{"n_lo", rc.scan->n_lo},         {"n_hi", rc.scan->n_hi},
                       {"phi_count", rc.scan->phi_count}, {"threshold", rc.scan->threshold},
                       {"delta_lo", rc.scan->delta_lo}, {"delta_hi", rc.scan->delta_hi}};
  }
  doc["format"] = rc.format == OutputFormat::Csv ? "csv" : "json";
  doc["out"] = rc.out;
  doc["strict"] = rc.strict;
  doc["seed"] = rc.verify.seed;
  doc["samples"] = rc.verify.param_sets;
  doc["detunings"] = rc.verify.detunings;
  return doc;
}

}  // namespace gascatter
