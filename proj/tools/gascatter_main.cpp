// gascatter: single-photon scattering spectra, frequency-conversion
// probabilities and nonreciprocity contrasts for a three-level emitter
// coupled to a 1D waveguide at two points and to an n-photon resonator.
//
// Subcommands:
//   spectrum    detuning-axis table (T_minus ... I2, lamb_shift, eff_decay)
//   sweep       the same table along any axis (delta, phi_J, phi_plus,
//               phi_minus, n)
//   contrast    contrast extrema for one photon number, or an (n, phi_J)
//               scan for near-unity contrast when the config has "scan"
//   find-zeros  locate and classify conversion zeros on a detuning window
//   verify      randomized self-checks: flux conservation, equivalence with
//               an independent boundary-matching solver, reciprocity,
//               phase-gauge invariance, two-level reduction
//
// Configuration is layered: built-in defaults, then --preset, then --config
// (file or "-" for stdin), then flags. GASCATTER_THREADS provides the
// fallback worker count when neither config nor --threads says otherwise.
//
// Exit codes: 0 success; 1 verification failure; 2 configuration error;
// 3 pole row encountered with --strict.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gascatter/gascatter.hpp"

namespace {

using gascatter::ConfigError;
using gascatter::json;
using gascatter::OutputFormat;
using gascatter::RunConfig;

struct CliOptions {
  std::string config_path;  // "-" reads the document from stdin
  std::string preset;
  std::string format;       // empty: keep config/default
  std::string out;          // empty: keep config/default (stdout)
  int threads = 0;          // 0: not given on the command line
  long long seed = -1;      // negative: not given
  bool strict = false;
};

void add_common_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file, or \"-\" for stdin");
  cmd->add_option("--preset", o.preset, "built-in recipe (fig2a..fig6n16); applied before --config");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output file path (default: stdout)");
  cmd->add_option("--threads", o.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "rng seed for the verify suites")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--strict", o.strict, "exit 3 if any table row hits a scattering pole");
}

json read_config_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
}

RunConfig load_config(const CliOptions& o) {
  RunConfig rc;
  bool threads_configured = false;
  auto merge = [&](const json& doc) {
    if (doc.contains("threads")) threads_configured = true;
    apply_config_json(rc, doc);
  };
  if (!o.preset.empty()) merge(gascatter::preset_config(o.preset));
  if (!o.config_path.empty()) merge(read_config_document(o.config_path));

  if (o.threads > 0) {
    rc.sweep.threads = o.threads;
  } else if (!threads_configured) {
    if (const char* env = std::getenv("GASCATTER_THREADS"); env && *env) {
      char* end = nullptr;
      const long t = std::strtol(env, &end, 10);
      if (end && *end == '\0' && t >= 1)
        rc.sweep.threads = int(t);
      else
        throw ConfigError(std::string("GASCATTER_THREADS is not a positive integer: ") + env);
    }
  }
  if (!o.format.empty()) rc.format = gascatter::parse_format(o.format);
  if (!o.out.empty()) rc.out = o.out;
  if (o.seed >= 0) rc.verify.seed = std::uint64_t(o.seed);
  if (o.strict) rc.strict = true;
  return rc;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << text;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

void emit_table(const RunConfig& rc, const std::string& title,
                const std::vector<std::string>& columns, const json& rows) {
  std::ostringstream os;
  const json cfg = resolved_config(rc);
  if (rc.format == OutputFormat::Csv)
    gascatter::io::write_csv(os, title, cfg, columns, rows);
  else
    gascatter::io::write_json(os, cfg, columns, rows);
  write_text(rc.out, os.str());
}

gascatter::ScatterContext context_of(const RunConfig& rc) {
  return rc.sweep.pinned
             ? gascatter::make_context(rc.sweep.params, rc.sweep.n, *rc.sweep.pinned)
             : gascatter::make_context(rc.sweep.params, rc.sweep.n);
}

int cmd_table(const RunConfig& rc, const std::string& title) {
  const gascatter::SpectrumTable table = gascatter::sweep(rc.sweep);
  emit_table(rc, title, table.columns, gascatter::io::spectrum_rows(table));
  bool pole = false;
  for (const gascatter::SpectrumRow& row : table.rows) pole = pole || row.pole;
  if (rc.strict && pole) {
    std::cerr << "gascatter: pole row encountered under --strict\n";
    return 3;
  }
  return 0;
}

int cmd_find_zeros(const RunConfig& rc) {
  const std::vector<gascatter::ZeroReport> zeros = gascatter::find_conversion_zeros(
      context_of(rc), rc.sweep.regime, gascatter::effective_zeros(rc));
  emit_table(rc, "find-zeros", gascatter::io::zero_columns(), gascatter::io::zero_rows(zeros));
  return 0;
}

int cmd_contrast(const RunConfig& rc) {
  if (rc.scan) {
    const gascatter::ScanSpec& s = *rc.scan;
    const std::vector<gascatter::UnityConversionHit> hits = gascatter::find_unity_conversion(
        rc.sweep.params, rc.sweep.regime, s.n_lo, s.n_hi, s.phi_count, s.threshold,
        s.delta_lo, s.delta_hi);
    emit_table(rc, "contrast-scan", gascatter::io::unity_columns(),
               gascatter::io::unity_rows(hits));
    return 0;
  }
  const std::vector<gascatter::ExtremumReport> ext = gascatter::find_contrast_extrema(
      context_of(rc), rc.sweep.regime, rc.sweep.lo, rc.sweep.hi);
  emit_table(rc, "contrast", gascatter::io::extremum_columns(),
             gascatter::io::extremum_rows(ext));
  return 0;
}

int cmd_verify(const RunConfig& rc) {
  const std::vector<gascatter::SuiteReport> suites = gascatter::verify_all(rc.verify);
  json report = gascatter::io::verify_report(suites);
  report["config"] = resolved_config(rc);
  write_text(rc.out, report.dump(2) + "\n");  // always machine-readable JSON
  return report["pass"].get<bool>() ? 0 : 1;
}

int dispatch(const std::string& name, const CliOptions& o) {
  const RunConfig rc = load_config(o);
  if (name == "verify") return cmd_verify(rc);
  if (name == "spectrum") {
    if (rc.sweep.axis != gascatter::SweepAxis::Delta)
      throw ConfigError("spectrum: axis must be \"delta\" (use the sweep subcommand instead)");
    return cmd_table(rc, "spectrum");
  }
  if (name == "sweep") return cmd_table(rc, "sweep");
  if (name == "find-zeros") return cmd_find_zeros(rc);
  if (name == "contrast") return cmd_contrast(rc);
  throw std::logic_error("unreachable subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "single-photon scattering, frequency conversion and nonreciprocity for a "
      "two-point-coupled three-level emitter with an n-photon resonator"};
  app.require_subcommand(1);

  CliOptions opt;
  const char* names[] = {"spectrum", "sweep", "contrast", "find-zeros", "verify"};
  const char* briefs[] = {
      "detuning-axis scattering table",
      "scattering table along one axis (delta, phi_J, phi_plus, phi_minus, n)",
      "contrast extrema, or an (n, phi_J) near-unity scan with config \"scan\"",
      "locate and classify conversion zeros on a detuning window",
      "randomized self-checks; emits a JSON report"};
  for (int i = 0; i < 5; ++i) add_common_options(app.add_subcommand(names[i], briefs[i]), opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse diagnostic
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opt);
  } catch (const ConfigError& e) {
    std::cerr << "gascatter: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gascatter: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gascatter: error: " << e.what() << "\n";
    return 2;
  }
}
