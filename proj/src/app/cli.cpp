// Copyright 2026 The vblast-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vblast/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "vblast/analytic.hpp"
#include "vblast/format.hpp"
#include "vblast/report.hpp"
#include "vblast/validation.hpp"
#include "vblast/version.hpp"

namespace vblast::cli {
namespace {

using nlohmann::json;
using report::Check;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_shortest(v);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

// --- shared run bookkeeping -------------------------------------------------

struct OutputSpec {
  std::string path;
  std::string format = "csv";
};

struct Run {
  std::string command;
  std::vector<std::string> argv;
  json config;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
};

std::filesystem::path manifest_path(const std::string& out) { return out + ".manifest.json"; }

json manifest_json(const Run& run, const std::string& data_file) {
  bool ok = true;
  json checks = json::array();
  for (const auto& c : run.checks) {
    ok = ok && c.passed;
    checks.push_back(c);
  }
  return json{{"command", run.command},
              {"argv", run.argv},
              {"config", run.config},
              {"seed", run.seed},
              {"tool_version", std::string(kVersion)},
              {"timestamp", utc_timestamp()},
              {"output", data_file},
              {"checks", checks},
              {"passed", ok}};
}

// Writes the rendered data (to a file plus manifest, or to `out`) and reports
// check failures through the exit code. `render` receives the manifest name
// to embed, empty when writing to `out`.
int publish(const Run& run, const OutputSpec& spec,
            const std::function<std::string(std::string_view)>& render, std::ostream& out,
            std::ostream& err) {
  if (spec.path.empty()) {
    out << render({});
  } else {
    const auto manifest = manifest_path(spec.path);
    write_file(spec.path, render(manifest.filename().string()));
    write_file(manifest, manifest_json(run, std::filesystem::path(spec.path).filename().string())
                             .dump(2) + "\n");
  }
  int code = kOk;
  for (const auto& c : run.checks) {
    if (!c.passed) {
      err << "check failed: " << c.name << " = " << format_shortest(c.measured) << " (expected "
          << c.bounds_text() << ")\n";
      code = kCheckFailure;
    }
  }
  return code;
}

int publish_table(const Run& run, const OutputSpec& spec, const Table& table, std::ostream& out,
                  std::ostream& err) {
  return publish(
      run, spec,
      [&](std::string_view manifest) {
        return spec.format == "json" ? render_json(table, manifest).dump(2) + "\n"
                                     : render_csv(table, manifest);
      },
      out, err);
}

void add_output_options(CLI::App* cmd, OutputSpec& spec) {
  cmd->add_option("--out", spec.path, "Output file (default: stdout, no manifest)");
  cmd->add_option("--format", spec.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int checked_rx(int n_rx) {
  if (n_rx < 2 || n_rx > analytic::kMaxRx) {
    throw UsageError("--rx must be in [2, " + std::to_string(analytic::kMaxRx) + "]");
  }
  return n_rx;
}

ModulationSpec parse_modulation(const std::string& text) {
  try {
    return ModulationSpec::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// --- curves -----------------------------------------------------------------

struct CurvesArgs {
  int n_rx = 2;
  std::string snr_db = "0:30:1";
  std::string modulation = "bpsk";
  std::string outage_db;
  bool alt_denominator = false;
  OutputSpec output;
};

int cmd_curves(const CurvesArgs& args, Run run, std::ostream& out, std::ostream& err) {
  CurvesOptions opt;
  opt.n_rx = checked_rx(args.n_rx);
  opt.snr_db = parse_snr_range(args.snr_db);
  opt.modulation = parse_modulation(args.modulation);
  if (!args.outage_db.empty()) opt.outage_db = parse_real_list(args.outage_db);
  opt.alt_denominator = args.alt_denominator;
  if (opt.alt_denominator && !(opt.n_rx == 2 && opt.modulation.is_bpsk())) {
    throw UsageError("--show-alt-denominator applies to --rx 2 --modulation bpsk only");
  }

  const auto table = curves_table(opt);
  run.config = {{"rx", opt.n_rx},
                {"snr_db", args.snr_db},
                {"modulation", opt.modulation.to_string()},
                {"outage_db", opt.outage_db},
                {"show_alt_denominator", opt.alt_denominator},
                {"format", args.output.format}};

  double worst_range = 0.0;
  double worst_order = 0.0;
  for (const auto& row : table.rows) {
    // Columns 2.. hold probabilities; ber1, ber2, bler sit right after the outage block.
    const std::size_t ber1 = 2 + 2 * opt.outage_db.size();
    for (std::size_t k = 2; k < ber1 + 3; ++k) {
      worst_range = std::max(worst_range, row[k] < 0.0 ? -row[k] : std::max(0.0, row[k] - 1.0));
    }
    worst_order = std::max(worst_order, std::max(row[ber1], row[ber1 + 1]) - row[ber1 + 2]);
  }
  run.checks.push_back(Check::at_most("probabilities_outside_unit_interval", 0, worst_range, 0.0));
  run.checks.push_back(Check::at_most("step_ber_exceeds_bler", 0, worst_order, 1e-15));
  return publish_table(run, args.output, table, out, err);
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  int n_rx = 2;
  std::string snr_db = "0:20:5";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string modulation = "bpsk";
  std::string mode = "genie";
  std::string estimator = "auto";
  unsigned workers = 1;
  OutputSpec output;
};

int cmd_simulate(const SimulateArgs& args, Run run, std::ostream& out, std::ostream& err) {
  mc::SimConfig cfg;
  cfg.dims = {checked_rx(args.n_rx), 2};
  cfg.gamma0_db = parse_snr_range(args.snr_db);
  if (args.trials == 0) throw UsageError("--trials must be >= 1");
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.modulation = parse_modulation(args.modulation);
  cfg.workers = args.workers;
  try {
    cfg.mode = detector::parse_cancellation_mode(args.mode);
    cfg.estimator = args.estimator == "auto"
                        ? (cfg.modulation.is_bpsk() ? mc::Estimator::symbol_level
                                                    : mc::Estimator::semi_analytic)
                        : mc::parse_estimator(args.estimator);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto result = mc::run_simulation(cfg);
  run.seed = cfg.seed;
  run.config = {{"rx", args.n_rx},
                {"snr_db", args.snr_db},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"modulation", cfg.modulation.to_string()},
                {"mode", std::string(detector::to_string(cfg.mode))},
                {"estimator", std::string(mc::to_string(cfg.estimator))},
                {"workers", cfg.workers},
                {"format", args.output.format}};

  std::uint64_t skipped = 0;
  double ci_violation = 0.0;
  for (const auto& p : result.points) {
    skipped += p.skipped;
    for (const auto* est : {&p.ber[0], &p.ber[1], &p.bler}) {
      ci_violation = std::max({ci_violation, est->ci.lower - est->value, est->value - est->ci.upper});
    }
  }
  run.checks.push_back(
      Check::at_most("degenerate_channels_skipped", 0, static_cast<double>(skipped), 0.0));
  run.checks.push_back(Check::at_most("estimate_outside_interval", 0, ci_violation, 0.0));
  return publish_table(run, args.output, simulate_table(result), out, err);
}

// --- validate ---------------------------------------------------------------

struct ValidateArgs {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string criteria;
  bool inject_fault = false;
  OutputSpec output;
};

int cmd_validate(const ValidateArgs& args, Run run, std::ostream& out, std::ostream& err) {
  if (args.trials == 0) throw UsageError("--trials must be >= 1");
  if (args.workers == 0) throw UsageError("--workers must be >= 1");
  std::vector<int> criteria;
  if (!args.criteria.empty()) {
    for (double v : parse_real_list(args.criteria)) {
      if (v != std::floor(v) || v < 1 || v > validation::kCriteria) {
        throw UsageError("--criteria entries must be integers in [1, 10]");
      }
      criteria.push_back(static_cast<int>(v));
    }
  }
  validation::Options opt;
  opt.trials = args.trials;
  opt.seed = args.seed;
  opt.workers = args.workers;
  opt.inject_fault = args.inject_fault;

  const auto rep = validation::run_validation(opt, criteria);
  run.seed = opt.seed;
  run.config = {{"trials", opt.trials},
                {"seed", opt.seed},
                {"workers", opt.workers},
                {"criteria", criteria},
                {"inject_fault", opt.inject_fault},
                {"format", args.output.format}};
  run.checks = rep.checks;

  const auto render = [&](std::string_view manifest) -> std::string {
    if (args.output.format == "json") return json(rep).dump(2) + "\n";
    std::string csv;
    if (!manifest.empty()) csv += "# manifest: " + std::string(manifest) + "\n";
    csv += "criterion,name,measured,lower,upper,passed\n";
    for (const auto& c : rep.checks) {
      csv += std::to_string(c.criterion) + "," + c.name + "," + format_number(c.measured) + "," +
             (c.lower ? format_number(*c.lower) : "") + "," +
             (c.upper ? format_number(*c.upper) : "") + "," + (c.passed ? "1" : "0") + "\n";
    }
    return csv;
  };
  return publish(run, args.output, render, out, err);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> parse_snr_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parse_real(parts[0])};
  if (parts.size() != 3) throw UsageError("SNR range must be 'start:stop:step' or a single value");

  const double first = parse_real(parts[0]);
  const double last = parse_real(parts[1]);
  const double step = parse_real(parts[2]);
  if (!(step > 0.0)) throw UsageError("SNR step must be > 0");
  if (last < first) throw UsageError("SNR range stop must be >= start");
  const double span = (last - first) / step;
  if (span > 1e6) throw UsageError("SNR range has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = first + static_cast<double>(k) * step;
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Table curves_table(const CurvesOptions& options) {
  Table t;
  t.columns = {"snr_db", "gamma0"};
  for (double th : options.outage_db) {
    t.columns.push_back("f1_" + format_shortest(th) + "db");
    t.columns.push_back("f2_" + format_shortest(th) + "db");
  }
  for (const char* c : {"ber1", "ber2", "bler", "ber1_asym", "ber2_asym"}) t.columns.emplace_back(c);
  if (options.alt_denominator) t.columns.emplace_back("ber2_alt_denominator");

  const auto& coeffs = analytic::shared_coefficients(options.n_rx);
  for (double db : options.snr_db) {
    const double g = db_to_linear(db);
    std::vector<double> row = {db, g};
    for (double th : options.outage_db) {
      const double x = db_to_linear(th) / g;
      row.push_back(analytic::outage_cdf_step1(coeffs, x));
      row.push_back(analytic::outage_cdf_step2(options.n_rx, x));
    }
    const auto p = analytic::performance_point(options.modulation, options.n_rx, g);
    row.insert(row.end(), {p.pe_step1, p.pe_step2, p.bler, p.pe_step1_asymptote,
                           p.pe_step2_asymptote});
    if (options.alt_denominator) row.push_back(analytic::bpsk_2x2_step2_alt_denominator(g));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table simulate_table(const mc::SimResult& result) {
  Table t;
  t.columns = {"snr_db",  "trials",  "ber1_mc", "ber1_lo",       "ber1_hi",       "ber2_mc",
               "ber2_lo", "ber2_hi", "bler_mc", "bler_lo",       "bler_hi",       "ber1_analytic",
               "ber2_analytic", "bler_analytic", "skipped"};
  const auto& cfg = result.config;
  for (const auto& p : result.points) {
    const auto an = analytic::performance_point(cfg.modulation, cfg.dims.n_rx, p.gamma0);
    t.rows.push_back({p.gamma0_db, static_cast<double>(p.trials), p.ber[0].value,
                      p.ber[0].ci.lower, p.ber[0].ci.upper, p.ber[1].value, p.ber[1].ci.lower,
                      p.ber[1].ci.upper, p.bler.value, p.bler.ci.lower, p.bler.ci.upper,
                      an.pe_step1, an.pe_step2, an.bler, static_cast<double>(p.skipped)});
  }
  return t;
}

std::string render_csv(const Table& table, std::string_view manifest) {
  std::string out;
  if (!manifest.empty()) out += "# manifest: " + std::string(manifest) + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

json render_json(const Table& table, std::string_view manifest) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_number(row[c]);
    rows.push_back(std::move(obj));
  }
  return json{{"manifest", manifest.empty() ? json() : json(std::string(manifest))},
              {"columns", table.columns},
              {"rows", rows}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered V-BLAST (n x 2, ZF-MRC) performance: closed forms and Monte Carlo"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CurvesArgs curves;
  auto* c = app.add_subcommand("curves", "Closed-form outage, BER and BLER over an SNR sweep");
  c->add_option("--rx", curves.n_rx, "Receive antennas n (>= 2)");
  c->add_option("--snr-db", curves.snr_db, "Average SNR sweep start:stop:step in dB");
  c->add_option("--modulation", curves.modulation,
                "bpsk | bfsk | coherent:<alpha>,<beta> | noncoherent:<alpha>,<beta>");
  c->add_option("--outage-db", curves.outage_db, "Comma-separated outage thresholds in dB");
  c->add_flag("--show-alt-denominator", curves.alt_denominator,
              "Add the 2x2 BPSK step-2 variant with a (4+g)^2 denominator");
  add_output_options(c, curves.output);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo BER/BLER with 95% intervals");
  s->add_option("--rx", sim.n_rx, "Receive antennas n (>= 2)");
  s->add_option("--snr-db", sim.snr_db, "Average SNR sweep start:stop:step in dB");
  s->add_option("--trials", sim.trials, "Trials per SNR point");
  s->add_option("--seed", sim.seed, "Master seed");
  s->add_option("--modulation", sim.modulation,
                "bpsk | bfsk | coherent:<alpha>,<beta> | noncoherent:<alpha>,<beta>");
  s->add_option("--mode", sim.mode, "genie | propagate")->check(CLI::IsMember({"genie", "propagate"}));
  s->add_option("--estimator", sim.estimator, "symbol | semianalytic | auto")
      ->check(CLI::IsMember({"symbol", "semianalytic", "auto"}));
  s->add_option("--workers", sim.workers, "Worker threads (results do not depend on it)");
  add_output_options(s, sim.output);

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Run the acceptance checks and report");
  v->add_option("--trials", val.trials, "Monte Carlo trials per estimate");
  v->add_option("--seed", val.seed, "Master seed");
  v->add_option("--workers", val.workers, "Worker threads");
  v->add_option("--criteria", val.criteria, "Comma-separated subset of criteria 1-10");
  v->add_flag("--inject-fault", val.inject_fault,
              "Perturb the first step-1 CDF coefficient by 1e-3 (checks must fail)");
  val.output.format = "json";
  add_output_options(v, val.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Run run;
  for (int i = 0; i < argc; ++i) run.argv.emplace_back(argv[i]);
  try {
    if (c->parsed()) {
      run.command = "curves";
      return cmd_curves(curves, run, out, err);
    }
    if (s->parsed()) {
      run.command = "simulate";
      return cmd_simulate(sim, run, out, err);
    }
    run.command = "validate";
    return cmd_validate(val, run, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace vblast::cli
