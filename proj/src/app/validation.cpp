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

#include "vblast/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "vblast/cli.hpp"
#include "vblast/format.hpp"
#include "vblast/montecarlo.hpp"
#include "vblast/version.hpp"

namespace vblast::validation {
namespace {

using analytic::OrderedSnrCoefficients;
using report::Check;
using Wide = boost::multiprecision::cpp_bin_float_50;

constexpr double kIdentityRel = 1e-12;
constexpr double kQuadratureAbs = 1e-7;
constexpr double kQuadratureTol = 1e-10;
constexpr double kKsCritical = 1.63;
constexpr double kSeLimit = 3.0;

std::string label(std::string_view head, const ModulationSpec& mod, int n) {
  return std::string(head) + "_" + mod.name + "_n" + std::to_string(n);
}

double rel_err(double value, double reference) {
  if (value == reference) return 0.0;
  return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  }
  return out;
}

std::vector<double> db_grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + 1e-9; ++k) out.push_back(db_to_linear(lo + k * step));
  return out;
}

// Tables under test; the oracles never read these.
struct Engine {
  explicit Engine(const Options& o) : options(o) {}

  const OrderedSnrCoefficients& table(int n) {
    if (!options.inject_fault) return analytic::shared_coefficients(n);
    auto& slot = perturbed[static_cast<std::size_t>(n)];
    if (!slot) slot = perturbed_coefficients(n, kFaultDelta);
    return *slot;
  }

  double cdf(int step, int n, double x) {
    return step == 1 ? analytic::outage_cdf_step1(table(n), x) : analytic::outage_cdf_step2(n, x);
  }

  double ber(int step, const ModulationSpec& mod, int n, double g) {
    return step == 1 ? analytic::ber_step1(mod, table(n), g) : analytic::ber_step2(mod, table(n), g);
  }

  double bler(const ModulationSpec& mod, int n, double g) { return analytic::bler(mod, table(n), g); }

  Options options;
  std::array<std::optional<OrderedSnrCoefficients>, analytic::kMaxRx + 1> perturbed;
};

mc::SimConfig base_config(const Options& o, int n, double db) {
  mc::SimConfig c;
  c.dims = {n, 2};
  c.gamma0_db = {db};
  c.trials = o.trials;
  c.seed = o.seed;
  c.workers = o.workers;
  return c;
}

Check no_skips(int criterion, std::uint64_t skipped) {
  return Check::at_most("degenerate_channels_skipped", criterion, static_cast<double>(skipped), 0.0);
}

// --- 1: algebraic identities ------------------------------------------------

std::vector<Check> algebraic_identities(Engine& e) {
  std::vector<Check> out;
  const auto xs = log_grid(0.01, 20.0, 121);

  for (int n = 2; n <= 5; ++n) {
    double worst = 0.0;
    for (double x : xs) {
      worst = std::max(worst, rel_err(analytic::outage_cdf_step2_series(e.table(n), x),
                                      analytic::outage_cdf_step2(n, x)));
    }
    out.push_back(Check::at_most("step2_cdf_product_vs_series_n" + std::to_string(n), 1, worst,
                                 kIdentityRel, "max relative gap, x in [0.01, 20]"));
  }
  for (int n = 2; n <= 5; ++n) {
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, rel_err(e.cdf(1, n, x), step1_cdf_oracle(n, x)));
    out.push_back(Check::at_most("step1_cdf_vs_defining_sums_n" + std::to_string(n), 1, worst,
                                 kIdentityRel, "max relative gap, x in [0.01, 20]"));
  }

  const auto gammas = db_grid(-10.0, 40.0, 2.5);
  const auto bfsk = ModulationSpec::bfsk();
  const auto bpsk = ModulationSpec::bpsk();
  struct Literal {
    const char* name;
    std::function<double(double)> engine;
    std::function<double(double)> literal;
  };
  const std::vector<Literal> literals = {
      {"bfsk_step2_general_vs_2x2",
       [&](double g) { return e.ber(2, bfsk, 2, g); }, bfsk_2x2_step2_literal},
      {"bpsk_step1_general_vs_2x2",
       [&](double g) { return e.ber(1, bpsk, 2, g); }, bpsk_2x2_step1_literal},
      {"bpsk_step2_general_vs_2x2",
       [&](double g) { return e.ber(2, bpsk, 2, g); }, bpsk_2x2_step2_literal},
      {"bfsk_asymptote1_n2", [&](double g) { return analytic::ber_asymptote(1, bfsk, 2, g); },
       [](double g) { return 1.0 / (2.0 * g); }},
      {"bfsk_asymptote2_n2", [&](double g) { return analytic::ber_asymptote(2, bfsk, 2, g); },
       [](double g) { return 4.0 / (g * g); }},
      {"bpsk_asymptote1_n2", [&](double g) { return analytic::ber_asymptote(1, bpsk, 2, g); },
       [](double g) { return 1.0 / (8.0 * g); }},
      {"bpsk_asymptote2_n2", [&](double g) { return analytic::ber_asymptote(2, bpsk, 2, g); },
       [](double g) { return 3.0 / (8.0 * g * g); }},
  };
  for (const auto& l : literals) {
    double worst = 0.0;
    for (double g : gammas) worst = std::max(worst, rel_err(l.engine(g), l.literal(g)));
    out.push_back(Check::at_most(l.name, 1, worst, kIdentityRel,
                                 "max relative gap, gamma0 in [-10, 40] dB"));
  }
  return out;
}

// --- 2: quadrature oracle ---------------------------------------------------

std::vector<Check> quadrature_oracle(Engine& e) {
  std::vector<Check> out;
  for (const auto& mod : {ModulationSpec::bfsk(), ModulationSpec::bpsk()}) {
    for (int step = 1; step <= 2; ++step) {
      for (int n = 2; n <= 4; ++n) {
        double worst = 0.0;
        std::string detail;
        for (double g : {1.0, 10.0, 100.0}) {
          const auto oracle_cdf = [n, step](double x) {
            return step == 1 ? step1_cdf_oracle(n, x) : step2_cdf_oracle(n, x);
          };
          const double gap = std::abs(e.ber(step, mod, n, g) - quadrature_ber(mod, g, oracle_cdf));
          if (gap >= worst) {
            worst = gap;
            detail = "worst at gamma0 = " + format_shortest(g);
          }
        }
        out.push_back(Check::at_most(label("closed_form_vs_quadrature_step" + std::to_string(step), mod, n),
                                     2, worst, kQuadratureAbs, detail));
      }
    }
  }
  // The alternative (4+γ₀)² denominator must be rejected by the same oracle.
  const auto bpsk = ModulationSpec::bpsk();
  const double quad = quadrature_ber(bpsk, 10.0, [](double x) { return step2_cdf_oracle(2, x); });
  out.push_back(Check::at_least("alt_denominator_rejected_bpsk_n2", 2,
                                std::abs(analytic::bpsk_2x2_step2_alt_denominator(10.0) - quad),
                                kQuadratureAbs, "gap to quadrature at gamma0 = 10"));
  return out;
}

// --- 3: SNR distribution ----------------------------------------------------

std::vector<Check> snr_distribution(Engine& e) {
  std::vector<Check> out;
  std::uint64_t skipped = 0;
  for (int n = 2; n <= 3; ++n) {
    const auto samples = mc::sample_normalized_snrs(base_config(e.options, n, 0.0));
    skipped += samples.skipped;
    for (int step = 1; step <= 2; ++step) {
      const auto& v = samples.normalized[static_cast<std::size_t>(step - 1)];
      const double d = mc::ks_distance(v, [&](double x) { return e.cdf(step, n, x); });
      const double limit = kKsCritical / std::sqrt(static_cast<double>(v.size()));
      out.push_back(Check::at_most("ks_step" + std::to_string(step) + "_n" + std::to_string(n), 3, d,
                                   limit, std::to_string(v.size()) + " samples"));
    }
  }
  out.push_back(no_skips(3, skipped));
  return out;
}

// --- 4, 5, 8: per-trial audits ----------------------------------------------

std::vector<Check> snr_identity(Engine& e) {
  std::vector<Check> out;
  std::uint64_t skipped = 0;
  for (int n = 2; n <= 3; ++n) {
    const auto audit = mc::audit_traces(base_config(e.options, n, 10.0));
    skipped += audit.skipped;
    out.push_back(Check::at_most("snr_identity_max_rel_n" + std::to_string(n), 4,
                                 audit.max_snr_identity_error, kIdentityRel,
                                 std::to_string(audit.trials) + " trials"));
  }
  out.push_back(no_skips(4, skipped));
  return out;
}

std::vector<Check> noise_independence(Engine& e) {
  std::vector<Check> out;
  std::uint64_t skipped = 0;
  for (int n = 2; n <= 3; ++n) {
    const auto cfg = base_config(e.options, n, 10.0);
    const std::string suffix = "_n" + std::to_string(n);
    const auto audit = mc::audit_traces(cfg);
    out.push_back(Check::at_most("weight_overlap_max" + suffix, 5, audit.max_weight_overlap, 1e-10));

    const auto zf = mc::estimate_noise_crosscorr(cfg, mc::CombiningRule::zf_mrc);
    const auto eg = mc::estimate_noise_crosscorr(cfg, mc::CombiningRule::equal_gain);
    skipped += audit.skipped + zf.skipped + eg.skipped;
    const double n_trials = static_cast<double>(zf.trials);
    const double zf_cross = std::abs(zf.cross) / zf.sigma0_sq;
    out.push_back(Check::at_most("noise_crosscorr" + suffix, 5, zf_cross, 4.0 / std::sqrt(n_trials),
                                 "|mean xi1* xi2| / sigma0^2"));
    for (std::size_t i = 0; i < 2; ++i) {
      out.push_back(Check::at_most("noise_power_step" + std::to_string(i + 1) + suffix, 5,
                                   std::abs(zf.mean_power[i] / zf.sigma0_sq - 1.0), 0.01,
                                   "relative deviation of mean |xi|^2 from sigma0^2"));
    }
    out.push_back(Check::at_least("equal_gain_crosscorr_ratio" + suffix, 5,
                                  std::abs(eg.cross) / std::max(std::abs(zf.cross), 1e-300), 5.0,
                                  "equal-gain over ZF-MRC cross-correlation"));
  }
  out.push_back(no_skips(5, skipped));
  return out;
}

// --- 6: BER agreement -------------------------------------------------------

std::vector<Check> ber_agreement(Engine& e) {
  std::vector<Check> out;
  std::uint64_t skipped = 0;
  const auto add = [&](const mc::SimResult& r, const std::string& head) {
    const auto& mod = r.config.modulation;
    const int n = r.config.dims.n_rx;
    for (const auto& p : r.points) {
      skipped += p.skipped;
      for (int step = 1; step <= 2; ++step) {
        const auto& est = p.ber[static_cast<std::size_t>(step - 1)];
        const double expected = e.ber(step, mod, n, p.gamma0);
        const double z = std::abs(est.value - expected) / est.std_error;
        out.push_back(Check::at_most(head + "_step" + std::to_string(step) + "_" +
                                         format_shortest(p.gamma0_db) + "db",
                                     6, z, kSeLimit,
                                     "mc " + format_shortest(est.value) + " vs " +
                                         format_shortest(expected) + ", |z|"));
      }
    }
  };

  auto sym = base_config(e.options, 2, 5.0);
  sym.gamma0_db = {5.0, 10.0, 15.0};
  add(mc::run_symbol_level(sym), "symbol_bpsk_n2");

  for (int n = 2; n <= 3; ++n) {
    auto semi = sym;
    semi.dims = {n, 2};
    semi.modulation = ModulationSpec::bfsk();
    semi.estimator = mc::Estimator::semi_analytic;
    add(mc::run_semianalytic_ber(semi), "semianalytic_bfsk_n" + std::to_string(n));
  }
  out.push_back(Check::at_most("bfsk_n2_step2_anchor", 6,
                               std::abs(e.ber(2, ModulationSpec::bfsk(), 2, 10.0) - 0.026239), 5e-7,
                               "gamma0 = 10 against 0.026239"));
  out.push_back(no_skips(6, skipped));
  return out;
}

// --- 7: asymptotes ----------------------------------------------------------

std::vector<Check> asymptote_convergence(Engine& e) {
  std::vector<Check> out;
  const double g = db_to_linear(40.0);
  for (const auto& mod : {ModulationSpec::bfsk(), ModulationSpec::bpsk()}) {
    for (int n = 2; n <= 3; ++n) {
      for (int step = 1; step <= 2; ++step) {
        const double ratio = e.ber(step, mod, n, g) / analytic::ber_asymptote(step, mod, n, g);
        out.push_back(Check::within(label("asymptote_ratio_step" + std::to_string(step), mod, n), 7,
                                    ratio, 0.95, 1.05, "closed form / asymptote at 40 dB"));
      }
    }
  }
  return out;
}

// --- 8: BLER ----------------------------------------------------------------

std::vector<Check> bler_domination(Engine& e) {
  std::vector<Check> out;
  const double g = db_to_linear(40.0);
  for (const auto& mod : {ModulationSpec::bfsk(), ModulationSpec::bpsk()}) {
    for (int n = 2; n <= 3; ++n) {
      out.push_back(Check::within(label("bler_over_step1", mod, n), 8,
                                  e.bler(mod, n, g) / e.ber(1, mod, n, g), 1.0, 1.01, "at 40 dB"));
    }
  }
  std::uint64_t skipped = 0;
  for (int n = 2; n <= 3; ++n) {
    const auto audit = mc::audit_traces(base_config(e.options, n, 5.0));
    skipped += audit.skipped;
    out.push_back(Check::at_most("block_indicator_mismatches_n" + std::to_string(n), 8,
                                 static_cast<double>(audit.block_indicator_mismatches), 0.0,
                                 std::to_string(audit.block_errors) + " block errors in " +
                                     std::to_string(audit.trials) + " trials at 5 dB"));
  }
  out.push_back(no_skips(8, skipped));
  return out;
}

// --- 9: ordering effect -----------------------------------------------------

std::vector<Check> ordering_effect(Engine& e) {
  std::vector<Check> out;
  const double g = db_to_linear(40.0);
  for (const auto& mod : {ModulationSpec::bfsk(), ModulationSpec::bpsk()}) {
    for (int n = 2; n <= 3; ++n) {
      out.push_back(Check::within(label("step1_over_mrc_order_n-1_at_2gamma0", mod, n), 9,
                                  e.ber(1, mod, n, g) / analytic::ber_mrc(mod, n - 1, 2.0 * g), 0.9,
                                  1.1, "at 40 dB"));
      out.push_back(Check::within(label("step2_over_mrc_order_n", mod, n), 9,
                                  e.ber(2, mod, n, g) / analytic::ber_mrc(mod, n, g), 1.8, 2.2,
                                  "at 40 dB"));
    }
  }
  return out;
}

// --- 10: determinism --------------------------------------------------------

std::vector<Check> determinism(Engine& e) {
  std::vector<Check> out;
  auto cfg = base_config(e.options, 2, 0.0);
  cfg.gamma0_db = {0.0, 5.0, 10.0, 15.0};
  cfg.trials = std::min<std::uint64_t>(e.options.trials, 200'000);

  const auto render = [&](unsigned workers) {
    cfg.workers = workers;
    return cli::render_csv(cli::simulate_table(mc::run_simulation(cfg)), "determinism.manifest.json");
  };
  const std::string reference = render(1);
  const auto differs = [&](unsigned workers) { return render(workers) != reference ? 1.0 : 0.0; };
  out.push_back(Check::at_most("csv_rerun_differs", 10, differs(1), 0.0, "same seed, 1 worker"));
  for (unsigned w : {2u, 8u}) {
    out.push_back(Check::at_most("csv_differs_with_" + std::to_string(w) + "_workers", 10,
                                 differs(w), 0.0, "against the 1-worker CSV"));
  }
  auto semi = cfg;
  semi.estimator = mc::Estimator::semi_analytic;
  semi.modulation = ModulationSpec::bfsk();
  const auto semi_render = [&](unsigned workers) {
    semi.workers = workers;
    return cli::render_csv(cli::simulate_table(mc::run_simulation(semi)));
  };
  out.push_back(Check::at_most("semianalytic_csv_differs_with_8_workers", 10,
                               semi_render(8) != semi_render(1) ? 1.0 : 0.0, 0.0));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

double mrc_cdf_oracle(int n, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(n), x);
}

double step1_cdf_oracle(int n_rx, double x) {
  if (x <= 0.0) return 0.0;
  const int n = n_rx;
  const auto fact = [](int k) { return std::tgamma(static_cast<long double>(k) + 1.0L); };
  long double correction = 0.0L;
  for (int i = n - 1; i <= 2 * n - 3; ++i) {
    long double a = 0.0L;
    for (int j = i + 1; j <= 2 * n - 2; ++j) {
      long double inner = 0.0L;
      for (int k = j - n + 1; k <= n - 1; ++k) inner += 1.0L / (fact(k) * fact(j - k));
      a += fact(j - n) / std::pow(2.0L, j) * inner;
    }
    a *= static_cast<long double>(n - 1) / fact(i - n + 1);
    correction += a * std::pow(2.0L * x, static_cast<long double>(i));
  }
  correction *= std::exp(-2.0L * x);
  return static_cast<double>(2.0L * mrc_cdf_oracle(n - 1, x) - mrc_cdf_oracle(n - 1, 2.0 * x) +
                             correction);
}

double step2_cdf_oracle(int n_rx, double x) {
  const double f = mrc_cdf_oracle(n_rx, x);
  return f * (2.0 - f);
}

double quadrature_ber(const ModulationSpec& mod, double gamma0,
                      const std::function<double(double)>& cdf) {
  const auto integrand = [&](double t) {
    const double g = t * t;
    if (g == 0.0) return 0.0;
    const double slope = mod.conditional_ber_derivative(g);
    if (slope == 0.0) return 0.0;
    return -slope * 2.0 * t * cdf(g / gamma0);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  const double value = integrator.integrate(integrand, kQuadratureTol, &error);
  if (!(error <= 1e-9 * std::max(1.0, std::abs(value)))) {
    throw std::runtime_error("quadrature_ber: tolerance not reached");
  }
  return value;
}

double bfsk_2x2_step2_literal(double gamma0) {
  const Wide g = gamma0;
  const Wide s = 4 + g;
  return static_cast<double>(Wide(4) / (s * s) + Wide(16) / (s * s * s));
}

double bpsk_2x2_step1_literal(double gamma0) {
  const Wide g = gamma0;
  const Wide v = Wide(0.5) - sqrt(g / (1 + g)) +
                 Wide(0.5) * sqrt(g / (2 + g)) * (1 + 1 / (4 * (2 + g)));
  return static_cast<double>(v);
}

double bpsk_2x2_step2_literal(double gamma0) {
  const Wide g = gamma0;
  const Wide s = 2 + g;
  const Wide v = Wide(0.5) - Wide(0.5) * sqrt(g / s) * (1 + 1 / s + 3 / (4 * s * s));
  return static_cast<double>(v);
}

OrderedSnrCoefficients perturbed_coefficients(int n_rx, double delta) {
  auto c = analytic::coefficients(n_rx);
  const int i = n_rx - 1;
  const double shifted = c.a(i) + delta;
  const double scale = shifted / c.a(i);
  c.a.values.front() = shifted;
  c.alpha.values.front() *= scale;
  c.sigma.values.front() *= scale;
  return c;
}

std::string_view criterion_title(int criterion) {
  switch (criterion) {
    case 1: return "algebraic identities";
    case 2: return "quadrature oracle";
    case 3: return "SNR distribution (KS)";
    case 4: return "per-trial SNR identity";
    case 5: return "weight orthogonality and noise independence";
    case 6: return "BER agreement";
    case 7: return "asymptote convergence";
    case 8: return "BLER domination and invariance";
    case 9: return "ordering effect";
    case 10: return "determinism";
    default: throw std::out_of_range("criterion out of range");
  }
}

std::vector<Check> run_criterion(int criterion, const Options& options) {
  Engine e(options);
  switch (criterion) {
    case 1: return algebraic_identities(e);
    case 2: return quadrature_oracle(e);
    case 3: return snr_distribution(e);
    case 4: return snr_identity(e);
    case 5: return noise_independence(e);
    case 6: return ber_agreement(e);
    case 7: return asymptote_convergence(e);
    case 8: return bler_domination(e);
    case 9: return ordering_effect(e);
    case 10: return determinism(e);
    default: throw std::out_of_range("criterion out of range");
  }
}

report::Report run_validation(const Options& options, std::span<const int> criteria) {
  std::vector<int> selected(criteria.begin(), criteria.end());
  if (selected.empty()) {
    for (int k = 1; k <= kCriteria; ++k) selected.push_back(k);
  }
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  report::Report r;
  r.tool_version = std::string(kVersion);
  r.seed = options.seed;
  r.trials = options.trials;
  r.fault_injected = options.inject_fault;
  for (int k : selected) {
    auto checks = run_criterion(k, options);
    r.checks.insert(r.checks.end(), checks.begin(), checks.end());
  }
  return r;
}

}  // namespace vblast::validation
