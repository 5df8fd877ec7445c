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

#include "vblast/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace vblast::mc {
namespace {

using detector::CancellationMode;
using detector::DegenerateChannel;

std::uint64_t block_count(std::uint64_t trials) {
  return (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
}

std::uint64_t partition_of(std::size_t point, std::uint64_t block) {
  return (static_cast<std::uint64_t>(point) << 32) | block;
}

// Runs `trial(stream, trial_index, acc)` over every trial of one SNR point.
// Returns one accumulator per block, in block order.
template <typename Acc, typename TrialFn>
std::vector<Acc> run_blocks(const SimConfig& config, std::size_t point, TrialFn trial) {
  const std::uint64_t blocks = block_count(config.trials);
  std::vector<Acc> partial(blocks);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        RngStream stream(config.seed, partition_of(point, b));
        const std::uint64_t first = b * kTrialsPerBlock;
        const std::uint64_t last = std::min(first + kTrialsPerBlock, config.trials);
        for (std::uint64_t t = first; t < last; ++t) trial(stream, t, partial[b]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };

  const auto threads = static_cast<std::uint64_t>(std::max(1u, config.workers));
  if (threads == 1 || blocks == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t i = 0; i < std::min(threads, blocks); ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return partial;
}

struct TrialDraw {
  ComplexMatrix channel;
  std::vector<Symbol> symbols;
  ComplexVector noise;
  ComplexVector received;
};

TrialDraw draw_trial(const SimConfig& config, const NoiseParams& noise, RngStream& stream) {
  auto h = sample_channel(config.dims, stream);
  auto q = sample_bpsk_symbols(static_cast<std::size_t>(config.dims.m_tx), stream);
  auto v = sample_noise(static_cast<std::size_t>(config.dims.n_rx), noise, stream);
  auto r = transmit(h, q, v);
  return {std::move(h), std::move(q), std::move(v), std::move(r)};
}

// --- accumulators ----------------------------------------------------------

struct CountAcc {
  std::array<std::uint64_t, 2> step_errors{};
  std::uint64_t block_errors = 0;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;

  void merge(const CountAcc& o) {
    for (int i = 0; i < 2; ++i) step_errors[i] += o.step_errors[i];
    block_errors += o.block_errors;
    trials += o.trials;
    skipped += o.skipped;
  }
};

struct MeanAcc {
  std::array<double, 2> sum{};
  std::array<double, 2> sum_sq{};
  double bler_sum = 0.0;
  double bler_sum_sq = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;

  void merge(const MeanAcc& o) {
    for (int i = 0; i < 2; ++i) {
      sum[i] += o.sum[i];
      sum_sq[i] += o.sum_sq[i];
    }
    bler_sum += o.bler_sum;
    bler_sum_sq += o.bler_sum_sq;
    trials += o.trials;
    skipped += o.skipped;
  }
};

template <typename Acc>
Acc fold(const std::vector<Acc>& partial) {
  Acc total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

SimPoint point_header(const SimConfig& config, std::size_t p) {
  SimPoint out;
  out.gamma0_db = config.gamma0_db[p];
  out.gamma0 = db_to_linear(config.gamma0_db[p]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Estimator e) noexcept {
  return e == Estimator::symbol_level ? "symbol" : "semianalytic";
}

Estimator parse_estimator(std::string_view text) {
  if (text == "symbol") return Estimator::symbol_level;
  if (text == "semianalytic") return Estimator::semi_analytic;
  throw std::invalid_argument("unknown estimator '" + std::string(text) + "'");
}

void SimConfig::validate() const {
  dims.validate();
  if (dims.m_tx != 2) throw std::invalid_argument("simulation supports m_tx = 2 only");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (workers == 0) throw std::invalid_argument("workers must be >= 1");
  if (gamma0_db.empty()) throw std::invalid_argument("SNR grid is empty");
  for (std::size_t i = 0; i < gamma0_db.size(); ++i) {
    if (!std::isfinite(gamma0_db[i])) throw std::invalid_argument("SNR grid has non-finite values");
    if (i > 0 && gamma0_db[i] < gamma0_db[i - 1]) {
      throw std::invalid_argument("SNR grid must be sorted ascending");
    }
  }
  if (gamma0_db.size() >= (std::size_t{1} << 31)) throw std::invalid_argument("SNR grid too long");
  if (block_count(trials) >= (std::uint64_t{1} << 32)) throw std::invalid_argument("too many trials");
  if (estimator == Estimator::symbol_level && !modulation.is_bpsk()) {
    throw std::invalid_argument("symbol-level simulation supports BPSK only; use semianalytic");
  }
}

SimResult run_symbol_level(const SimConfig& config) {
  SimConfig cfg = config;
  cfg.estimator = Estimator::symbol_level;
  cfg.validate();

  SimResult result{cfg, {}};
  for (std::size_t p = 0; p < cfg.gamma0_db.size(); ++p) {
    SimPoint out = point_header(cfg, p);
    const auto noise = NoiseParams::from_gamma0(out.gamma0);
    const auto total = fold(run_blocks<CountAcc>(
        cfg, p, [&](RngStream& stream, std::uint64_t, CountAcc& acc) {
          const auto draw = draw_trial(cfg, noise, stream);
          try {
            const auto trace = detector::detect(draw.channel, draw.received, draw.symbols, noise,
                                                cfg.modulation, cfg.mode, cfg.ordering);
            bool any = false;
            for (std::size_t i = 0; i < 2; ++i) {
              const bool e = trace.symbol_error(i, draw.symbols);
              acc.step_errors[i] += e;
              any = any || e;
            }
            acc.block_errors += any;
            ++acc.trials;
          } catch (const DegenerateChannel&) {
            ++acc.skipped;
          }
        }));

    out.trials = total.trials;
    out.skipped = total.skipped;
    out.step_errors = total.step_errors;
    out.block_errors = total.block_errors;
    for (std::size_t i = 0; i < 2; ++i) out.ber[i] = binomial_rate(total.step_errors[i], total.trials);
    out.bler = binomial_rate(total.block_errors, total.trials);
    result.points.push_back(out);
  }
  return result;
}

SimResult run_semianalytic_ber(const SimConfig& config) {
  SimConfig cfg = config;
  cfg.estimator = Estimator::semi_analytic;
  cfg.validate();

  SimResult result{cfg, {}};
  for (std::size_t p = 0; p < cfg.gamma0_db.size(); ++p) {
    SimPoint out = point_header(cfg, p);
    const double gamma0 = out.gamma0;
    const auto total = fold(run_blocks<MeanAcc>(
        cfg, p, [&](RngStream& stream, std::uint64_t, MeanAcc& acc) {
          const auto h = sample_channel(cfg.dims, stream);
          try {
            const auto steps = detector::ordered_projections(h, cfg.ordering);
            std::array<double, 2> pe{};
            for (std::size_t i = 0; i < 2; ++i) {
              pe[i] = cfg.modulation.conditional_ber(steps[i].h_perp.norm_sq() * gamma0);
              acc.sum[i] += pe[i];
              acc.sum_sq[i] += pe[i] * pe[i];
            }
            const double block = pe[0] + pe[1] - pe[0] * pe[1];
            acc.bler_sum += block;
            acc.bler_sum_sq += block * block;
            ++acc.trials;
          } catch (const DegenerateChannel&) {
            ++acc.skipped;
          }
        }));

    out.trials = total.trials;
    out.skipped = total.skipped;
    for (std::size_t i = 0; i < 2; ++i) {
      out.ber[i] = mean_rate(total.sum[i], total.sum_sq[i], total.trials);
    }
    out.bler = mean_rate(total.bler_sum, total.bler_sum_sq, total.trials);
    result.points.push_back(out);
  }
  return result;
}

SimResult run_simulation(const SimConfig& config) {
  return config.estimator == Estimator::symbol_level ? run_symbol_level(config)
                                                     : run_semianalytic_ber(config);
}

std::vector<std::uint8_t> block_error_indicators(const SimConfig& config, std::size_t point_index) {
  config.validate();
  if (point_index >= config.gamma0_db.size()) throw std::out_of_range("SNR point out of range");
  const auto noise = NoiseParams::from_snr_db(config.gamma0_db[point_index]);

  struct Acc {
    std::vector<std::uint8_t> flags;
  };
  const auto partial = run_blocks<Acc>(
      config, point_index, [&](RngStream& stream, std::uint64_t, Acc& acc) {
        const auto draw = draw_trial(config, noise, stream);
        try {
          const auto trace = detector::detect(draw.channel, draw.received, draw.symbols, noise,
                                              config.modulation, config.mode, config.ordering);
          acc.flags.push_back(trace.block_error(draw.symbols) ? 1 : 0);
        } catch (const DegenerateChannel&) {
          acc.flags.push_back(0xFF);
        }
      });
  std::vector<std::uint8_t> out;
  out.reserve(config.trials);
  for (const auto& p : partial) out.insert(out.end(), p.flags.begin(), p.flags.end());
  return out;
}

SnrSamples sample_normalized_snrs(const SimConfig& config) {
  config.validate();
  struct Acc {
    std::array<std::vector<double>, 2> values;
    std::uint64_t skipped = 0;
  };
  const auto partial =
      run_blocks<Acc>(config, 0, [&](RngStream& stream, std::uint64_t, Acc& acc) {
        const auto h = sample_channel(config.dims, stream);
        try {
          const auto steps = detector::ordered_projections(h, config.ordering);
          // With σ₀² = 1/γ₀, γ_i/γ₀ = |h⊥|².
          for (std::size_t i = 0; i < 2; ++i) acc.values[i].push_back(steps[i].h_perp.norm_sq());
        } catch (const DegenerateChannel&) {
          ++acc.skipped;
        }
      });

  SnrSamples out;
  for (auto& v : out.normalized) v.reserve(config.trials);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < 2; ++i) {
      out.normalized[i].insert(out.normalized[i].end(), p.values[i].begin(), p.values[i].end());
    }
    out.skipped += p.skipped;
  }
  return out;
}

SnrCdfEstimate estimate_snr_cdf(const SimConfig& config, std::span<const double> grid) {
  config.validate();
  if (grid.empty()) throw std::invalid_argument("CDF grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw std::invalid_argument("CDF grid must be nonnegative");
    if (i > 0 && grid[i] < grid[i - 1]) throw std::invalid_argument("CDF grid must be sorted");
  }

  // hist[k] counts samples whose first grid point strictly above them is k.
  struct Acc {
    std::array<std::vector<std::uint64_t>, 2> hist;
    std::uint64_t trials = 0;
    std::uint64_t skipped = 0;
  };
  const auto partial =
      run_blocks<Acc>(config, 0, [&](RngStream& stream, std::uint64_t, Acc& acc) {
        if (acc.hist[0].empty()) {
          for (auto& h : acc.hist) h.assign(grid.size() + 1, 0);
        }
        const auto h = sample_channel(config.dims, stream);
        try {
          const auto steps = detector::ordered_projections(h, config.ordering);
          for (std::size_t i = 0; i < 2; ++i) {
            const double x = steps[i].h_perp.norm_sq();
            const auto k = std::upper_bound(grid.begin(), grid.end(), x) - grid.begin();
            ++acc.hist[i][static_cast<std::size_t>(k)];
          }
          ++acc.trials;
        } catch (const DegenerateChannel&) {
          ++acc.skipped;
        }
      });

  SnrCdfEstimate out;
  out.grid.assign(grid.begin(), grid.end());
  std::array<std::vector<std::uint64_t>, 2> hist;
  for (auto& h : hist) h.assign(grid.size() + 1, 0);
  for (const auto& p : partial) {
    out.trials += p.trials;
    out.skipped += p.skipped;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < p.hist[i].size(); ++k) hist[i][k] += p.hist[i][k];
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    out.cdf[i].resize(grid.size());
    std::uint64_t below = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      below += hist[i][k];
      out.cdf[i][k] = out.trials ? static_cast<double>(below) / static_cast<double>(out.trials) : 0.0;
    }
  }
  return out;
}

NoiseCorrelation estimate_noise_crosscorr(const SimConfig& config, CombiningRule rule) {
  config.validate();
  const auto noise = NoiseParams::from_snr_db(config.gamma0_db.front());
  const auto n = static_cast<std::size_t>(config.dims.n_rx);

  struct Acc {
    Complex cross{0.0, 0.0};
    double cross_sq = 0.0;
    std::array<double, 2> power{};
    std::uint64_t trials = 0;
    std::uint64_t skipped = 0;
    void merge(const Acc& o) {
      cross += o.cross;
      cross_sq += o.cross_sq;
      for (int i = 0; i < 2; ++i) power[i] += o.power[i];
      trials += o.trials;
      skipped += o.skipped;
    }
  };
  const auto total = fold(run_blocks<Acc>(
      config, 0, [&](RngStream& stream, std::uint64_t, Acc& acc) {
        const auto draw = draw_trial(config, noise, stream);
        try {
          const auto steps = detector::ordered_projections(draw.channel, config.ordering);
          std::array<Complex, 2> xi;
          for (std::size_t i = 0; i < 2; ++i) {
            ComplexVector w = detector::zf_mrc_weight(steps[i].h_perp);
            if (rule == CombiningRule::equal_gain) {
              std::vector<ComplexVector> interferers;
              for (auto idx : steps[i].interferers) interferers.push_back(draw.channel.column(idx));
              w = detector::equal_gain_weight(n, interferers);
            }
            xi[i] = detector::after_combining_noise(w, draw.noise);
            acc.power[i] += std::norm(xi[i]);
          }
          const Complex c = std::conj(xi[0]) * xi[1];
          acc.cross += c;
          acc.cross_sq += std::norm(c);
          ++acc.trials;
        } catch (const DegenerateChannel&) {
          ++acc.skipped;
        }
      }));

  NoiseCorrelation out;
  out.sigma0_sq = noise.sigma0_sq();
  out.trials = total.trials;
  out.skipped = total.skipped;
  if (total.trials > 0) {
    const double n_trials = static_cast<double>(total.trials);
    out.cross = total.cross / n_trials;
    out.cross_std_error = std::sqrt(total.cross_sq / n_trials / n_trials);
    for (std::size_t i = 0; i < 2; ++i) out.mean_power[i] = total.power[i] / n_trials;
  }
  return out;
}

TraceAudit audit_traces(const SimConfig& config) {
  SimConfig cfg = config;
  cfg.estimator = Estimator::symbol_level;
  cfg.validate();
  const auto noise = NoiseParams::from_snr_db(cfg.gamma0_db.front());
  const int n = cfg.dims.n_rx;
  const int m = cfg.dims.m_tx;

  struct Acc {
    TraceAudit a;
    void merge(const Acc& o) {
      a.trials += o.a.trials;
      a.skipped += o.a.skipped;
      a.max_snr_identity_error = std::max(a.max_snr_identity_error, o.a.max_snr_identity_error);
      a.max_weight_overlap = std::max(a.max_weight_overlap, o.a.max_weight_overlap);
      a.max_weight_norm_error = std::max(a.max_weight_norm_error, o.a.max_weight_norm_error);
      a.block_indicator_mismatches += o.a.block_indicator_mismatches;
      a.correct_first_trace_mismatches += o.a.correct_first_trace_mismatches;
      for (int i = 0; i < 2; ++i) {
        a.genie_step_errors[i] += o.a.genie_step_errors[i];
        a.propagate_step_errors[i] += o.a.propagate_step_errors[i];
      }
      a.block_errors += o.a.block_errors;
    }
  };

  const auto total = fold(run_blocks<Acc>(
      cfg, 0, [&](RngStream& stream, std::uint64_t, Acc& acc) {
        auto& a = acc.a;
        const auto draw = draw_trial(cfg, noise, stream);
        try {
          const auto genie = detector::detect(draw.channel, draw.received, draw.symbols, noise,
                                              cfg.modulation, CancellationMode::genie, cfg.ordering);
          const auto prop = detector::detect(draw.channel, draw.received, draw.symbols, noise,
                                             cfg.modulation, CancellationMode::propagate,
                                             cfg.ordering);
          const auto cols = draw.channel.columns();
          for (std::size_t i = 0; i < genie.steps.size(); ++i) {
            const auto& s = genie.steps[i];
            // Combined SNR from the projected signal term w⁺(Ph), and the
            // power-wise SNR with the projected noise power taken from tr(P).
            const Complex gain = linalg::inner(s.weight, s.h_perp);
            const double combined = std::norm(gain) / (s.weight.norm_sq() * noise.sigma0_sq());
            std::vector<ComplexVector> interferers;
            for (std::size_t j = i + 1; j < genie.order.size(); ++j) {
              interferers.push_back(cols[genie.order[j]]);
            }
            const auto projector = linalg::projection_matrix(draw.channel.rows(), interferers);
            double trace = 0.0;
            for (std::size_t k = 0; k < projector.rows(); ++k) trace += projector(k, k).real();
            const double powerwise = s.h_perp.norm_sq() / (trace * noise.sigma0_sq());
            const double factor = n - m + static_cast<int>(i) + 1;
            const double err = std::max(std::abs(combined - factor * powerwise) / combined,
                                        std::abs(s.snr_opt - factor * s.snr_powerwise) / s.snr_opt);
            a.max_snr_identity_error = std::max(a.max_snr_identity_error, err);
            a.max_weight_norm_error =
                std::max(a.max_weight_norm_error, std::abs(s.weight.norm() - 1.0));
            a.genie_step_errors[i] += genie.symbol_error(i, draw.symbols);
            a.propagate_step_errors[i] += prop.symbol_error(i, draw.symbols);
          }
          a.max_weight_overlap = std::max(
              a.max_weight_overlap, std::abs(linalg::inner(genie.steps[0].weight, genie.steps[1].weight)));

          const bool block_genie = genie.block_error(draw.symbols);
          const bool block_prop = prop.block_error(draw.symbols);
          a.block_errors += block_genie;
          a.block_indicator_mismatches += (block_genie != block_prop);

          if (!genie.symbol_error(0, draw.symbols)) {
            bool same = genie.order == prop.order;
            for (std::size_t i = 0; same && i < genie.steps.size(); ++i) {
              const auto& g = genie.steps[i];
              const auto& p = prop.steps[i];
              same = g.decision == p.decision && g.snr_opt == p.snr_opt &&
                     g.after_combining_noise == p.after_combining_noise;
            }
            a.correct_first_trace_mismatches += !same;
          }
          ++a.trials;
        } catch (const DegenerateChannel&) {
          ++a.skipped;
        }
      }));
  return total.a;
}

}  // namespace vblast::mc
