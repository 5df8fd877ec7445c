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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "vblast/analytic.hpp"
#include "vblast/montecarlo.hpp"

using namespace vblast;
using namespace vblast::mc;

namespace {

SimConfig small_config(std::vector<double> db, std::uint64_t trials) {
  SimConfig c;
  c.gamma0_db = std::move(db);
  c.trials = trials;
  c.seed = 7;
  return c;
}

void check_same(const SimResult& a, const SimResult& b) {
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& p = a.points[i];
    const auto& q = b.points[i];
    CHECK(p.trials == q.trials);
    CHECK(p.step_errors == q.step_errors);
    CHECK(p.block_errors == q.block_errors);
    CHECK(p.skipped == q.skipped);
    for (int s = 0; s < 2; ++s) {
      CHECK(p.ber[s].value == q.ber[s].value);
      CHECK(p.ber[s].ci.lower == q.ber[s].ci.lower);
      CHECK(p.ber[s].ci.upper == q.ber[s].ci.upper);
    }
    CHECK(p.bler.value == q.bler.value);
  }
}

}  // namespace

TEST_CASE("wilson_interval") {
  CHECK(wilson_interval(0, 100).lower == 0.0);
  CHECK(wilson_interval(0, 100).upper > 0.0);
  CHECK(wilson_interval(100, 100).upper == 1.0);
  CHECK(wilson_interval(100, 100).lower < 1.0);
  const auto ci = wilson_interval(50, 100);
  CHECK(ci.lower == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(ci.upper == doctest::Approx(0.5962).epsilon(1e-3));
  for (std::uint64_t k : {1u, 3u, 17u, 999u}) {
    const auto w = wilson_interval(k, 1000);
    const double p = static_cast<double>(k) / 1000.0;
    CHECK(w.lower <= p);
    CHECK(w.upper >= p);
    CHECK(w.lower >= 0.0);
    CHECK(w.upper <= 1.0);
  }
  CHECK_THROWS_AS(wilson_interval(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
}

TEST_CASE("mean_rate") {
  const auto r = mean_rate(5.0, 5.0, 10);
  CHECK(r.value == 0.5);
  CHECK(r.std_error == doctest::Approx(std::sqrt(2.5 / 9.0 / 10.0)));
  CHECK(r.ci.lower >= 0.0);
  CHECK(r.ci.upper <= 1.0);
}

TEST_CASE("ks statistics") {
  const std::vector<double> a{0.1, 0.4, 0.9};
  CHECK(ks_statistic(a, a) == 0.0);
  const std::vector<double> b{0.1, 0.45, 0.9};
  CHECK(ks_statistic(a, b) == doctest::Approx(0.05));
  const std::vector<double> c{0.1, 0.4};
  CHECK_THROWS_AS(ks_statistic(a, c), std::invalid_argument);
  CHECK_THROWS_AS(ks_distance({}, [](double x) { return x; }), std::invalid_argument);

  CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
  std::vector<double> uniform;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) uniform.push_back((static_cast<double>(i) + 0.5) / n);
  CHECK(ks_distance(uniform, [](double x) { return x; }) == doctest::Approx(0.5 / n));
}

TEST_CASE("config validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.dims = {3, 3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.gamma0_db = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.gamma0_db = {10.0, 5.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.gamma0_db = {std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.workers = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.modulation = ModulationSpec::bfsk();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.estimator = Estimator::semi_analytic;
  CHECK_NOTHROW(bad.validate());
  CHECK_THROWS_AS(run_simulation(SimConfig{.trials = 0}), std::invalid_argument);
}

TEST_CASE("estimator names") {
  CHECK(parse_estimator("symbol") == Estimator::symbol_level);
  CHECK(parse_estimator("semianalytic") == Estimator::semi_analytic);
  CHECK(to_string(Estimator::semi_analytic) == "semianalytic");
  CHECK_THROWS(parse_estimator("bogus"));
}

TEST_CASE("results do not depend on the worker count") {
  auto c = small_config({0.0, 10.0}, 3 * kTrialsPerBlock + 123);
  c.dims = {3, 2};
  c.workers = 1;
  const auto one = run_symbol_level(c);
  for (unsigned w : {2u, 8u}) {
    c.workers = w;
    check_same(one, run_symbol_level(c));
  }
  c.estimator = Estimator::semi_analytic;
  c.modulation = ModulationSpec::bfsk();
  c.workers = 1;
  const auto semi = run_simulation(c);
  c.workers = 8;
  check_same(semi, run_simulation(c));
}

TEST_CASE("a single trial is reproducible") {
  auto c = small_config({5.0}, 1);
  const auto a = run_symbol_level(c);
  const auto b = run_symbol_level(c);
  check_same(a, b);
  CHECK(a.points[0].trials + a.points[0].skipped == 1);
}

TEST_CASE("different seeds give different draws") {
  auto c = small_config({0.0}, 20000);
  const auto a = run_symbol_level(c);
  c.seed = 8;
  const auto b = run_symbol_level(c);
  CHECK(a.points[0].step_errors != b.points[0].step_errors);
}

TEST_CASE("no errors at very high SNR") {
  const auto r = run_symbol_level(small_config({80.0}, 10000));
  CHECK(r.points[0].step_errors[0] == 0);
  CHECK(r.points[0].step_errors[1] == 0);
  CHECK(r.points[0].block_errors == 0);
  CHECK(r.points[0].ber[0].ci.lower == 0.0);
  CHECK(r.points[0].ber[0].ci.upper > 0.0);
}

TEST_CASE("symbol-level and semi-analytic estimates agree") {
  for (int n : {2, 3}) {
    auto c = small_config({5.0, 10.0}, 200000);
    c.dims = {n, 2};
    const auto sym = run_symbol_level(c);
    c.estimator = Estimator::semi_analytic;
    const auto semi = run_simulation(c);
    for (std::size_t i = 0; i < c.gamma0_db.size(); ++i) {
      for (int s = 0; s < 2; ++s) {
        const auto& a = sym.points[i].ber[s];
        const auto& b = semi.points[i].ber[s];
        const double se = std::hypot(a.std_error, b.std_error);
        CHECK(std::abs(a.value - b.value) <= 3.0 * se);
      }
    }
  }
}

TEST_CASE("symbol-level estimates bracket the closed forms") {
  const auto c = small_config({10.0}, 200000);
  const auto r = run_symbol_level(c);
  const auto& p = r.points[0];
  for (int s = 0; s < 2; ++s) {
    const double exact = analytic::ber_step(s + 1, c.modulation, 2, p.gamma0);
    CHECK(std::abs(p.ber[s].value - exact) <= 4.0 * p.ber[s].std_error);
  }
  CHECK(p.skipped == 0);
}

TEST_CASE("block-error indicators ignore the cancellation mode") {
  auto c = small_config({0.0, 5.0}, 30000);
  const auto genie = block_error_indicators(c, 1);
  c.mode = detector::CancellationMode::propagate;
  const auto prop = block_error_indicators(c, 1);
  CHECK(genie == prop);
  REQUIRE(genie.size() == c.trials);
  std::uint64_t errors = 0;
  for (auto v : genie) errors += v == 1;
  CHECK(errors == run_symbol_level(c).points[1].block_errors);
  CHECK_THROWS(block_error_indicators(c, 2));
}

TEST_CASE("empirical SNR CDFs") {
  auto c = small_config({10.0}, 100000);
  const std::vector<double> grid{0.0, 0.1, 0.5, 1.0, 2.0, 4.0};
  const auto est = estimate_snr_cdf(c, grid);
  CHECK(est.cdf[0][0] == 0.0);
  CHECK(est.cdf[1][0] == 0.0);
  const double tol = 5.0 / std::sqrt(static_cast<double>(est.trials));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(est.cdf[0][k] - analytic::outage_cdf_step1(2, grid[k])) < tol);
    CHECK(std::abs(est.cdf[1][k] - analytic::outage_cdf_step2(2, grid[k])) < tol);
  }
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS(estimate_snr_cdf(c, unsorted));

  const auto samples = sample_normalized_snrs(c);
  CHECK(samples.normalized[0].size() == est.trials);
  CHECK(ks_distance(samples.normalized[0], [](double x) { return analytic::outage_cdf_step1(2, x); }) <
        1.63 / std::sqrt(static_cast<double>(est.trials)));
}

TEST_CASE("after-combining noise") {
  const auto c = small_config({10.0}, 50000);
  const auto zf = estimate_noise_crosscorr(c);
  const double n = static_cast<double>(zf.trials);
  CHECK(std::abs(zf.cross) / zf.sigma0_sq < 4.0 / std::sqrt(n));
  for (double p : zf.mean_power) CHECK(std::abs(p / zf.sigma0_sq - 1.0) < 0.03);
  const auto eg = estimate_noise_crosscorr(c, CombiningRule::equal_gain);
  CHECK(std::abs(eg.cross) > 5.0 * std::abs(zf.cross));
}

TEST_CASE("trace audit") {
  auto c = small_config({5.0}, 20000);
  c.dims = {3, 2};
  const auto a = audit_traces(c);
  CHECK(a.trials + a.skipped == c.trials);
  CHECK(a.max_snr_identity_error < 1e-10);
  CHECK(a.max_weight_overlap < 1e-10);
  CHECK(a.max_weight_norm_error < 1e-12);
  CHECK(a.block_indicator_mismatches == 0);
  CHECK(a.correct_first_trace_mismatches == 0);
  CHECK(a.genie_step_errors[0] == a.propagate_step_errors[0]);
  CHECK(a.propagate_step_errors[1] >= a.genie_step_errors[1]);
}
