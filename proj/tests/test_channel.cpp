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
#include <vector>

#include "vblast/analytic.hpp"
#include "vblast/channel.hpp"
#include "vblast/montecarlo.hpp"

using namespace vblast;

TEST_CASE("dB conversion") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(-3.0) == doctest::Approx(0.501187233627));
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("NoiseParams normalization") {
  const NoiseParams unit(1.0);
  CHECK(unit.gamma0() == 1.0);
  CHECK(NoiseParams::from_gamma0(1.0).sigma0_sq() == 1.0);
  CHECK(NoiseParams::from_snr_db(10.0).sigma0_sq() == doctest::Approx(0.1));
  CHECK_THROWS_AS(NoiseParams(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParams(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParams::from_gamma0(0.0), std::invalid_argument);
}

TEST_CASE("SystemDims validation") {
  CHECK_NOTHROW(SystemDims{2, 2}.validate());
  CHECK_NOTHROW(SystemDims{4, 2}.validate());
  CHECK_THROWS_AS((SystemDims{1, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SystemDims{2, 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SystemDims{3, 1}.validate()), std::invalid_argument);
}

TEST_CASE("complex Gaussian moments") {
  RngStream s(3, 0);
  const int n = 1000000;
  double re = 0.0, im = 0.0, power = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = sample_complex_gaussian(s, 1.0);
    re += z.real();
    im += z.imag();
    power += std::norm(z);
  }
  CHECK(std::abs(re / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(im / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(power / n - 1.0) < 4e-3);

  RngStream a(3, 0), b(3, 0);
  for (int i = 0; i < 100; ++i) CHECK(sample_complex_gaussian(a, 2.0) == sample_complex_gaussian(b, 2.0));
}

TEST_CASE("channel entries have unit power") {
  RngStream s(4, 0);
  const SystemDims dims{2, 2};
  double power = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto h = sample_channel(dims, s);
    REQUIRE(h.rows() == 2);
    REQUIRE(h.cols() == 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) power += std::norm(h(r, c));
  }
  CHECK(std::abs(power / (4.0 * draws) - 1.0) < 0.02);
}

TEST_CASE("column power of an n x 1 channel follows the MRC outage CDF") {
  for (int n : {1, 2, 3}) {
    RngStream s(21, static_cast<std::uint64_t>(n));
    std::vector<double> gains;
    for (int i = 0; i < 100000; ++i) {
      ComplexVector col(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = sample_complex_gaussian(s, 1.0);
      gains.push_back(col.norm_sq());
    }
    const double d = mc::ks_distance(gains, [n](double x) { return analytic::mrc_outage_cdf(n, x); });
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(gains.size())));
  }
}

TEST_CASE("noise samples") {
  RngStream s(8, 0);
  const auto params = NoiseParams::from_gamma0(4.0);
  const int n = 100000;
  double p0 = 0.0, p1 = 0.0;
  Complex cross{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const auto v = sample_noise(2, params, s);
    p0 += std::norm(v[0]);
    p1 += std::norm(v[1]);
    cross += std::conj(v[0]) * v[1];
  }
  CHECK(std::abs(p0 / n / params.sigma0_sq() - 1.0) < 0.02);
  CHECK(std::abs(p1 / n / params.sigma0_sq() - 1.0) < 0.02);
  CHECK(std::abs(cross / static_cast<double>(n)) / params.sigma0_sq() <
        4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("BPSK symbols") {
  RngStream s(6, 0), t(6, 0);
  const auto q = sample_bpsk_symbols(100000, s);
  double mean = 0.0;
  for (double x : q) {
    REQUIRE(x * x == 1.0);
    mean += x;
  }
  CHECK(std::abs(mean / static_cast<double>(q.size())) < 4.0 / std::sqrt(static_cast<double>(q.size())));
  CHECK(sample_bpsk_symbols(100000, t) == q);
  CHECK_THROWS(sample_bpsk_symbols(0, s));
}

TEST_CASE("transmit is H q + v") {
  const ComplexMatrix h{{1.0, Complex{0.0, 1.0}}, {2.0, 3.0}};
  const ComplexVector v{0.5, Complex{0.0, -0.5}};
  const auto r = transmit(h, {1.0, -1.0}, v);
  CHECK(r[0] == Complex{1.5, -1.0});
  CHECK(r[1] == Complex{-1.0, -0.5});
  CHECK_THROWS_AS(transmit(h, {1.0}, v), linalg::DimensionMismatch);
}
