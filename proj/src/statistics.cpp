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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vblast/montecarlo.hpp"

namespace vblast::mc {

double ks_statistic(std::span<const double> empirical, std::span<const double> analytic) {
  if (empirical.size() != analytic.size() || empirical.empty()) {
    throw std::invalid_argument("ks_statistic: grids must be non-empty and of equal length");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    d = std::max(d, std::abs(empirical[i] - analytic[i]));
  }
  return d;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0 || errors > trials) {
    throw std::invalid_argument("wilson_interval: need 0 <= errors <= trials and trials >= 1");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (errors == 0) ci.lower = 0.0;
  if (errors == trials) ci.upper = 1.0;
  // Rounding can put the endpoints a hair inside p at the extremes.
  ci.lower = std::min(ci.lower, p);
  ci.upper = std::max(ci.upper, p);
  return ci;
}

RateEstimate binomial_rate(std::uint64_t errors, std::uint64_t trials) {
  RateEstimate r;
  if (trials == 0) return r;
  const double n = static_cast<double>(trials);
  r.value = static_cast<double>(errors) / n;
  r.std_error = std::sqrt(r.value * (1.0 - r.value) / n);
  r.ci = wilson_interval(errors, trials);
  return r;
}

RateEstimate mean_rate(double sum, double sum_sq, std::uint64_t count) {
  RateEstimate r;
  if (count == 0) return r;
  const double n = static_cast<double>(count);
  r.value = sum / n;
  const double var = count > 1 ? std::max(0.0, (sum_sq - n * r.value * r.value) / (n - 1.0)) : 0.0;
  r.std_error = std::sqrt(var / n);
  r.ci = {std::max(0.0, r.value - kZ95 * r.std_error), std::min(1.0, r.value + kZ95 * r.std_error)};
  return r;
}

}  // namespace vblast::mc
