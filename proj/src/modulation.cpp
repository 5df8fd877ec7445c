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

#include "vblast/modulation.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vblast/analytic.hpp"
#include "vblast/format.hpp"

namespace vblast {
namespace {

ModulationSpec make(ModulationFamily family, double alpha, double beta, std::string name) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("modulation parameters must be positive and finite");
  }
  return ModulationSpec{family, alpha, beta, std::move(name)};
}

double parse_positive(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad modulation parameter '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

ModulationSpec ModulationSpec::bpsk() { return make(ModulationFamily::coherent, 2.0, 1.0, "bpsk"); }

ModulationSpec ModulationSpec::bfsk() {
  return make(ModulationFamily::noncoherent, 0.5, 0.5, "bfsk");
}

ModulationSpec ModulationSpec::coherent(double alpha, double beta) {
  return make(ModulationFamily::coherent, alpha, beta,
              "coherent:" + format_shortest(alpha) + "," + format_shortest(beta));
}

ModulationSpec ModulationSpec::noncoherent(double alpha, double beta) {
  return make(ModulationFamily::noncoherent, alpha, beta,
              "noncoherent:" + format_shortest(alpha) + "," + format_shortest(beta));
}

ModulationSpec ModulationSpec::parse(std::string_view text) {
  if (text == "bpsk") return bpsk();
  if (text == "bfsk") return bfsk();

  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("unknown modulation '" + std::string(text) + "'");
  }
  const auto family = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  const auto comma = params.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("expected <alpha>,<beta> in '" + std::string(text) + "'");
  }
  const double alpha = parse_positive(params.substr(0, comma));
  const double beta = parse_positive(params.substr(comma + 1));
  if (family == "coherent") return coherent(alpha, beta);
  if (family == "noncoherent") return noncoherent(alpha, beta);
  throw std::invalid_argument("unknown modulation family '" + std::string(family) + "'");
}

double ModulationSpec::conditional_ber(double gamma) const {
  if (family == ModulationFamily::coherent) return beta * analytic::q_function(std::sqrt(alpha * gamma));
  return beta * std::exp(-alpha * gamma);
}

double ModulationSpec::conditional_ber_derivative(double gamma) const {
  if (family == ModulationFamily::coherent) {
    // d/dγ Q(√(αγ)) = −φ(√(αγ))·α/(2√(αγ)) = −√α·e^{−αγ/2} / (2√(2πγ))
    return -beta * std::sqrt(alpha) * std::exp(-0.5 * alpha * gamma) /
           (2.0 * std::sqrt(2.0 * std::numbers::pi * gamma));
  }
  return -alpha * beta * std::exp(-alpha * gamma);
}

std::string ModulationSpec::to_string() const { return name; }

}  // namespace vblast
