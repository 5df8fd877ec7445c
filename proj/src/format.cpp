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

#include "vblast/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace vblast {
namespace {

constexpr int kSignificantDigits = 12;

std::string non_finite(double value) {
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return non_finite(value);

  int decimals = kSignificantDigits - 1;
  if (value != 0.0) {
    // Round to 12 significant digits first so the exponent reflects any carry.
    std::array<char, 64> sci{};
    const auto r = std::to_chars(sci.data(), sci.data() + sci.size(), value,
                                 std::chars_format::scientific, kSignificantDigits - 1);
    const std::string_view s(sci.data(), static_cast<std::size_t>(r.ptr - sci.data()));
    const int exponent = std::stoi(std::string(s.substr(s.find('e') + 1)));
    decimals = std::max(0, kSignificantDigits - 1 - exponent);
  }

  std::array<char, 512> buf{};
  const auto r =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  return std::string(buf.data(), r.ptr);
}

std::string format_shortest(double value) {
  if (!std::isfinite(value)) return non_finite(value);
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), r.ptr);
}

}  // namespace vblast
