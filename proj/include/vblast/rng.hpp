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

#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace vblast {

/// Philox4x32-10 block function (Salmon et al., Random123).
///
/// Maps a 128-bit counter and 64-bit key to 128 pseudo-random bits. Pure;
/// exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// The key is the master seed; the upper half of the Philox counter holds the
/// partition index and the lower half a running block counter, so streams with
/// distinct partition indices draw from disjoint counter ranges. Sequences
/// depend only on (master_seed, partition_index) and are reproducible across
/// runs and platforms up to the libm calls in the Gaussian transform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t partition_index) noexcept
      : seed_(master_seed), partition_(partition_index) {}

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t partition_index() const noexcept { return partition_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t counter() const noexcept { return consumed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double next_uniform() noexcept;
  /// Two independent standard normal variates (Box–Muller).
  std::pair<double, double> next_gaussian_pair() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t partition_;
  std::uint64_t block_ = 0;
  std::uint64_t consumed_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

}  // namespace vblast
