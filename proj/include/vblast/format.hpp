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

#include <string>

namespace vblast {

/// Fixed notation carrying 12 significant digits, '.' as decimal point
/// regardless of locale. Non-finite values print as nan / inf / -inf.
std::string format_number(double value);

/// Shortest representation that round-trips, locale independent.
std::string format_shortest(double value);

}  // namespace vblast
