// Copyright 2026 The vibqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vibqpe {

/// Integer type for every gate and qubit tally.
using Count = std::int64_t;

/// ⌈log2 n⌉ for n ≥ 1 (0 for n = 1). Throws for n < 1.
Count ceil_log2(Count n);

bool is_power_of_two(Count n);

/// ⌈n / d⌉ for n ≥ 0, d ≥ 1.
Count ceil_div(Count n, Count d);

/// Overflow-checked arithmetic; throws std::overflow_error.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

/// Correctly rounded floating-point summation (Shewchuk partials).
///
/// The result is the double nearest to the exact real sum of the inputs, so
/// two multisets with the same exact sum produce bit-identical results
/// regardless of ordering.
class ExactSum {
 public:
  void add(double x);
  double value() const;

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> values);

/// Ceiling that snaps to the nearest integer when x is within a few ulps of it.
/// Used where a mathematically integral ratio is computed in floating point.
Count snapped_ceil(double x);

}  // namespace vibqpe
