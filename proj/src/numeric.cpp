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

#include "vibqpe/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace vibqpe {

Count ceil_log2(Count n) {
  if (n < 1) {
    throw std::invalid_argument("ceil_log2 requires n >= 1, got " + std::to_string(n));
  }
  Count bits = 0;
  Count value = 1;
  while (value < n) {
    value <<= 1;
    ++bits;
  }
  return bits;
}

bool is_power_of_two(Count n) { return n >= 1 && (n & (n - 1)) == 0; }

Count ceil_div(Count n, Count d) {
  if (d < 1 || n < 0) {
    throw std::invalid_argument("ceil_div requires n >= 0 and d >= 1");
  }
  return n / d + (n % d != 0 ? 1 : 0);
}

Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in cost addition");
  }
  return out;
}

Count checked_mul(Count a, Count b) {
  Count out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in cost multiplication");
  }
  return out;
}

void ExactSum::add(double x) {
  std::size_t kept = 0;
  for (double y : partials_) {
    if (std::fabs(x) < std::fabs(y)) {
      std::swap(x, y);
    }
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) {
      partials_[kept++] = lo;
    }
    x = hi;
  }
  partials_.resize(kept);
  partials_.push_back(x);
}

double ExactSum::value() const {
  std::size_t n = partials_.size();
  if (n == 0) {
    return 0.0;
  }
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) {
      break;
    }
  }
  // Round-half-even correction when the remaining partials push past a tie.
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    const double yr = x - hi;
    if (y == yr) {
      hi = x;
    }
  }
  return hi;
}

double exact_sum(std::span<const double> values) {
  ExactSum acc;
  for (double v : values) {
    acc.add(v);
  }
  return acc.value();
}

Count snapped_ceil(double x) {
  const double nearest = std::nearbyint(x);
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x));
  if (std::fabs(x - nearest) <= tol) {
    return static_cast<Count>(nearest);
  }
  return static_cast<Count>(std::ceil(x));
}

}  // namespace vibqpe
