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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "vibqpe/numeric.hpp"

using namespace vibqpe;

TEST(numeric, ceil_log2) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(35), 6);
  EXPECT_EQ(ceil_log2(1024), 10);
  EXPECT_EQ(ceil_log2(1025), 11);
  for (Count k = 1; k < 62; ++k) {
    EXPECT_EQ(ceil_log2(Count{1} << k), k);
    EXPECT_EQ(ceil_log2((Count{1} << k) + 1), k + 1);
  }
}

TEST(numeric, is_power_of_two) {
  EXPECT_FALSE(is_power_of_two(0));
  EXPECT_TRUE(is_power_of_two(1));
  EXPECT_TRUE(is_power_of_two(2));
  EXPECT_FALSE(is_power_of_two(3));
  EXPECT_TRUE(is_power_of_two(64));
  EXPECT_FALSE(is_power_of_two(-4));
}

TEST(numeric, ceil_div) {
  EXPECT_EQ(ceil_div(1024, 8), 128);
  EXPECT_EQ(ceil_div(1025, 8), 129);
  EXPECT_EQ(ceil_div(1, 8), 1);
  EXPECT_EQ(ceil_div(0, 8), 0);
}

TEST(numeric, checked_arithmetic_overflows_loudly) {
  const Count big = std::numeric_limits<Count>::max();
  EXPECT_THROW(checked_add(big, 1), std::exception);
  EXPECT_THROW(checked_mul(big / 2, 3), std::exception);
  EXPECT_EQ(checked_mul(1 << 20, 1 << 20), Count{1} << 40);
}

TEST(numeric, exact_sum_is_correctly_rounded) {
  std::vector<double> v{1e100, 1.0, -1e100, 1e-20};
  EXPECT_EQ(exact_sum(v), 1.0 + 1e-20);
  std::vector<double> w(10, 0.1);
  EXPECT_EQ(exact_sum(w), 1.0);
  // Order does not matter.
  std::vector<double> a{0.1, 0.2, 0.3}, b{0.3, 0.1, 0.2};
  EXPECT_EQ(exact_sum(a), exact_sum(b));
}

TEST(numeric, snapped_ceil) {
  EXPECT_EQ(snapped_ceil(4442.88), 4443);
  EXPECT_EQ(snapped_ceil(3.0), 3);
  // A ratio that should be integral but lands one ulp above.
  EXPECT_EQ(snapped_ceil(std::nextafter(3.0, 4.0)), 3);
  EXPECT_EQ(snapped_ceil(3.001), 4);
}
