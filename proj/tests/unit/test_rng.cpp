/*
* Copyright (C) 2026 phagesim contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "phagesim/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace phagesim;

TEST(Philox, KnownAnswers)
{
    using Block = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(NormalDraw, DeterministicAndConsistent)
{
    const auto a = normal_pair(42, 3, 17);
    const auto b = normal_pair(42, 3, 17);
    EXPECT_EQ(a, b);
    EXPECT_EQ(normal_draw(42, 3, 17, 0), a[0]);
    EXPECT_EQ(normal_draw(42, 3, 17, 1), a[1]);
    EXPECT_NE(normal_pair(43, 3, 17), a);
    EXPECT_NE(normal_pair(42, 4, 17), a);
    EXPECT_NE(normal_pair(42, 3, 18), a);
}

TEST(NormalDraw, Moments)
{
    const int n = 200000;
    double sum[2] = {0.0, 0.0}, sq[2] = {0.0, 0.0}, cross = 0.0, fourth = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto z = normal_pair(1234, static_cast<std::uint64_t>(k % 97), static_cast<std::uint64_t>(k));
        for (int c = 0; c < 2; ++c) {
            sum[c] += z[c];
            sq[c] += z[c] * z[c];
        }
        cross += z[0] * z[1];
        fourth += z[0] * z[0] * z[0] * z[0];
    }
    // 5 standard errors
    for (int c = 0; c < 2; ++c) {
        EXPECT_NEAR(sum[c] / n, 0.0, 5.0 / std::sqrt(n));
        EXPECT_NEAR(sq[c] / n, 1.0, 5.0 * std::sqrt(2.0 / n));
    }
    EXPECT_NEAR(cross / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(fourth / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(NormalDraw, TailFrequency)
{
    // P(|Z| > 1.96) = 0.05
    const int n = 100000;
    int hits    = 0;
    for (int k = 0; k < n; ++k) {
        hits += std::fabs(normal_draw(9, 0, static_cast<std::uint64_t>(k), 0)) > 1.959963984540054;
    }
    EXPECT_NEAR(hits / static_cast<double>(n), 0.05, 5.0 * std::sqrt(0.05 * 0.95 / n));
}
