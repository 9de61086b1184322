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
#include "phagesim/errors.hpp"
#include "phagesim/sigma.hpp"

#include <gtest/gtest.h>

#include <cmath>

using phagesim::SigmaFn;

TEST(Sigma, IdentityBelowThreshold)
{
    const SigmaFn sigma(100.0);
    EXPECT_EQ(sigma(0.0), 0.0);
    EXPECT_EQ(sigma(3.0), 3.0);
    EXPECT_EQ(sigma(100.0), 100.0);
    for (double x = 0.0; x <= 100.0; x += 0.37) {
        EXPECT_EQ(sigma(x), x);
    }
}

TEST(Sigma, PlateauAboveThresholdPlusOne)
{
    const SigmaFn sigma(100.0);
    EXPECT_EQ(sigma(101.0), 101.0);
    EXPECT_EQ(sigma(102.0), 101.0);
    EXPECT_EQ(sigma(1e9), 101.0);
}

TEST(Sigma, BridgeValues)
{
    // g(u) = u + 4u^3 - 7u^4 + 3u^5 on u = x - M
    const SigmaFn sigma(100.0);
    EXPECT_DOUBLE_EQ(sigma(100.5), 100.65625);
    EXPECT_DOUBLE_EQ(sigma.derivative(100.5), 1.4375);
    EXPECT_NEAR(sigma.derivative(100.4), 1.512, 1e-12);
    EXPECT_GT(sigma(100.5), 100.0);
    EXPECT_LT(sigma(100.5), 101.0);

    const auto& c = sigma.bridge_coefficients();
    EXPECT_DOUBLE_EQ(c[0], 0.0);
    EXPECT_DOUBLE_EQ(c[1], 1.0);
    EXPECT_DOUBLE_EQ(c[2], 0.0);
    EXPECT_DOUBLE_EQ(c[3], 4.0);
    EXPECT_DOUBLE_EQ(c[4], -7.0);
    EXPECT_DOUBLE_EQ(c[5], 3.0);
}

TEST(Sigma, DerivativeRegions)
{
    const SigmaFn sigma(100.0);
    EXPECT_EQ(sigma.derivative(50.0), 1.0);
    EXPECT_EQ(sigma.derivative(200.0), 0.0);
    EXPECT_NEAR(sigma.derivative(100.0), 1.0, 1e-15);
    EXPECT_NEAR(sigma.derivative(101.0), 0.0, 1e-15);
}

TEST(Sigma, DerivativeMatchesFiniteDifferences)
{
    const SigmaFn sigma(100.0);
    const double h = 1e-6;
    for (double x = 100.05; x < 101.0; x += 0.05) {
        const double fd = (sigma(x + h) - sigma(x - h)) / (2.0 * h);
        EXPECT_NEAR(sigma.derivative(x), fd, 1e-6 * std::max(1.0, std::fabs(fd))) << "x = " << x;
    }
}

TEST(Sigma, MonotoneDenseScan)
{
    const SigmaFn sigma(100.0);
    double prev = sigma(99.0);
    for (double x = 99.0; x <= 102.0; x += 1e-4) {
        const double v = sigma(x);
        EXPECT_GE(v, prev);
        EXPECT_GE(sigma.derivative(x), 0.0);
        EXPECT_LE(sigma.derivative(x), 1.9);
        prev = v;
    }
}

TEST(Sigma, NegativeArgumentIsDomainError)
{
    const SigmaFn sigma(100.0);
    EXPECT_THROW(sigma(-1e-3), phagesim::DomainError);
    EXPECT_THROW(sigma.derivative(-1.0), phagesim::DomainError);
}

TEST(Sigma, CustomBridgeSlopes)
{
    const auto swapped = SigmaFn::with_bridge_slopes(100.0, 0.0, 1.0);
    EXPECT_EQ(swapped.slope_at_m(), 0.0);
    EXPECT_EQ(swapped.slope_at_m_plus_one(), 1.0);
    EXPECT_DOUBLE_EQ(swapped(100.0), 100.0);
    EXPECT_DOUBLE_EQ(swapped(101.0), 101.0);
    EXPECT_NEAR(swapped.derivative(100.0 + 1e-12), 0.0, 1e-9);
    EXPECT_NEAR(swapped.derivative(101.0 - 1e-12), 1.0, 1e-9);

    const auto steep = SigmaFn::with_bridge_slopes(100.0, 5.0, 5.0);
    double min_slope = 1.0;
    for (double x = 100.0; x <= 101.0; x += 1e-3) {
        min_slope = std::min(min_slope, steep.derivative(x));
    }
    EXPECT_LT(min_slope, 0.0);
}

TEST(Sigma, InvalidThreshold)
{
    EXPECT_THROW(SigmaFn(0.0), phagesim::Error);
    EXPECT_THROW(SigmaFn(-5.0), phagesim::Error);
}
