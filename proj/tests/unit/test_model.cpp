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
#include "phagesim/model.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace phagesim;
using phagesim::testing::coexistence_params;
using phagesim::testing::reference_params;

TEST(Drift, VanishesAtBacteriaFreeEquilibrium)
{
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    const State e0{0.0, 0.0, 20.0};
    const State r = drift(e0, e0, p, sigma);
    EXPECT_LT(max_abs(r), 1e-14);
}

TEST(Drift, HandSubstitution)
{
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    const State r = drift({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, p, sigma);
    EXPECT_DOUBLE_EQ(r.s, 0.5);
    EXPECT_DOUBLE_EQ(r.i, 0.0);
    EXPECT_DOUBLE_EQ(r.q, 20.0);
}

TEST(Drift, CoexistencePointResidual)
{
    const auto p = coexistence_params();
    const SigmaFn sigma(p.M);
    // rounded point: loose bound
    const State rounded{0.5746, 0.2604, 5.0};
    EXPECT_LT(max_abs(drift(rounded, rounded, p, sigma)), 1e-3);
    // independently computed closed form at 30 digits
    const State exact{0.57465311654024572571, 0.26041734419160267304, 5.0};
    EXPECT_LT(max_abs(drift(exact, exact, p, sigma)), 1e-10);
}

TEST(Drift, NonFiniteInputIsNumericError)
{
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(drift({nan, 0.0, 1.0}, {0.0, 0.0, 1.0}, p, sigma), NumericError);
    EXPECT_THROW(drift({1.0, 0.0, 1.0}, {0.0, 0.0, INFINITY}, p, sigma), NumericError);
}

TEST(DriftNoCoinfection, BacteriaFreeEquilibrium)
{
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    const BacteriaPhage e0{0.0, 20.0};
    const BacteriaPhage r = drift_no_coinfection(e0, e0, p, sigma);
    EXPECT_EQ(r.s, 0.0);
    EXPECT_EQ(r.q, 0.0);
}

TEST(DriftNoCoinfection, HandSubstitution)
{
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    const BacteriaPhage r = drift_no_coinfection({1.0, 1.0}, {1.0, 1.0}, p, sigma);
    EXPECT_DOUBLE_EQ(r.s, 0.4);
    EXPECT_NEAR(r.q, 19.718730753077980428, 1e-13);
}

TEST(DriftNoCoinfection, EqualsReducedDriftBitwise)
{
    auto p = reference_params();
    p.k2   = 0.0;
    const SigmaFn sigma(p.M);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 120.0);
    for (int n = 0; n < 2000; ++n) {
        const State now{u(gen), u(gen), u(gen)};
        const State del{u(gen), u(gen), u(gen)};
        const State full      = drift(now, del, p, sigma);
        const BacteriaPhage r = drift_no_coinfection({now.s, now.q}, {del.s, del.q}, p, sigma);
        EXPECT_EQ(full.s, r.s);
        EXPECT_EQ(full.q, r.q);
    }
}

TEST(Diffusion, Values)
{
    auto p = reference_params(0.01);
    const SigmaFn sigma(p.M);
    EXPECT_EQ(diffusion({0.0, 5.0, 0.0}, p, sigma), (State{0.0, 0.0, 0.0}));
    const State a = diffusion({2.0, 7.0, 3.0}, p, sigma);
    EXPECT_DOUBLE_EQ(a.s, 0.02);
    EXPECT_EQ(a.i, 0.0);
    EXPECT_DOUBLE_EQ(a.q, 0.03);
    const State b = diffusion({200.0, 0.0, 200.0}, p, sigma);
    EXPECT_DOUBLE_EQ(b.s, 1.01);
    EXPECT_DOUBLE_EQ(b.q, 1.01);
}

TEST(StratonovichCorrection, Values)
{
    auto p = reference_params(0.1);
    const SigmaFn sigma(p.M);
    const State c = stratonovich_correction({2.0, 1.0, 4.0}, p, sigma);
    EXPECT_DOUBLE_EQ(c.s, 0.01);
    EXPECT_EQ(c.i, 0.0);
    EXPECT_DOUBLE_EQ(c.q, 0.02);
    EXPECT_EQ(stratonovich_correction({200.0, 0.0, 300.0}, p, sigma), (State{0.0, 0.0, 0.0}));
}

TEST(Noise, VanishesWithoutEps)
{
    const auto p = reference_params(0.0);
    const SigmaFn sigma(p.M);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 150.0);
    for (int n = 0; n < 200; ++n) {
        const State x{u(gen), u(gen), u(gen)};
        EXPECT_EQ(diffusion(x, p, sigma), (State{0.0, 0.0, 0.0}));
        EXPECT_EQ(stratonovich_correction(x, p, sigma), (State{0.0, 0.0, 0.0}));
    }
}

TEST(Parameters, CheckRejectsInvalid)
{
    auto p = reference_params();
    EXPECT_NO_THROW(p.check());
    p.tau = -1.0;
    EXPECT_THROW(p.check(), ParameterError);
    p     = reference_params();
    p.k2  = -0.1;
    EXPECT_THROW(p.check(), ParameterError);
    p     = reference_params();
    p.eps = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(p.check(), ParameterError);
    p   = reference_params();
    p.k2 = 0.0;
    EXPECT_NO_THROW(p.check());
}

TEST(Parameters, CheckNamesField)
{
    auto p = reference_params();
    p.mu   = 0.0;
    try {
        p.check();
        FAIL() << "expected ParameterError";
    }
    catch (const ParameterError& e) {
        EXPECT_EQ(e.field(), "mu");
    }
}
