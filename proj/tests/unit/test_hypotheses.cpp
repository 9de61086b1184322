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
#include "phagesim/hypotheses.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>

using namespace phagesim;
using phagesim::testing::reference_params;
using phagesim::testing::standard_history;

namespace
{

const ValidationEntry& entry(const std::vector<ValidationEntry>& list, const std::string& id)
{
    auto it = std::find_if(list.begin(), list.end(), [&](const ValidationEntry& e) {
        return e.id == id;
    });
    if (it == list.end()) {
        throw std::runtime_error("missing entry " + id);
    }
    return *it;
}

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST(ComputeNu, ReferenceValue)
{
    EXPECT_NEAR(compute_nu(reference_params()), 5.8092157414038131805, 1e-12);
}

TEST(ComputeNu, CollapsesWithoutCoinfection)
{
    auto p = reference_params();
    p.k2   = 0.0;
    EXPECT_DOUBLE_EQ(compute_nu(p), 20.0);
}

TEST(ComputeNu, VanishesWithoutInoculation)
{
    auto p = reference_params();
    p.d    = 1e-12;
    EXPECT_LT(compute_nu(p), 1e-12);
    EXPECT_GE(compute_nu(p), 0.0);
}

TEST(ComputeNu, NeedsDoseBelowCap)
{
    auto p = reference_params();
    p.d    = 100.0;
    EXPECT_THROW(compute_nu(p), PreconditionError);
}

TEST(CheckSigma, DefaultBridgePasses)
{
    double slope = 0.0;
    const auto entries = check_sigma(SigmaFn(100.0), 1e-4, &slope);
    EXPECT_EQ(entries.size(), 6u);
    for (const auto& e : entries) {
        EXPECT_TRUE(e.pass) << e.id;
    }
    EXPECT_NEAR(slope, 1.512, 1e-6);
}

TEST(CheckSigma, TinyThresholdPasses)
{
    for (const auto& e : check_sigma(SigmaFn(1.0))) {
        EXPECT_TRUE(e.pass) << e.id;
    }
}

TEST(CheckSigma, SwappedSlopesBreakSmoothness)
{
    // slope 0 at M and 1 at M + 1: monotone, but sigma' jumps at both joints
    const auto entries = check_sigma(SigmaFn::with_bridge_slopes(100.0, 0.0, 1.0));
    EXPECT_FALSE(entry(entries, "H2.1(i).joints").pass);
    EXPECT_TRUE(entry(entries, "H2.1(i).identity").pass);
    EXPECT_TRUE(entry(entries, "H2.1(i).plateau").pass);
}

TEST(CheckSigma, OvershootingBridgeFailsMonotonicity)
{
    const auto entries = check_sigma(SigmaFn::with_bridge_slopes(100.0, 5.0, 5.0));
    EXPECT_FALSE(entry(entries, "H2.1(i).monotone").pass);
    EXPECT_FALSE(entry(entries, "H2.1(i).slope-bound").pass);
}

TEST(CheckInitialMass, ZeroPhagePassesWithMarginI0)
{
    const auto p    = reference_params();
    const auto hist = History::zero_phage(0.8, 0.37, 1.0);
    const auto e    = check_initial_mass(hist, p, SigmaFn(p.M));
    EXPECT_TRUE(e.pass);
    EXPECT_DOUBLE_EQ(e.margin, 0.37);
}

TEST(CheckInitialMass, ConstantHistoryClosedForm)
{
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    const auto hist = History::constant(1.0, 2.0, 0.0, 1.0);
    EXPECT_NEAR(required_initial_mass(hist, p, sigma), 0.16374615061559637901, 1e-12);
    const auto fail = check_initial_mass(hist, p, sigma);
    EXPECT_FALSE(fail.pass);

    const auto ok = check_initial_mass(History::constant(1.0, 2.0, 0.2, 1.0), p, sigma);
    EXPECT_TRUE(ok.pass);
    EXPECT_NEAR(ok.margin, 0.036253849384403632096, 1e-12);
}

TEST(CheckInitialMass, ReferenceHistory)
{
    const auto p = reference_params();
    EXPECT_NEAR(required_initial_mass(standard_history(), p, SigmaFn(p.M)), 0.40936537653899094751, 1e-12);
}

TEST(InfectedCohort, ConstantHistoryClosedForm)
{
    // k1 s q (1 - e^{-mu tau}) / mu
    const auto p = reference_params();
    const SigmaFn sigma(p.M);
    EXPECT_NEAR(infected_cohort_mass(standard_history(), p, sigma), 0.45317311730504547, 1e-12);
    EXPECT_TRUE(check_infected_cohort(standard_history(), p, sigma).pass);
    EXPECT_EQ(check_infected_cohort(standard_history(), p, sigma).id, "H2.2(kernel)");
}

TEST(InfectedCohort, StrongerThanStatedCondition)
{
    auto p  = reference_params();
    p.mu    = 1.0;
    const SigmaFn sigma(p.M);
    const auto hist = History::constant(1.0, 20.0, 0.8, 1.0);
    EXPECT_NEAR(required_initial_mass(hist, p, sigma), 2.0 * std::exp(-1.0), 1e-12);
    EXPECT_NEAR(infected_cohort_mass(hist, p, sigma), 2.0 * (1.0 - std::exp(-1.0)), 1e-10);
    EXPECT_TRUE(check_initial_mass(hist, p, sigma).pass);
    EXPECT_FALSE(check_infected_cohort(hist, p, sigma).pass);
}

TEST(CheckInitialMass, SmoothHistoryMatchesQuadrature)
{
    // int_{-1}^0 (1 + t)(3 + t) dt = 3 - 2 + 1/3
    const auto p    = reference_params();
    const auto hist = History::from_functions(
        [](double t) {
            return 1.0 + t;
        },
        [](double t) {
            return 3.0 + t;
        },
        0.0, 1.0);
    const double expected = 0.1 * std::exp(-0.2) * (4.0 / 3.0);
    EXPECT_NEAR(required_initial_mass(hist, p, SigmaFn(p.M)), expected, 1e-9);
}

TEST(CheckDelayHypotheses, ReferencePasses)
{
    const auto entries = check_delay_hypotheses(standard_history(), reference_params());
    for (const auto& e : entries) {
        EXPECT_TRUE(e.pass) << e.id;
        EXPECT_GT(e.margin, 0.0) << e.id;
    }
    const auto& ii = entry(entries, "H2.3(ii)");
    EXPECT_NEAR(ii.lhs, 28.187307530779820061, 1e-10);
    EXPECT_NEAR(ii.rhs, 2.0, 1e-14);
    EXPECT_NEAR(entry(entries, "H2.3(iii)").rhs, 0.97712220652813582374, 1e-12);
    EXPECT_NEAR(entry(entries, "H2.3(iv)").rhs, 48.856110326406791187, 1e-10);
    EXPECT_NEAR(entry(entries, "H2.3(ii).burst").lhs, 8.1873075307798185867, 1e-12);
}

TEST(CheckDelayHypotheses, LargeBacterialHistoryFailsThird)
{
    const auto entries = check_delay_hypotheses(History::constant(2.0, 10.0, 1.0, 1.0), reference_params());
    std::vector<std::string> failed;
    for (const auto& e : entries) {
        if (!e.pass) {
            failed.push_back(e.id);
        }
    }
    EXPECT_EQ(failed, std::vector<std::string>{"H2.3(iii)"});
    EXPECT_DOUBLE_EQ(entry(entries, "H2.3(iii)").lhs, 2.0);
}

TEST(CheckDelayHypotheses, SmallBurstFails)
{
    auto p = reference_params();
    p.b    = 1.0;
    const auto entries = check_delay_hypotheses(standard_history(), p);
    const auto& burst  = entry(entries, "H2.3(ii).burst");
    EXPECT_FALSE(burst.pass);
    EXPECT_NEAR(burst.lhs, 0.81873075307798185867, 1e-14);
}

TEST(CheckDelayHypotheses, PhageBelowNuFailsFirst)
{
    const auto p    = reference_params();
    const auto hist = History::constant(0.5, 0.5 * compute_nu(p), 1.0, 1.0);
    EXPECT_FALSE(entry(check_delay_hypotheses(hist, p), "H2.3(i)").pass);
}

TEST(CheckDose, ReferencePasses)
{
    DoseChain chain;
    const auto entries = check_dose(reference_params(), &chain);
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_TRUE(entries[0].pass);
    EXPECT_TRUE(entries[1].pass);
    EXPECT_NEAR(entries[1].rhs, 17.214027581601697519, 1e-10);
    EXPECT_TRUE(chain.holds);
    EXPECT_DOUBLE_EQ(chain.threshold, 5.0);
    EXPECT_NEAR(chain.nu, 5.8092157414038131805, 1e-12);
    EXPECT_DOUBLE_EQ(chain.d_over_m, 20.0);
    EXPECT_DOUBLE_EQ(chain.m_cap, 100.0);
}

TEST(CheckDose, SmallDoseFails)
{
    auto p = reference_params();
    p.d    = 10.0;
    const auto entries = check_dose(p);
    EXPECT_TRUE(entries[0].pass);
    EXPECT_FALSE(entries[1].pass);
    EXPECT_NEAR(entries[1].rhs, 18.740781029301909744, 1e-10);
}

TEST(CheckDose, ReducesWithoutCoinfection)
{
    auto p = reference_params();
    p.k2   = 0.0;
    EXPECT_DOUBLE_EQ(check_dose(p)[1].rhs, 5.0);
}

TEST(MinimalDose, Values)
{
    auto p = reference_params();
    EXPECT_NEAR(minimal_dose(p), 17.583038076559057113, 1e-10);
    p.k2 = 0.0;
    EXPECT_DOUBLE_EQ(minimal_dose(p), 5.0);
    p.k2 = 0.1;
    EXPECT_NEAR(minimal_dose(p), 27.222622425338814559, 1e-10);
}

TEST(MinimalDose, MatchesBisectionOnMargin)
{
    auto p = reference_params();
    double lo = 5.0, hi = 99.0;
    for (int n = 0; n < 200 && hi - lo > 1e-11; ++n) {
        p.d = 0.5 * (lo + hi);
        (check_dose(p)[1].margin > 0.0 ? hi : lo) = p.d;
    }
    EXPECT_NEAR(minimal_dose(reference_params()), 0.5 * (lo + hi), 1e-10);
}

TEST(MinimalDose, IncreasesWithCoinfection)
{
    auto p      = reference_params();
    double prev = 0.0;
    for (double k2 = 0.0; k2 <= 0.5; k2 += 0.01) {
        p.k2           = k2;
        const double d = minimal_dose(p);
        EXPECT_GT(d, prev);
        prev = d;
    }
}

TEST(MinimalDose, Bracketing)
{
    auto p             = reference_params();
    const double d_min = minimal_dose(p);
    p.d                = d_min * (1.0 + 1e-6);
    EXPECT_TRUE(check_dose(p)[1].pass);
    p.d = d_min * (1.0 - 1e-6);
    EXPECT_FALSE(check_dose(p)[1].pass);
}

TEST(InvariantRegion, ReferenceBox)
{
    const auto r = invariant_region(reference_params());
    EXPECT_NEAR(r.s_max, 0.97712220652813582374, 1e-12);
    EXPECT_NEAR(r.i_max, 48.856110326406791187, 1e-10);
    EXPECT_NEAR(r.q_min, 5.8092157414038131805, 1e-12);
    EXPECT_DOUBLE_EQ(r.q_max, 100.0);
}

TEST(InvariantRegion, Limits)
{
    auto p = reference_params();
    p.k2   = 0.0;
    EXPECT_DOUBLE_EQ(invariant_region(p).q_min, 20.0);
    p   = reference_params();
    p.d = 100.0 * (1.0 - 1e-12);
    const auto r = invariant_region(p);
    EXPECT_LT(r.s_max, 1e-10);
    EXPECT_LT(r.i_max, 1e-9);
}

TEST(ValidateAll, ReferenceScenarioPasses)
{
    const auto report = validate_all(reference_params(), standard_history());
    EXPECT_TRUE(report.verdict());
    EXPECT_TRUE(report.failed_ids().empty());
    for (const auto& e : report.entries) {
        EXPECT_GE(e.margin, e.id.rfind("H2.1(i)", 0) == 0 ? -0.0 : 1e-12) << e.id;
    }
    ASSERT_TRUE(report.chain.has_value());
    EXPECT_TRUE(report.chain->holds);
    EXPECT_NE(report.find("H2.2"), nullptr);
    EXPECT_EQ(report.find("nope"), nullptr);
}

TEST(ValidateAll, PerturbedScenarios)
{
    auto p = reference_params();
    p.d    = 10.0;
    EXPECT_EQ(validate_all(p, standard_history()).failed_ids(), std::vector<std::string>{"H2.4(dose)"});

    // S0 = 2 also doubles the initial infected mass that I0 has to cover
    EXPECT_EQ(sorted(validate_all(reference_params(), History::constant(2.0, 10.0, 1.0, 1.0)).failed_ids()),
              (std::vector<std::string>{"H2.2", "H2.2(kernel)", "H2.3(iii)"}));

    // b = 1 shrinks B, which also raises the dose threshold above d = 20
    p   = reference_params();
    p.b = 1.0;
    EXPECT_EQ(sorted(validate_all(p, standard_history()).failed_ids()),
              (std::vector<std::string>{"H2.3(ii).burst", "H2.4(dose)"}));
}

TEST(ValidateAll, DoseAboveCapReportsPrecondition)
{
    auto p = reference_params();
    p.d    = 150.0;
    const auto report = validate_all(p, standard_history());
    EXPECT_FALSE(report.verdict());
}

TEST(ValidationReport, JsonAndText)
{
    const auto report = validate_all(reference_params(), standard_history());
    const auto doc    = nlohmann::json::parse(report.to_json());
    EXPECT_TRUE(doc["verdict"].get<bool>());
    EXPECT_EQ(doc["entries"].size(), report.entries.size());
    EXPECT_TRUE(doc["chain"]["holds"].get<bool>());
    EXPECT_NE(report.to_text().find("verdict: PASS"), std::string::npos);
}
