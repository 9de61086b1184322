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
#include "phagesim/equilibria.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace phagesim
{

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::unique_e0:
        return "unique-e0";
    case Regime::small_dose_efficient:
        return "small-dose-efficient";
    case Regime::large_dose_nonefficient:
        return "large-dose-nonefficient";
    case Regime::truncation_excluded:
        return "truncation-excluded";
    }
    return "unknown";
}

State bacteria_free(const Parameters& p)
{
    const double q = p.d / p.m;
    if (!(q < p.M)) {
        throw ExistenceError(
            fmt::format("bacteria-free equilibrium needs d/m < M (so that sigma(d/m) = d/m); got d/m = {}, M = {}", q,
                        p.M));
    }
    return {0.0, 0.0, q};
}

CoexistenceResult coexistence(const Parameters& p)
{
    const double q_c = p.alpha / p.k1;
    // the closed forms assume sigma(Q_c) = Q_c, i.e. Q_c <= M
    if (q_c > p.M) {
        return {std::nullopt, Regime::truncation_excluded};
    }
    const double survival  = p.survival();
    const double burst     = p.effective_burst();
    const double band_edge = (p.alpha / p.mu) * (p.k2 / p.k1) * (1.0 - survival) + 1.0;
    const double critical  = p.m * p.alpha / p.k1;

    Regime regime = Regime::unique_e0;
    if (p.d <= critical && burst > band_edge) {
        regime = Regime::small_dose_efficient;
    }
    else if (p.d >= critical && 1.0 < burst && burst < band_edge) {
        regime = Regime::large_dose_nonefficient;
    }
    if (regime == Regime::unique_e0) {
        return {};
    }

    const double denom = p.alpha * (p.mu * p.k1 * (1.0 - burst) + p.alpha * p.k2 * (1.0 - survival));
    const double s_c   = p.mu * (p.k1 * p.d - p.m * p.alpha) / denom;
    if (!(s_c > 0.0) || !std::isfinite(s_c)) {
        return {};
    }
    const double i_c = (p.alpha / p.mu) * (1.0 - survival) * s_c;
    return {State{s_c, i_c, q_c}, regime};
}

double characteristic_determinant(const Parameters& p, double lambda)
{
    const double q0    = p.d / p.m;
    const double delay = std::exp(-(p.mu + lambda) * p.tau);
    const double a[3][3] = {
        {lambda - (p.alpha - p.k1 * q0), 0.0, 0.0},
        {-p.k1 * q0 + p.k1 * delay * q0, lambda + p.mu, 0.0},
        {p.k1 * q0 - p.k1 * p.b * delay * q0, p.k2 * q0, lambda + p.m},
    };
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

StabilityInfo stability_at_e0(const Parameters& p)
{
    const State e0 = bacteria_free(p);
    StabilityInfo info;
    info.eigenvalues = {p.alpha - p.k1 * e0.q, -p.mu, -p.m};
    info.stable      = info.eigenvalues[0] < 0.0;
    info.gamma       = p.k1 * e0.q - p.alpha;
    info.eta         = std::min({info.gamma, p.m, p.mu});
    for (double lambda : info.eigenvalues) {
        info.max_determinant_residual =
            std::max(info.max_determinant_residual, std::fabs(characteristic_determinant(p, lambda)));
    }
    if (!(info.max_determinant_residual < 1e-10)) {
        throw NumericError(fmt::format("characteristic determinant residual {} at the E0 spectrum",
                                       info.max_determinant_residual));
    }
    return info;
}

EquilibriumSet equilibria(const Parameters& p)
{
    EquilibriumSet set;
    if (p.d / p.m < p.M) {
        set.e0 = bacteria_free(p);
    }
    auto co         = coexistence(p);
    set.coexistence = co.point;
    set.regime      = co.regime;
    return set;
}

std::string equilibrium_report_text(const Parameters& p)
{
    const auto set = equilibria(p);
    std::string out;
    if (set.e0) {
        out += fmt::format("E0          = ({:.10g}, {:.10g}, {:.10g})\n", set.e0->s, set.e0->i, set.e0->q);
    }
    else {
        out += fmt::format("E0          : does not exist (d/m = {:.6g} >= M = {:.6g})\n", p.d / p.m, p.M);
    }
    out += fmt::format("regime      : {}\n", to_string(set.regime));
    if (set.coexistence) {
        const auto& c = *set.coexistence;
        out += fmt::format("coexistence = ({:.10g}, {:.10g}, {:.10g})\n", c.s, c.i, c.q);
    }
    else {
        out += "coexistence : none\n";
    }
    if (set.e0) {
        const auto st = stability_at_e0(p);
        out += fmt::format("eigenvalues : {:.10g}, {:.10g}, {:.10g}\n", st.eigenvalues[0], st.eigenvalues[1],
                           st.eigenvalues[2]);
        out += fmt::format("E0 stable   : {}\n", st.stable ? "yes" : "no");
        out += fmt::format("gamma       : {:.10g}\n", st.gamma);
        out += fmt::format("eta         : {:.10g}\n", st.eta);
    }
    if (!(p.M > p.alpha / p.k1 && p.M > p.d / p.m)) {
        out += "note        : M > alpha/k1 and M > d/m are both needed for the E0 results\n";
    }
    return out;
}

std::string equilibrium_report_json(const Parameters& p)
{
    const auto set = equilibria(p);
    nlohmann::json doc;
    const auto point = [](const State& x) {
        return nlohmann::json{{"S", x.s}, {"I", x.i}, {"Q", x.q}};
    };
    doc["e0"]          = set.e0 ? point(*set.e0) : nlohmann::json(nullptr);
    doc["coexistence"] = set.coexistence ? point(*set.coexistence) : nlohmann::json(nullptr);
    doc["regime"]      = std::string(to_string(set.regime));
    if (set.e0) {
        const auto st    = stability_at_e0(p);
        doc["eigenvalues"] = st.eigenvalues;
        doc["stable"]      = st.stable;
        doc["gamma"]       = st.gamma;
        doc["eta"]         = st.eta;
    }
    return doc.dump(2);
}

} // namespace phagesim
