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
#include "phagesim/hypotheses.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace phagesim
{

namespace
{

ValidationEntry strict_less(std::string id, std::string description, double lhs, double rhs)
{
    return {std::move(id), std::move(description), lhs, rhs, rhs - lhs, rhs - lhs > 0.0};
}

ValidationEntry strict_greater(std::string id, std::string description, double lhs, double rhs)
{
    return {std::move(id), std::move(description), lhs, rhs, lhs - rhs, lhs - rhs > 0.0};
}

// B = b e^{-mu tau} mu
double lysis_weight(const Parameters& p)
{
    return p.effective_burst() * p.mu;
}

void require_dose_below_cap(const Parameters& p, const char* what)
{
    if (!(p.m * p.M > p.d)) {
        throw PreconditionError(fmt::format("{} requires m*M > d (the chain d/m < M of the dose condition); "
                                            "got m*M = {}, d = {}",
                                            what, p.m * p.M, p.d));
    }
}

double simpson(const std::function<double(double)>& f, double a, double b, int n)
{
    const double h = (b - a) / n;
    double acc     = f(a) + f(b);
    for (int k = 1; k < n; ++k) {
        acc += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
    }
    return acc * h / 3.0;
}

} // namespace

bool ValidationReport::verdict() const
{
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) {
        return e.pass;
    });
}

const ValidationEntry* ValidationReport::find(const std::string& id) const
{
    auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) {
        return e.id == id;
    });
    return it == entries.end() ? nullptr : &*it;
}

std::vector<std::string> ValidationReport::failed_ids() const
{
    std::vector<std::string> ids;
    for (const auto& e : entries) {
        if (!e.pass) {
            ids.push_back(e.id);
        }
    }
    return ids;
}

std::string ValidationReport::to_text() const
{
    std::string out = fmt::format("{:<22} {:>14} {:>14} {:>14}  {:<4}  {}\n", "hypothesis", "lhs", "rhs", "margin",
                                  "pass", "condition");
    for (const auto& e : entries) {
        out += fmt::format("{:<22} {:>14.6g} {:>14.6g} {:>14.6g}  {:<4}  {}\n", e.id, e.lhs, e.rhs, e.margin,
                           e.pass ? "yes" : "NO", e.description);
    }
    if (chain) {
        out += fmt::format("chain alpha/k1 < nu < d/m < M: {:.6g} < {:.6g} < {:.6g} < {:.6g}  ({})\n", chain->threshold,
                           chain->nu, chain->d_over_m, chain->m_cap, chain->holds ? "holds" : "violated");
    }
    out += fmt::format("measured max sigma': {:.6g}\n", sigma_slope_bound);
    out += fmt::format("verdict: {}\n", verdict() ? "PASS" : "FAIL");
    return out;
}

std::string ValidationReport::to_json() const
{
    nlohmann::json doc;
    doc["verdict"] = verdict();
    auto& list     = doc["entries"];
    list           = nlohmann::json::array();
    for (const auto& e : entries) {
        list.push_back({{"hypothesis", e.id},
                        {"description", e.description},
                        {"lhs", e.lhs},
                        {"rhs", e.rhs},
                        {"margin", e.margin},
                        {"pass", e.pass}});
    }
    if (chain) {
        doc["chain"] = {{"alpha_over_k1", chain->threshold},
                        {"nu", chain->nu},
                        {"d_over_m", chain->d_over_m},
                        {"M", chain->m_cap},
                        {"holds", chain->holds}};
    }
    doc["sigma_slope_bound"] = sigma_slope_bound;
    return doc.dump(2);
}

double compute_nu(const Parameters& p)
{
    require_dose_below_cap(p, "nu");
    const double B = lysis_weight(p);
    return p.d * B / (p.m * B + p.k2 * (p.m * p.M - p.d));
}

std::vector<ValidationEntry> check_sigma(const SigmaFn& sigma, double step, double* measured_slope)
{
    const double M       = sigma.threshold();
    const double top     = M + 2.0;
    const auto n         = static_cast<long>(std::ceil(top / step));
    const double fd_step = 1e-6;

    double identity_err = 0.0;
    double plateau_err  = 0.0;
    double min_slope    = std::numeric_limits<double>::infinity();
    double max_slope    = -std::numeric_limits<double>::infinity();
    double min_increase = std::numeric_limits<double>::infinity();
    double fd_err       = 0.0;
    double prev         = sigma(0.0);

    for (long k = 0; k <= n; ++k) {
        const double x  = std::min(static_cast<double>(k) * step, top);
        const double v  = sigma(x);
        const double dv = sigma.derivative(x);
        if (x <= M) {
            identity_err = std::max(identity_err, std::fabs(v - x));
        }
        else if (x >= M + 1.0) {
            plateau_err = std::max(plateau_err, std::fabs(v - (M + 1.0)));
        }
        min_slope = std::min(min_slope, dv);
        max_slope = std::max(max_slope, dv);
        if (k > 0) {
            min_increase = std::min(min_increase, v - prev);
        }
        prev = v;

        const bool near_joint = std::fabs(x - M) <= fd_step || std::fabs(x - M - 1.0) <= fd_step;
        if (x >= fd_step && !near_joint) {
            const double fd = (sigma(x + fd_step) - sigma(x - fd_step)) / (2.0 * fd_step);
            fd_err          = std::max(fd_err, std::fabs(fd - dv) / std::max(1.0, std::fabs(dv)));
        }
    }

    const auto& c           = sigma.bridge_coefficients();
    const double bridge_in  = c[1];
    const double bridge_out = c[1] + 3.0 * c[3] + 4.0 * c[4] + 5.0 * c[5];
    const double joint_jump = std::max(std::fabs(bridge_in - 1.0), std::fabs(bridge_out));

    if (measured_slope) {
        *measured_slope = max_slope;
    }

    const double monotone_margin = std::min(min_slope, min_increase);
    return {
        {"H2.1(i).identity", "sigma(x) = x on [0, M]", identity_err, 0.0, -identity_err, identity_err == 0.0},
        {"H2.1(i).plateau", "sigma(x) = M + 1 on [M + 1, inf)", plateau_err, 0.0, -plateau_err, plateau_err == 0.0},
        {"H2.1(i).monotone", "sigma' >= 0 and sigma nondecreasing", monotone_margin, 0.0, monotone_margin,
         monotone_margin >= 0.0},
        {"H2.1(i).slope-bound", "max sigma' <= C", max_slope, sigma_slope_limit, sigma_slope_limit - max_slope,
         max_slope <= sigma_slope_limit},
        {"H2.1(i).derivative", "sigma' matches centred differences (rel 1e-6)", fd_err, 1e-6, 1e-6 - fd_err,
         fd_err <= 1e-6},
        {"H2.1(i).joints", "sigma' continuous at M and M + 1", joint_jump, 1e-12, 1e-12 - joint_jump,
         joint_jump <= 1e-12},
    };
}

ValidationEntry check_history_positivity(const History& hist)
{
    double low = std::numeric_limits<double>::infinity();
    for (double v : hist.s_samples()) {
        low = std::min(low, v);
    }
    for (double v : hist.q_samples()) {
        low = std::min(low, v);
    }
    low = std::min(low, hist.i0());
    return {"H2.1(ii)", "S0, Q0 >= 0 on [-tau, 0] and I0 >= 0", low, 0.0, low, low >= 0.0};
}

namespace
{

// Simpson on the history grid, refined until two successive values agree to 1e-10 relative
double history_integral(const History& hist, const std::function<double(double)>& integrand)
{
    int n = hist.grid_size();
    if (n % 2 != 0) {
        n *= 2;
    }
    double coarse = simpson(integrand, -hist.tau(), 0.0, n);
    for (;;) {
        n *= 2;
        const double fine = simpson(integrand, -hist.tau(), 0.0, n);
        const bool done   = std::fabs(fine - coarse) <= 1e-10 * std::fabs(fine) || fine == coarse;
        coarse            = fine;
        if (done || n >= (1 << 22)) {
            break;
        }
    }
    return coarse;
}

} // namespace

double required_initial_mass(const History& hist, const Parameters& p, const SigmaFn& sigma)
{
    return p.k1 * p.survival() * history_integral(hist, [&](double t) {
               return sigma(hist.q0(t)) * hist.s0(t);
           });
}

double infected_cohort_mass(const History& hist, const Parameters& p, const SigmaFn& sigma)
{
    return p.k1 * history_integral(hist, [&](double t) {
               return std::exp(p.mu * t) * sigma(hist.q0(t)) * hist.s0(t);
           });
}

ValidationEntry check_initial_mass(const History& hist, const Parameters& p, const SigmaFn& sigma)
{
    const double required = required_initial_mass(hist, p, sigma);
    const double margin   = hist.i0() - required;
    return {"H2.2", "I0 >= k1 e^{-mu tau} int sigma(Q0) S0", hist.i0(), required, margin, margin >= 0.0};
}

ValidationEntry check_infected_cohort(const History& hist, const Parameters& p, const SigmaFn& sigma)
{
    const double required = infected_cohort_mass(hist, p, sigma);
    const double margin   = hist.i0() - required;
    return {"H2.2(kernel)", "I0 >= k1 int e^{mu s} sigma(Q0(s)) S0(s) ds (keeps I >= 0)", hist.i0(), required, margin,
            margin >= 0.0};
}

std::vector<ValidationEntry> check_delay_hypotheses(const History& hist, const Parameters& p)
{
    require_dose_below_cap(p, "the delay hypotheses");
    const double nu     = compute_nu(p);
    const auto region   = invariant_region(p);
    const double weight = p.m * lysis_weight(p) + p.k2 * (p.m * p.M - p.d);

    const int samples     = 2 * hist.grid_size();
    const double half_h   = hist.tau() / samples;
    double box_margin     = std::min(hist.i0(), p.M - hist.i0());
    double min_product    = std::numeric_limits<double>::infinity();
    double max_s          = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= samples; ++j) {
        const double t = (j == samples) ? 0.0 : -hist.tau() + j * half_h;
        const double s = hist.s0(t);
        const double q = hist.q0(t);
        box_margin     = std::min({box_margin, s, p.M - s, q - nu, p.M - q});
        min_product    = std::min(min_product, weight * q * s);
        max_s          = std::max(max_s, s);
    }

    return {
        {"H2.3(i)", "(S0(t), I0, Q0(t)) in [0,M] x [0,M] x [nu,M]", box_margin, 0.0, box_margin, box_margin >= 0.0},
        strict_greater("H2.3(ii)", "(m B + k2 (mM - d)) Q0(t) S0(t) > d mu S0(0)", min_product,
                       p.d * p.mu * hist.s0(0.0)),
        strict_greater("H2.3(ii).burst", "b e^{-mu tau} > 1", p.effective_burst(), 1.0),
        strict_less("H2.3(iii)", "S0(t) < (mM - d) / (k1 b e^{-mu tau} M)", max_s, region.s_max),
        strict_less("H2.3(iv)", "I0 < (mM - d) / (b e^{-mu tau} mu)", hist.i0(), region.i_max),
    };
}

std::vector<ValidationEntry> check_dose(const Parameters& p, DoseChain* chain)
{
    const double B         = lysis_weight(p);
    const double d_over_m  = p.d / p.m;
    const double threshold = (p.alpha * p.m / p.k1) * (B + p.k2 * (p.M - d_over_m)) / B;

    if (chain) {
        chain->threshold = p.alpha / p.k1;
        chain->d_over_m  = d_over_m;
        chain->m_cap     = p.M;
        chain->nu        = (p.m * p.M > p.d) ? compute_nu(p) : 0.0;
        chain->holds     = p.m * p.M > p.d && chain->threshold < chain->nu && chain->nu < d_over_m && d_over_m < p.M;
    }
    return {
        strict_less("H2.4(d/m<M)", "d/m < M", d_over_m, p.M),
        strict_greater("H2.4(dose)", "d > (alpha m / k1) (B + k2 (M - d/m)) / B", p.d, threshold),
    };
}

double minimal_dose(const Parameters& p)
{
    const double B       = lysis_weight(p);
    const double ratio   = p.alpha / p.k1;
    return ratio * p.m * (B + p.k2 * p.M) / (B + ratio * p.k2);
}

RegionBounds invariant_region(const Parameters& p)
{
    require_dose_below_cap(p, "the invariant region");
    const double slack = p.m * p.M - p.d;
    const double burst = p.effective_burst();
    return {
        slack / (p.k1 * burst * p.M),
        slack / (burst * p.mu),
        compute_nu(p),
        p.M,
    };
}

ValidationReport validate_all(const Parameters& p, const History& hist)
{
    p.check();
    if (std::fabs(hist.tau() - p.tau) > 1e-12 * p.tau) {
        throw PreconditionError(
            fmt::format("history covers [-{}, 0] but the delay is tau = {}", hist.tau(), p.tau));
    }
    ValidationReport report;
    const SigmaFn sigma(p.M);
    auto sigma_entries = check_sigma(sigma, 1e-4, &report.sigma_slope_bound);
    report.entries.insert(report.entries.end(), sigma_entries.begin(), sigma_entries.end());
    report.entries.push_back(check_history_positivity(hist));
    report.entries.push_back(check_initial_mass(hist, p, sigma));
    report.entries.push_back(check_infected_cohort(hist, p, sigma));
    if (p.m * p.M > p.d) {
        auto delay = check_delay_hypotheses(hist, p);
        report.entries.insert(report.entries.end(), delay.begin(), delay.end());
    }
    else {
        report.entries.push_back({"H2.3", "needs m M > d to define nu and the region", p.d, p.m * p.M,
                                  p.m * p.M - p.d, false});
    }
    DoseChain chain;
    auto dose = check_dose(p, &chain);
    report.entries.insert(report.entries.end(), dose.begin(), dose.end());
    report.chain = chain;
    return report;
}

} // namespace phagesim
