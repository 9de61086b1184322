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
#include "phagesim/dde.hpp"
#include "phagesim/errors.hpp"
#include "phagesim/model.hpp"

#include <fmt/format.h>

#include <cmath>

namespace phagesim
{

namespace
{

template <class Rhs>
Trajectory run_rk4(const Parameters& p, const History& hist, double T, int K, State initial, Rhs rhs)
{
    const double h = p.tau / K;
    const auto n   = static_cast<std::size_t>(std::ceil(T / h - 1e-9));
    Trajectory traj(h, std::make_shared<const History>(hist));
    traj.reserve(n + 1);
    traj.push_back(initial);

    // t - tau falls on node i - K; stage midpoints fall halfway between two nodes
    const auto lag_index = [&](std::size_t i) {
        return static_cast<std::ptrdiff_t>(i) - K;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto j  = lag_index(i);
        const State y = traj.state(i);
        State next;
        try {
            const State k1 = rhs(y, traj.at_step(j));
            traj.set_slope(i, k1);
            const State mid = traj.dense_eval((static_cast<double>(j) + 0.5) * h);
            const State k2  = rhs(y + (0.5 * h) * k1, mid);
            const State k3  = rhs(y + (0.5 * h) * k2, mid);
            const State k4  = rhs(y + h * k3, traj.at_step(j + 1));
            next            = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        catch (const DomainError& e) {
            // an intermediate stage left the nonnegative orthant: the step is far too large
            throw PositivityError(traj.time(i), fmt::format("Runge-Kutta stage at t = {} left the domain: {}",
                                                            traj.time(i), e.what()));
        }
        enforce_positivity(next, traj.time(i + 1), traj.positivity);
        traj.push_back(next);
    }
    traj.set_slope(n, rhs(traj.state(n), traj.at_step(lag_index(n))));
    return traj;
}

} // namespace

Trajectory integrate(const Parameters& p, const History& hist, double T, int K, System system)
{
    p.check();
    if (!(T > 0.0)) {
        throw DomainError(fmt::format("integration horizon must be positive, got T = {}", T));
    }
    if (K < 8) {
        throw DomainError(fmt::format("need at least 8 steps per delay, got K = {}", K));
    }
    if (std::fabs(hist.tau() - p.tau) > 1e-12 * p.tau) {
        throw DomainError(fmt::format("history covers [-{}, 0] but tau = {}", hist.tau(), p.tau));
    }
    const SigmaFn sigma(p.M);
    if (system == System::coinfection) {
        return run_rk4(p, hist, T, K, hist.at(0.0), [&](const State& now, const State& lag) {
            return drift(now, lag, p, sigma);
        });
    }
    const State initial{hist.s0(0.0), 0.0, hist.q0(0.0)};
    return run_rk4(p, hist, T, K, initial, [&](const State& now, const State& lag) {
        const auto r = drift_no_coinfection({now.s, now.q}, {lag.s, lag.q}, p, sigma);
        return State{r.s, 0.0, r.q};
    });
}

std::optional<RegionExit> monitor_region(const Trajectory& traj, const RegionBounds& r, double tolerance)
{
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& x = traj.state(i);
        const double t = traj.time(i);
        if (x.s < -tolerance) {
            return RegionExit{t, 'S', x.s, 0.0};
        }
        if (x.s > r.s_max + tolerance) {
            return RegionExit{t, 'S', x.s, r.s_max};
        }
        if (x.i < -tolerance) {
            return RegionExit{t, 'I', x.i, 0.0};
        }
        if (x.i > r.i_max + tolerance) {
            return RegionExit{t, 'I', x.i, r.i_max};
        }
        if (x.q < r.q_min - tolerance) {
            return RegionExit{t, 'Q', x.q, r.q_min};
        }
        if (x.q > r.q_max + tolerance) {
            return RegionExit{t, 'Q', x.q, r.q_max};
        }
    }
    return std::nullopt;
}

double decay_prefactor(const Trajectory& traj, const State& e0, double eta)
{
    double c = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        c = std::max(c, norm2(traj.state(i) - e0) * std::exp(eta * traj.time(i)));
    }
    return c;
}

DecayFit fit_decay(const Trajectory& traj, const State& e0, double window_lo, double window_hi, double eta)
{
    if (!(window_lo < window_hi) || window_lo < 0.0 || window_hi > traj.t_end() * (1.0 + 1e-12)) {
        throw WindowError(fmt::format("decay window [{}, {}] must lie inside [0, {}]", window_lo, window_hi,
                                      traj.t_end()));
    }
    double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time(i);
        if (t < window_lo - 1e-12 || t > window_hi + 1e-12) {
            continue;
        }
        const double dist = norm2(traj.state(i) - e0);
        if (!(dist >= 1e-14)) {
            throw WindowError(fmt::format("|Z - E0| = {} underflows at t = {}; choose an earlier window", dist, t));
        }
        const double y = std::log(dist);
        sum_t += t;
        sum_y += y;
        sum_tt += t * t;
        sum_ty += t * y;
        ++count;
    }
    if (count < 2) {
        throw WindowError(fmt::format("decay window [{}, {}] contains {} nodes, need at least 2", window_lo,
                                      window_hi, count));
    }
    const double n     = static_cast<double>(count);
    const double slope = (n * sum_ty - sum_t * sum_y) / (n * sum_tt - sum_t * sum_t);

    DecayFit fit;
    fit.eta          = eta;
    fit.window_lo    = window_lo;
    fit.window_hi    = window_hi;
    fit.window_nodes = count;
    fit.fitted_rate  = -slope;
    fit.prefactor    = decay_prefactor(traj, e0, eta);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double bound = fit.prefactor * std::exp(-eta * traj.time(i));
        if (bound > 0.0) {
            fit.max_bound_ratio = std::max(fit.max_bound_ratio, norm2(traj.state(i) - e0) / bound);
        }
    }
    fit.rate_ok = fit.fitted_rate >= eta - 0.05 * eta;
    return fit;
}

} // namespace phagesim
