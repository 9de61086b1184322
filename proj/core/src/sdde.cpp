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
#include "phagesim/sdde.hpp"
#include "phagesim/dde.hpp"
#include "phagesim/equilibria.hpp"
#include "phagesim/errors.hpp"
#include "phagesim/model.hpp"
#include "phagesim/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace phagesim
{

namespace
{

// sigma is only defined on [0, inf); predictor overshoots below zero are evaluated at 0
State nonnegative(State x)
{
    x.s = std::max(x.s, 0.0);
    x.i = std::max(x.i, 0.0);
    x.q = std::max(x.q, 0.0);
    return x;
}

double quantile(std::vector<double>& values, double level)
{
    if (values.empty()) {
        return 0.0;
    }
    const double pos = level * static_cast<double>(values.size() - 1);
    const auto lo    = static_cast<std::size_t>(std::floor(pos));
    const auto hi    = std::min(lo + 1, values.size() - 1);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo), values.end());
    const double v_lo = values[lo];
    if (hi == lo) {
        return v_lo;
    }
    const double v_hi = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(lo) + 1, values.end());
    return v_lo + (pos - static_cast<double>(lo)) * (v_hi - v_lo);
}

struct PathSummary {
    std::vector<State> nodes;
    std::vector<double> deviation;
    double sup_deviation = 0.0;
};

} // namespace

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::stratonovich_heun:
        return "stratonovich-heun";
    case Scheme::ito_euler_corrected:
        return "ito-euler-corrected";
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view name)
{
    if (name == "stratonovich-heun") {
        return Scheme::stratonovich_heun;
    }
    if (name == "ito-euler-corrected") {
        return Scheme::ito_euler_corrected;
    }
    throw ConfigError(fmt::format("unknown scheme '{}' (expected stratonovich-heun or ito-euler-corrected)", name));
}

Trajectory sample_path(const Parameters& p, const History& hist, const PathConfig& cfg, std::uint64_t path_index)
{
    p.check();
    if (cfg.K < 8) {
        throw DomainError(fmt::format("need at least 8 steps per delay, got K = {}", cfg.K));
    }
    if (!(cfg.T > 0.0)) {
        throw DomainError(fmt::format("path horizon must be positive, got T = {}", cfg.T));
    }
    if (std::fabs(hist.tau() - p.tau) > 1e-12 * p.tau) {
        throw DomainError(fmt::format("history covers [-{}, 0] but tau = {}", hist.tau(), p.tau));
    }

    const SigmaFn sigma(p.M);
    const double h       = p.tau / cfg.K;
    const double sqrt_h  = std::sqrt(h);
    const auto n         = static_cast<std::size_t>(std::ceil(cfg.T / h - 1e-9));
    Trajectory traj(h, std::make_shared<const History>(hist), false);
    traj.reserve(n + 1);
    traj.push_back(hist.at(0.0));

    const auto noise = [&](const State& x) {
        return diffusion(nonnegative(x), p, sigma);
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto j        = static_cast<std::ptrdiff_t>(i) - cfg.K;
        const State lag_now = traj.at_step(j);
        const State lag_next = traj.at_step(j + 1);
        const auto z        = normal_pair(cfg.seed, path_index, i);
        const State dw{sqrt_h * z[0], 0.0, sqrt_h * z[1]};
        const State y = traj.state(i);

        State next;
        if (cfg.scheme == Scheme::stratonovich_heun) {
            next = heun_step(
                y, h, dw,
                [&](const State& x) {
                    return drift(x, lag_now, p, sigma);
                },
                [&](const State& x) {
                    return drift(nonnegative(x), lag_next, p, sigma);
                },
                noise);
        }
        else {
            next = ito_euler_step(
                y, h, dw,
                [&](const State& x) {
                    return drift(x, lag_now, p, sigma);
                },
                [&](const State& x) {
                    return stratonovich_correction(x, p, sigma);
                },
                noise);
        }
        enforce_positivity(next, traj.time(i + 1), traj.positivity);
        traj.push_back(next);
    }
    return traj;
}

double EnsembleStats::mean_sup_deviation() const
{
    if (path_sup_deviation.empty()) {
        return 0.0;
    }
    return std::accumulate(path_sup_deviation.begin(), path_sup_deviation.end(), 0.0) /
           static_cast<double>(path_sup_deviation.size());
}

EnsembleStats ensemble(const Parameters& p, const History& hist, const PathConfig& cfg, std::size_t n,
                       const Reference& reference, double window_lo, double window_hi, double threshold,
                       unsigned threads)
{
    if (n == 0) {
        throw ConfigError("ensemble needs at least one path");
    }
    if (!(window_lo <= window_hi)) {
        throw ConfigError(fmt::format("ensemble window [{}, {}] is empty", window_lo, window_hi));
    }

    const double h       = p.tau / cfg.K;
    const auto n_steps   = static_cast<std::size_t>(std::ceil(cfg.T / h - 1e-9));
    std::vector<State> ref_nodes(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * h;
        ref_nodes[k]   = std::holds_alternative<State>(reference) ? std::get<State>(reference)
                                                                  : std::get<Trajectory>(reference).dense_eval(t);
    }

    std::vector<PathSummary> paths(n);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n) {
                return;
            }
            try {
                const Trajectory traj = sample_path(p, hist, cfg, idx);
                PathSummary summary;
                summary.nodes = traj.states();
                summary.deviation.resize(traj.size());
                for (std::size_t k = 0; k < traj.size(); ++k) {
                    const double dev     = max_abs(traj.state(k) - ref_nodes[k]);
                    summary.deviation[k] = dev;
                    const double t       = traj.time(k);
                    if (t >= window_lo - 1e-12 && t <= window_hi + 1e-12) {
                        summary.sup_deviation = std::max(summary.sup_deviation, dev);
                    }
                }
                paths[idx] = std::move(summary);
            }
            catch (...) {
                failures[idx] = std::current_exception();
            }
        }
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers          = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    for (std::size_t idx = 0; idx < n; ++idx) {
        if (!failures[idx]) {
            continue;
        }
        try {
            std::rethrow_exception(failures[idx]);
        }
        catch (const Error& e) {
            throw PathError(cfg.seed, idx, e.category(),
                            fmt::format("path {} (seed {}) failed: {}", idx, cfg.seed, e.what()));
        }
        catch (const std::exception& e) {
            throw PathError(cfg.seed, idx, "internal", fmt::format("path {} (seed {}) failed: {}", idx, cfg.seed, e.what()));
        }
    }

    EnsembleStats stats;
    stats.n_paths   = n;
    stats.step      = h;
    stats.window_lo = window_lo;
    stats.window_hi = window_hi;
    stats.threshold = threshold;
    const std::size_t n_nodes = n_steps + 1;
    stats.times.resize(n_nodes);
    stats.mean.assign(n_nodes, State{});
    stats.dev_p50.resize(n_nodes);
    stats.dev_p95.resize(n_nodes);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        stats.times[k] = static_cast<double>(k) * h;
    }
    for (const auto& path : paths) {
        for (std::size_t k = 0; k < n_nodes; ++k) {
            stats.mean[k] += path.nodes[k];
        }
        stats.path_sup_deviation.push_back(path.sup_deviation);
        if (path.sup_deviation >= threshold) {
            ++stats.exceed_count;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> column(n);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        stats.mean[k] *= inv_n;
        for (std::size_t idx = 0; idx < n; ++idx) {
            column[idx] = paths[idx].deviation[k];
        }
        stats.dev_p50[k] = quantile(column, 0.5);
        stats.dev_p95[k] = quantile(column, 0.95);
    }
    return stats;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n)
{
    if (n == 0) {
        return {0.0, 1.0};
    }
    constexpr double z = 1.959963984540054;
    const double nn    = static_cast<double>(n);
    const double p_hat = static_cast<double>(successes) / nn;
    const double denom = 1.0 + z * z / nn;
    const double centre = (p_hat + z * z / (2.0 * nn)) / denom;
    const double half   = z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, std::min(centre - half, p_hat)), std::min(1.0, std::max(centre + half, p_hat))};
}

std::optional<double> log_probability_slope(const std::vector<ConcentrationRow>& rows)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (const auto& row : rows) {
        if (row.exceed == 0 || row.eps <= 0.0) {
            continue;
        }
        const double x = 1.0 / (row.eps * row.eps);
        const double y = std::log(row.p_hat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) {
        return std::nullopt;
    }
    const double nn = static_cast<double>(count);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

ConcentrationTable concentration_experiment(const Parameters& p, const History& hist, const std::vector<double>& eps_list,
                                            double rho, double kappa1, double kappa2, std::size_t n,
                                            const PathConfig& base, unsigned threads)
{
    if (!(1.0 < kappa1 && kappa1 < kappa2)) {
        throw ConfigError(fmt::format("need 1 < kappa1 < kappa2, got kappa1 = {}, kappa2 = {}", kappa1, kappa2));
    }
    if (!(rho > 0.0)) {
        throw ConfigError(fmt::format("deviation radius rho must be positive, got {}", rho));
    }
    const State e0         = bacteria_free(p);
    const StabilityInfo st = stability_at_e0(p);
    if (!(st.eta > 0.0)) {
        throw ConfigError(fmt::format("E0 is not attracting (eta = {}); the concentration window is undefined", st.eta));
    }

    // c grows with the horizon, so extend until the horizon covers the window it induces
    double horizon = base.T;
    double c       = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const Trajectory det = integrate(p, hist, horizon, base.K);
        c                    = decay_prefactor(det, e0, st.eta);
        if (!(c > rho)) {
            throw ConfigError(fmt::format("window is empty: c = {} <= rho = {}", c, rho));
        }
        const double scale = std::log(c / rho) / st.eta;
        t_lo               = kappa1 * scale;
        t_hi               = kappa2 * scale;
        if (t_hi <= horizon) {
            break;
        }
        horizon = 1.25 * t_hi;
    }

    ConcentrationTable table;
    table.prefactor = c;
    table.eta       = st.eta;
    for (double eps : eps_list) {
        Parameters noisy = p;
        noisy.eps        = eps;
        PathConfig cfg   = base;
        cfg.T            = t_hi;
        const auto stats = ensemble(noisy, hist, cfg, n, e0, t_lo, t_hi, 2.0 * rho, threads);

        ConcentrationRow row;
        row.eps    = eps;
        row.rho    = rho;
        row.t_lo   = t_lo;
        row.t_hi   = t_hi;
        row.n      = n;
        row.exceed = stats.exceed_count;
        row.p_hat  = static_cast<double>(row.exceed) / static_cast<double>(n);
        std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.exceed, n);
        row.log_p_hat = row.exceed > 0 ? std::log(row.p_hat) : -std::numeric_limits<double>::infinity();
        table.rows.push_back(row);
    }
    table.log_slope = log_probability_slope(table.rows);
    return table;
}

} // namespace phagesim
