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
#ifndef PHAGESIM_SDDE_HPP
#define PHAGESIM_SDDE_HPP

#include "phagesim/history.hpp"
#include "phagesim/parameters.hpp"
#include "phagesim/trajectory.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace phagesim
{

enum class Scheme
{
    stratonovich_heun,   ///< predictor-corrector, same increment in both stages
    ito_euler_corrected, ///< Euler-Maruyama on the Ito form (drift + stratonovich_correction)
};

std::string_view to_string(Scheme s);
/// Inverse of to_string; throws ConfigError for unknown names.
Scheme scheme_from_string(std::string_view name);

struct PathConfig {
    std::uint64_t seed = 0;
    int K              = 64; ///< steps per delay, h = tau / K
    double T           = 10.0;
    Scheme scheme      = Scheme::stratonovich_heun;
};

inline double hadamard(double a, double b)
{
    return a * b;
}

inline State hadamard(const State& a, const State& b)
{
    return {a.s * b.s, a.i * b.i, a.q * b.q};
}

/**
 * @brief One Stratonovich Heun step for dX = f dt + g(X) o dW (componentwise noise).
 *
 * drift_now(x) is the drift at the current time, drift_next(x) the drift at
 * t + h (they differ only through delayed arguments). The same increment
 * dw is used in predictor and corrector.
 */
template <class X, class DriftNow, class DriftNext, class Noise>
X heun_step(const X& x, double h, const X& dw, DriftNow&& drift_now, DriftNext&& drift_next, Noise&& noise)
{
    const X f0   = drift_now(x);
    const X g0   = noise(x);
    const X pred = x + h * f0 + hadamard(g0, dw);
    return x + (0.5 * h) * (f0 + drift_next(pred)) + 0.5 * hadamard(g0 + noise(pred), dw);
}

/// One Euler-Maruyama step for the Ito form dX = (f + c) dt + g(X) dW.
template <class X, class Drift, class Correction, class Noise>
X ito_euler_step(const X& x, double h, const X& dw, Drift&& drift_now, Correction&& correction, Noise&& noise)
{
    return x + h * (drift_now(x) + correction(x)) + hadamard(noise(x), dw);
}

/**
 * @brief One sample path of the noisy delayed system on [0, cfg.T].
 *
 * Step h = tau / K, so delayed arguments fall on nodes. Increments are
 * sqrt(h) N(0,1) draws keyed by (seed, path_index, step, component):
 * component 0 drives S, component 1 drives Q. With eps = 0 both schemes
 * reduce to deterministic one-step methods (Heun resp. explicit Euler).
 */
Trajectory sample_path(const Parameters& p, const History& hist, const PathConfig& cfg, std::uint64_t path_index = 0);

/// Deterministic trajectory or fixed point to measure deviations against.
using Reference = std::variant<State, Trajectory>;

struct EnsembleStats {
    std::size_t n_paths = 0;
    double step         = 0.0;
    std::vector<double> times;
    std::vector<State> mean;     ///< arithmetic mean over paths, per node
    std::vector<double> dev_p50; ///< per-node median of max-component |Z - ref|
    std::vector<double> dev_p95; ///< per-node 95% quantile of the same
    std::vector<double> path_sup_deviation; ///< per path, sup over window nodes
    double window_lo = 0.0;
    double window_hi = 0.0;
    double threshold = std::numeric_limits<double>::infinity();
    std::size_t exceed_count = 0; ///< paths with sup deviation >= threshold

    double mean_sup_deviation() const;
};

/**
 * @brief n independent paths (indices 0..n-1) and their deviation statistics.
 *
 * Paths run concurrently on `threads` workers (0: hardware concurrency);
 * the reduction runs in path-index order, so results do not depend on
 * scheduling. A failing path is rethrown as PathError carrying its seed
 * and index.
 */
EnsembleStats ensemble(const Parameters& p, const History& hist, const PathConfig& cfg, std::size_t n,
                       const Reference& reference, double window_lo, double window_hi,
                       double threshold = std::numeric_limits<double>::infinity(), unsigned threads = 0);

struct ConcentrationRow {
    double eps  = 0.0;
    double rho  = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::size_t n      = 0;
    std::size_t exceed = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double log_p_hat = -std::numeric_limits<double>::infinity();
};

struct ConcentrationTable {
    std::vector<ConcentrationRow> rows;
    double prefactor = 0.0; ///< c of the deterministic decay fit
    double eta       = 0.0;
    std::optional<double> log_slope; ///< slope of ln p_hat against 1/eps^2 (rows with exceed > 0)
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n);

/// Least-squares slope of ln p_hat against 1/eps^2 over rows with a nonzero count; empty when fewer than two.
std::optional<double> log_probability_slope(const std::vector<ConcentrationRow>& rows);

/**
 * @brief Empirical P(sup_{t in L} |Z^eps(t) - E0|_max >= 2 rho) for each eps.
 *
 * L = [kappa1 ln(c/rho)/eta, kappa2 ln(c/rho)/eta] with eta from the E0
 * spectrum and c the prefactor of the deterministic decay (computed over
 * a horizon covering L). Every eps row reuses the same seed and path
 * indices, so the rows are coupled. base.T is the initial deterministic
 * horizon; paths run to the end of L.
 *
 * Throws ConfigError unless 1 < kappa1 < kappa2, rho > 0 and c > rho.
 */
ConcentrationTable concentration_experiment(const Parameters& p, const History& hist, const std::vector<double>& eps_list,
                                            double rho, double kappa1, double kappa2, std::size_t n,
                                            const PathConfig& base, unsigned threads = 0);

} // namespace phagesim

#endif // PHAGESIM_SDDE_HPP
