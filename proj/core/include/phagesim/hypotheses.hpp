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
#ifndef PHAGESIM_HYPOTHESES_HPP
#define PHAGESIM_HYPOTHESES_HPP

#include "phagesim/history.hpp"
#include "phagesim/parameters.hpp"
#include "phagesim/sigma.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phagesim
{

/**
 * @brief Invariant box R = [0, s_max] x [0, i_max] x [q_min, q_max].
 */
struct RegionBounds {
    double s_max = 0.0;
    double i_max = 0.0;
    double q_min = 0.0; ///< nu
    double q_max = 0.0; ///< M
};

/**
 * @brief Outcome of one inequality check.
 *
 * margin is oriented so that a positive value means "satisfied with room";
 * strict inequalities need margin > 0, non-strict ones margin >= 0.
 */
struct ValidationEntry {
    std::string id;          ///< e.g. "H2.3(iii)"
    std::string description; ///< the inequality in words
    double lhs    = 0.0;
    double rhs    = 0.0;
    double margin = 0.0;
    bool pass     = false;
};

/// alpha/k1 < nu < d/m < M, reported alongside the dose check.
struct DoseChain {
    double threshold = 0.0; ///< alpha / k1
    double nu        = 0.0;
    double d_over_m  = 0.0;
    double m_cap     = 0.0; ///< M
    bool holds       = false;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;
    std::optional<DoseChain> chain;
    double sigma_slope_bound = 0.0; ///< measured max of sigma' on the scan grid

    bool verdict() const;
    const ValidationEntry* find(const std::string& id) const;
    std::vector<std::string> failed_ids() const;

    std::string to_text() const;
    /// Flat JSON: {"verdict": bool, "entries": [{"hypothesis", "lhs", "rhs", "margin", "pass"}, ...], ...}
    std::string to_json() const;
};

/// Upper bound asserted for sigma' by check_sigma.
inline constexpr double sigma_slope_limit = 1.9;

/**
 * @brief Lower phage bound of the invariant region,
 * nu = d B / (m B + k2 (m M - d)) with B = b e^{-mu tau} mu.
 *
 * Throws PreconditionError when m M <= d.
 */
double compute_nu(const Parameters& p);

/**
 * @brief Dense-grid scan of the sigma invariants.
 *
 * Returns entries for identity on [0, M], plateau beyond M + 1, monotonicity,
 * derivative bound (sigma' <= sigma_slope_limit), agreement of sigma' with
 * centred finite differences, and continuity of sigma' at both joints.
 * `step` is the scan spacing over [0, M + 2].
 */
std::vector<ValidationEntry> check_sigma(const SigmaFn& sigma, double step = 1e-4, double* measured_slope = nullptr);

/// Positivity of the sampled history (continuity holds by construction).
ValidationEntry check_history_positivity(const History& hist);

/**
 * @brief I0 >= k1 e^{-mu tau} int_{-tau}^0 sigma(Q0) S0 ds.
 *
 * The integral is a composite Simpson rule on the history grid, halved until
 * two successive values agree to 1e-10 relative.
 */
ValidationEntry check_initial_mass(const History& hist, const Parameters& p, const SigmaFn& sigma);

/// k1 e^{-mu tau} int_{-tau}^0 sigma(Q0) S0 ds (the right-hand side of check_initial_mass).
double required_initial_mass(const History& hist, const Parameters& p, const SigmaFn& sigma);

/**
 * @brief k1 int_{-tau}^0 e^{mu s} sigma(Q0(s)) S0(s) ds: bacteria infected before t = 0 and still alive at t = 0.
 *
 * The infected compartment satisfies I(t) = J(t) + (I0 - J(0)) e^{-mu t} with
 * J(t) = k1 int_{t-tau}^t e^{-mu (t-s)} sigma(Q(s)) S(s) ds >= 0, so I stays
 * nonnegative for every continuation iff I0 >= J(0). The constant weight
 * e^{-mu tau} of check_initial_mass() underestimates J(0); data passing that
 * check alone can drive I below zero.
 */
double infected_cohort_mass(const History& hist, const Parameters& p, const SigmaFn& sigma);

/**
 * @brief I0 >= infected_cohort_mass(), reported as "H2.2(kernel)" and part of the verdict.
 */
ValidationEntry check_infected_cohort(const History& hist, const Parameters& p, const SigmaFn& sigma);

/**
 * @brief Conditions on the history that the invariant-region argument needs.
 *
 * Entries (worst case over the history grid and its midpoints):
 *   H2.3(i)        (S0(t), I0, Q0(t)) in [0,M] x [0,M] x [nu,M]
 *   H2.3(ii)       (m B + k2 (mM - d)) Q0(t) S0(t) > d mu S0(0)
 *   H2.3(ii).burst b e^{-mu tau} > 1
 *   H2.3(iii)      S0(t) < (mM - d) / (k1 b e^{-mu tau} M)
 *   H2.3(iv)       I0 < (mM - d) / (b e^{-mu tau} mu)
 * Throws PreconditionError when m M <= d.
 */
std::vector<ValidationEntry> check_delay_hypotheses(const History& hist, const Parameters& p);

/**
 * @brief Dose conditions: d/m < M and
 * d > (alpha m / k1) (B + k2 (M - d/m)) / B.
 *
 * When `chain` is given it receives the ordering alpha/k1 < nu < d/m < M
 * (nu is left at 0 when m M <= d).
 */
std::vector<ValidationEntry> check_dose(const Parameters& p, DoseChain* chain = nullptr);

/**
 * @brief Smallest inoculation rate satisfying the dose condition (as an equality):
 * d_min = (alpha m / k1) (B + k2 M) / (B + (alpha / k1) k2).
 */
double minimal_dose(const Parameters& p);

/// Box R; throws PreconditionError when m M <= d.
RegionBounds invariant_region(const Parameters& p);

/// Every check above, in order, for one parameter/history pair.
ValidationReport validate_all(const Parameters& p, const History& hist);

} // namespace phagesim

#endif // PHAGESIM_HYPOTHESES_HPP
