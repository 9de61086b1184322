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
#ifndef PHAGESIM_EQUILIBRIA_HPP
#define PHAGESIM_EQUILIBRIA_HPP

#include "phagesim/parameters.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace phagesim
{

/// Which steady states exist besides the bacteria-free one.
enum class Regime
{
    unique_e0,                ///< no coexistence point
    small_dose_efficient,     ///< d <= m alpha/k1 and efficient phages
    large_dose_nonefficient,  ///< d >= m alpha/k1 and weakly efficient phages
    truncation_excluded,      ///< alpha/k1 beyond the identity range of sigma
};

std::string_view to_string(Regime r);

struct CoexistenceResult {
    std::optional<State> point;
    Regime regime = Regime::unique_e0;
};

struct EquilibriumSet {
    std::optional<State> e0; ///< absent when d/m >= M
    std::optional<State> coexistence;
    Regime regime = Regime::unique_e0;
};

struct StabilityInfo {
    std::array<double, 3> eigenvalues{}; ///< (alpha - k1 d/m, -mu, -m)
    bool stable  = false;
    double gamma = 0.0; ///< k1 d/m - alpha
    double eta   = 0.0; ///< min(gamma, m, mu)
    double max_determinant_residual = 0.0;
};

/// (0, 0, d/m); throws ExistenceError when d/m >= M.
State bacteria_free(const Parameters& p);

/**
 * @brief Interior steady state (S_c, I_c, Q_c) when it exists.
 *
 * Q_c = alpha/k1, I_c = (alpha/mu)(1 - e^{-mu tau}) S_c and
 * S_c = mu (k1 d - m alpha) / (alpha (mu k1 (1 - b e^{-mu tau}) + alpha k2 (1 - e^{-mu tau}))).
 * A point with S_c = 0 (d = m alpha/k1) is reported as absent.
 */
CoexistenceResult coexistence(const Parameters& p);

/**
 * @brief Characteristic determinant of the delayed linearisation at E0, for real lambda.
 *
 * | lambda - (alpha - k1 d/m)                    0             0        |
 * | -k1 d/m + k1 e^{-(mu+lambda) tau} d/m        lambda + mu   0        |
 * | k1 d/m - k1 b e^{-(mu+lambda) tau} d/m       k2 d/m        lambda+m |
 */
double characteristic_determinant(const Parameters& p, double lambda);

/**
 * @brief Spectrum at E0, stability flag (strict lambda_1 < 0), gamma and eta.
 *
 * Throws ExistenceError when d/m >= M, and NumericError if the determinant
 * does not vanish at the returned eigenvalues to 1e-10.
 */
StabilityInfo stability_at_e0(const Parameters& p);

EquilibriumSet equilibria(const Parameters& p);

/// Plain-text and JSON renderings of the equilibrium analysis.
std::string equilibrium_report_text(const Parameters& p);
std::string equilibrium_report_json(const Parameters& p);

} // namespace phagesim

#endif // PHAGESIM_EQUILIBRIA_HPP
