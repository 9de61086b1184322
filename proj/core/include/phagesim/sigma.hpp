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
#ifndef PHAGESIM_SIGMA_HPP
#define PHAGESIM_SIGMA_HPP

#include <array>

namespace phagesim
{

/**
 * @brief Smooth truncated identity used for every state feedback in the model.
 *
 * sigma(x) = x on [0, M], sigma(x) = M + 1 on [M + 1, inf), and on (M, M + 1)
 * a quintic Hermite bridge with zero second derivative at both joints.
 * The default bridge has slope 1 at M and slope 0 at M + 1, so the
 * function is C^2, monotone and its largest slope is 1.512 (reached at
 * x = M + 0.4).
 *
 * Other joint slopes can be requested through with_bridge_slopes(); those
 * bridges generally break smoothness or monotonicity and exist so the
 * validators can be exercised against bad inputs.
 */
class SigmaFn
{
public:
    explicit SigmaFn(double m_threshold);

    static SigmaFn with_bridge_slopes(double m_threshold, double slope_at_m, double slope_at_m_plus_one);

    /// sigma(x); throws DomainError for x < 0 or NaN.
    double value(double x) const;

    /// sigma'(x); throws DomainError for x < 0 or NaN.
    double derivative(double x) const;

    double operator()(double x) const
    {
        return value(x);
    }

    double threshold() const
    {
        return m_threshold;
    }

    double slope_at_m() const
    {
        return m_slope_left;
    }

    double slope_at_m_plus_one() const
    {
        return m_slope_right;
    }

    /// Coefficients c0..c5 of the bridge g(u), u = x - M in [0, 1], sigma = M + g(u).
    const std::array<double, 6>& bridge_coefficients() const
    {
        return m_coeffs;
    }

private:
    SigmaFn(double m_threshold, double slope_left, double slope_right);

    double m_threshold;
    double m_slope_left;
    double m_slope_right;
    std::array<double, 6> m_coeffs;
};

} // namespace phagesim

#endif // PHAGESIM_SIGMA_HPP
