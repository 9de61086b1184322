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
#include "phagesim/sigma.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace phagesim
{

namespace
{

void check_argument(double x)
{
    if (!(x >= 0.0)) {
        throw DomainError(fmt::format("sigma is defined on [0, inf), got x = {}", x));
    }
}

} // namespace

SigmaFn::SigmaFn(double m_threshold)
    : SigmaFn(m_threshold, 1.0, 0.0)
{
}

SigmaFn SigmaFn::with_bridge_slopes(double m_threshold, double slope_at_m, double slope_at_m_plus_one)
{
    return SigmaFn(m_threshold, slope_at_m, slope_at_m_plus_one);
}

SigmaFn::SigmaFn(double m_threshold, double slope_left, double slope_right)
    : m_threshold(m_threshold)
    , m_slope_left(slope_left)
    , m_slope_right(slope_right)
    , m_coeffs{}
{
    if (!(m_threshold > 0.0) || !std::isfinite(m_threshold)) {
        throw DomainError(fmt::format("truncation threshold M must be finite and positive, got {}", m_threshold));
    }
    // g(0) = 0, g'(0) = s0, g''(0) = 0, g(1) = 1, g'(1) = s1, g''(1) = 0
    const double r = 1.0 - slope_left;
    const double q = slope_right - slope_left;
    m_coeffs    = {0.0, slope_left, 0.0, 10.0 * r - 4.0 * q, 7.0 * q - 15.0 * r, 6.0 * r - 3.0 * q};
}

double SigmaFn::value(double x) const
{
    check_argument(x);
    if (x <= m_threshold) {
        return x;
    }
    if (x >= m_threshold + 1.0) {
        return m_threshold + 1.0;
    }
    const double u = x - m_threshold;
    const auto& c  = m_coeffs;
    const double g = u * (c[1] + u * u * (c[3] + u * (c[4] + u * c[5])));
    return m_threshold + g;
}

double SigmaFn::derivative(double x) const
{
    check_argument(x);
    if (x <= m_threshold) {
        return 1.0;
    }
    if (x >= m_threshold + 1.0) {
        return 0.0;
    }
    const double u = x - m_threshold;
    const auto& c  = m_coeffs;
    return c[1] + u * u * (3.0 * c[3] + u * (4.0 * c[4] + u * 5.0 * c[5]));
}

} // namespace phagesim
