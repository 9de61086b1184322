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
#include "phagesim/history.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace phagesim
{

namespace
{

double pchip_end_slope(double h, double delta0, double delta1)
{
    double d = ((2.0 * h + h) * delta0 - h * delta1) / (2.0 * h);
    if (d * delta0 <= 0.0) {
        return 0.0;
    }
    if (delta0 * delta1 < 0.0 && std::fabs(d) > std::fabs(3.0 * delta0)) {
        return 3.0 * delta0;
    }
    return d;
}

} // namespace

UniformPchip::UniformPchip(double t_start, double step, std::vector<double> values)
    : m_t_start(t_start)
    , m_step(step)
    , m_values(std::move(values))
    , m_slopes(m_values.size(), 0.0)
{
    const std::size_t n = m_values.size();
    if (n < 2) {
        throw DomainError("interpolation grid needs at least two nodes");
    }
    std::vector<double> delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        delta[k] = (m_values[k + 1] - m_values[k]) / m_step;
    }
    if (n == 2) {
        m_slopes[0] = m_slopes[1] = delta[0];
        return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        // equal spacing: weighted harmonic mean reduces to the plain one
        if (delta[k - 1] * delta[k] > 0.0) {
            m_slopes[k] = 2.0 / (1.0 / delta[k - 1] + 1.0 / delta[k]);
        }
    }
    m_slopes[0]     = pchip_end_slope(m_step, delta[0], delta[1]);
    m_slopes[n - 1] = pchip_end_slope(m_step, delta[n - 2], delta[n - 3]);
}

double UniformPchip::operator()(double t) const
{
    const double x    = (t - m_t_start) / m_step;
    const auto last   = static_cast<std::ptrdiff_t>(m_values.size()) - 1;
    auto k            = static_cast<std::ptrdiff_t>(std::floor(x));
    k                 = std::clamp<std::ptrdiff_t>(k, 0, last - 1);
    const double u    = x - static_cast<double>(k);
    if (u == 0.0) {
        return m_values[k];
    }
    if (u == 1.0) {
        return m_values[k + 1];
    }
    const double u2  = u * u;
    const double u3  = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * m_values[k] + h10 * m_step * m_slopes[k] + h01 * m_values[k + 1] + h11 * m_step * m_slopes[k + 1];
}

History::History(std::vector<double> s_values, std::vector<double> q_values, double i0, double tau)
    : m_tau(tau)
    , m_i0(i0)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError(fmt::format("history length tau must be positive, got {}", tau));
    }
    if (s_values.size() != q_values.size() || s_values.size() < 2) {
        throw DomainError(fmt::format("history needs matching S0/Q0 sample vectors with at least two nodes (got {} and {})",
                                      s_values.size(), q_values.size()));
    }
    if (!(i0 >= 0.0) || !std::isfinite(i0)) {
        throw DomainError(fmt::format("initial infected concentration must be finite and >= 0, got {}", i0));
    }
    for (std::size_t k = 0; k < s_values.size(); ++k) {
        if (!(s_values[k] >= 0.0) || !(q_values[k] >= 0.0) || !std::isfinite(s_values[k]) ||
            !std::isfinite(q_values[k])) {
            throw DomainError(fmt::format("history samples must be finite and >= 0 (node {}: S0 = {}, Q0 = {})", k,
                                          s_values[k], q_values[k]));
        }
    }
    const double step = tau / static_cast<double>(s_values.size() - 1);
    m_s               = UniformPchip(-tau, step, std::move(s_values));
    m_q               = UniformPchip(-tau, step, std::move(q_values));
}

History History::constant(double s, double q, double i0, double tau, int n_grid)
{
    if (n_grid < 1) {
        throw DomainError("history grid needs at least one interval");
    }
    const auto n = static_cast<std::size_t>(n_grid) + 1;
    return History(std::vector<double>(n, s), std::vector<double>(n, q), i0, tau);
}

History History::zero_phage(double s, double i0, double tau, int n_grid)
{
    return constant(s, 0.0, i0, tau, n_grid);
}

History History::sampled(std::vector<double> s_values, std::vector<double> q_values, double i0, double tau)
{
    return History(std::move(s_values), std::move(q_values), i0, tau);
}

History History::from_functions(const std::function<double(double)>& s0, const std::function<double(double)>& q0,
                                double i0, double tau, int n_grid)
{
    if (n_grid < 1) {
        throw DomainError("history grid needs at least one interval");
    }
    std::vector<double> s(static_cast<std::size_t>(n_grid) + 1);
    std::vector<double> q(s.size());
    for (int k = 0; k <= n_grid; ++k) {
        const double t = (k == n_grid) ? 0.0 : -tau + k * (tau / n_grid);
        s[k]           = s0(t);
        q[k]           = q0(t);
    }
    return History(std::move(s), std::move(q), i0, tau);
}

double History::s0(double t) const
{
    if (!(t >= -m_tau - 1e-12 * m_tau) || !(t <= 0.0)) {
        throw DomainError(fmt::format("history evaluated at t = {} outside [-{}, 0]", t, m_tau));
    }
    return m_s(t);
}

double History::q0(double t) const
{
    if (!(t >= -m_tau - 1e-12 * m_tau) || !(t <= 0.0)) {
        throw DomainError(fmt::format("history evaluated at t = {} outside [-{}, 0]", t, m_tau));
    }
    return m_q(t);
}

} // namespace phagesim
