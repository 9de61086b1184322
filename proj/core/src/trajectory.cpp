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
#include "phagesim/trajectory.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace phagesim
{

namespace
{

constexpr double clamp_tolerance    = 1e-12;
constexpr double positivity_floor   = -1e-6;
constexpr double divergence_ceiling = 1e12;

void enforce_component(double& x, const char* name, double t, PositivityLog& log)
{
    if (!std::isfinite(x) || std::fabs(x) > divergence_ceiling) {
        throw DivergenceError(t, fmt::format("component {} diverged to {} at t = {}", name, x, t));
    }
    if (x >= 0.0) {
        return;
    }
    if (x < positivity_floor) {
        throw PositivityError(t, fmt::format("component {} = {} below {} at t = {}; step too large or inputs invalid",
                                             name, x, positivity_floor, t));
    }
    if (x < -clamp_tolerance) {
        ++log.warnings;
    }
    else {
        ++log.clamped;
    }
    x = 0.0;
}

} // namespace

void enforce_positivity(State& x, double t, PositivityLog& log)
{
    enforce_component(x.s, "S", t, log);
    enforce_component(x.i, "I", t, log);
    enforce_component(x.q, "Q", t, log);
}

Trajectory::Trajectory(double step, std::shared_ptr<const History> history, bool with_slopes)
    : m_step(step)
    , m_history(std::move(history))
    , m_with_slopes(with_slopes)
{
    if (!(step > 0.0)) {
        throw DomainError(fmt::format("trajectory step must be positive, got {}", step));
    }
    if (!m_history) {
        throw DomainError("trajectory needs a history");
    }
}

void Trajectory::reserve(std::size_t n)
{
    m_nodes.reserve(n);
    if (m_with_slopes) {
        m_slopes.reserve(n);
    }
}

void Trajectory::push_back(const State& x)
{
    m_nodes.push_back(x);
    if (m_with_slopes) {
        m_slopes.emplace_back();
    }
}

void Trajectory::set_slope(std::size_t i, const State& dx)
{
    m_slopes.at(i) = dx;
}

State Trajectory::at_step(std::ptrdiff_t j) const
{
    if (j >= 0) {
        return m_nodes.at(static_cast<std::size_t>(j));
    }
    return m_history->at(static_cast<double>(j) * m_step);
}

State Trajectory::dense_eval(double t) const
{
    if (t < 0.0) {
        if (t < -tau() * (1.0 + 1e-12)) {
            throw DomainError(fmt::format("t = {} is before the history start -{}", t, tau()));
        }
        return m_history->at(std::max(t, -tau()));
    }
    if (m_nodes.empty() || t > t_end()) {
        throw DomainError(fmt::format("t = {} is beyond the trajectory end {}", t, t_end()));
    }
    const double x = t / m_step;
    auto k         = static_cast<std::size_t>(x);
    if (k >= m_nodes.size() - 1) {
        return m_nodes.back();
    }
    const double u = x - static_cast<double>(k);
    if (u == 0.0) {
        return m_nodes[k];
    }
    const State& y0 = m_nodes[k];
    const State& y1 = m_nodes[k + 1];
    if (!m_with_slopes) {
        return y0 + u * (y1 - y0);
    }
    const double u2  = u * u;
    const double u3  = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * y0 + (h10 * m_step) * m_slopes[k] + h01 * y1 + (h11 * m_step) * m_slopes[k + 1];
}

} // namespace phagesim
