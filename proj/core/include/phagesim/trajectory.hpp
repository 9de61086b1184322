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
#ifndef PHAGESIM_TRAJECTORY_HPP
#define PHAGESIM_TRAJECTORY_HPP

#include "phagesim/history.hpp"
#include "phagesim/parameters.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace phagesim
{

/// Counters of the negative-undershoot policy applied after every step.
struct PositivityLog {
    std::size_t clamped  = 0; ///< components in [-1e-12, 0) reset to zero
    std::size_t warnings = 0; ///< components in [-1e-6, -1e-12) reset to zero
};

/**
 * @brief Uniformly stepped solution (S, I, Q) on [0, t_end] with its history.
 *
 * Nodes sit at t_i = i * h, where h = tau / K. When node derivatives are
 * stored, dense output is cubic Hermite; otherwise (stochastic paths) it is
 * piecewise linear. For t in [-tau, 0) dense output falls back to the
 * history.
 */
class Trajectory
{
public:
    Trajectory(double step, std::shared_ptr<const History> history, bool with_slopes = true);

    void reserve(std::size_t n);
    void push_back(const State& x);
    void set_slope(std::size_t i, const State& dx);

    std::size_t size() const
    {
        return m_nodes.size();
    }
    bool empty() const
    {
        return m_nodes.empty();
    }
    double step() const
    {
        return m_step;
    }
    double tau() const
    {
        return m_history->tau();
    }
    double time(std::size_t i) const
    {
        return static_cast<double>(i) * m_step;
    }
    double t_end() const
    {
        return m_nodes.empty() ? 0.0 : time(m_nodes.size() - 1);
    }
    const State& state(std::size_t i) const
    {
        return m_nodes[i];
    }
    const std::vector<State>& states() const
    {
        return m_nodes;
    }
    bool has_slopes() const
    {
        return m_with_slopes;
    }
    const State& slope(std::size_t i) const
    {
        return m_slopes[i];
    }
    const History& history() const
    {
        return *m_history;
    }
    std::shared_ptr<const History> shared_history() const
    {
        return m_history;
    }

    /// State at any t in [-tau, t_end]; exact at nodes. Throws DomainError outside.
    State dense_eval(double t) const;

    /// State at t = j * h for integer j >= -K (history below 0, node otherwise).
    State at_step(std::ptrdiff_t j) const;

    PositivityLog positivity;

private:
    double m_step;
    std::shared_ptr<const History> m_history;
    bool m_with_slopes;
    std::vector<State> m_nodes;
    std::vector<State> m_slopes;
};

/**
 * @brief Undershoot policy shared by the integrators.
 *
 * Components in [-1e-6, 0) are reset to zero (counted in `log`); anything
 * below -1e-6 raises PositivityError, non-finite or |x| > 1e12 raises
 * DivergenceError.
 */
void enforce_positivity(State& x, double t, PositivityLog& log);

} // namespace phagesim

#endif // PHAGESIM_TRAJECTORY_HPP
