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
#ifndef PHAGESIM_HISTORY_HPP
#define PHAGESIM_HISTORY_HPP

#include "phagesim/parameters.hpp"

#include <functional>
#include <span>
#include <vector>

namespace phagesim
{

/**
 * @brief Shape-preserving cubic interpolant on a uniform grid.
 *
 * Fritsch-Carlson slopes: monotone data stays monotone between nodes, so
 * non-negative samples never produce a negative interpolant.
 */
class UniformPchip
{
public:
    UniformPchip() = default;
    UniformPchip(double t_start, double step, std::vector<double> values);

    double operator()(double t) const;

    std::span<const double> values() const
    {
        return m_values;
    }

private:
    double m_t_start = 0.0;
    double m_step    = 1.0;
    std::vector<double> m_values;
    std::vector<double> m_slopes;
};

/**
 * @brief Initial condition on [-tau, 0]: functions S0, Q0 and the scalar I0.
 *
 * S0 and Q0 are stored as samples on the uniform grid t_k = -tau + k*tau/N,
 * k = 0..N, and evaluated through UniformPchip. The infected compartment
 * has the constant pre-history I0.
 */
class History
{
public:
    static constexpr int default_grid_size = 128;

    /// S0 = s, Q0 = q on the whole interval.
    static History constant(double s, double q, double i0, double tau, int n_grid = default_grid_size);

    /// Phages are introduced at t = 0: Q0 = 0, S0 = s.
    static History zero_phage(double s, double i0, double tau, int n_grid = default_grid_size);

    /// Samples at the N + 1 grid nodes, ordered from t = -tau to t = 0.
    static History sampled(std::vector<double> s_values, std::vector<double> q_values, double i0, double tau);

    static History from_functions(const std::function<double(double)>& s0, const std::function<double(double)>& q0,
                                  double i0, double tau, int n_grid = default_grid_size);

    double s0(double t) const;
    double q0(double t) const;
    double i0() const
    {
        return m_i0;
    }

    /// (S0(t), I0, Q0(t)) for t in [-tau, 0].
    State at(double t) const
    {
        return {s0(t), m_i0, q0(t)};
    }

    double tau() const
    {
        return m_tau;
    }
    int grid_size() const
    {
        return static_cast<int>(m_s.values().size()) - 1;
    }
    double grid_step() const
    {
        return m_tau / grid_size();
    }
    double node_time(int k) const
    {
        return -m_tau + k * grid_step();
    }

    std::span<const double> s_samples() const
    {
        return m_s.values();
    }
    std::span<const double> q_samples() const
    {
        return m_q.values();
    }

private:
    History(std::vector<double> s_values, std::vector<double> q_values, double i0, double tau);

    double m_tau;
    double m_i0;
    UniformPchip m_s;
    UniformPchip m_q;
};

} // namespace phagesim

#endif // PHAGESIM_HISTORY_HPP
