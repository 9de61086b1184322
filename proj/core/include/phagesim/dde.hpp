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
#ifndef PHAGESIM_DDE_HPP
#define PHAGESIM_DDE_HPP

#include "phagesim/history.hpp"
#include "phagesim/hypotheses.hpp"
#include "phagesim/parameters.hpp"
#include "phagesim/trajectory.hpp"

#include <optional>

namespace phagesim
{

/// Which right-hand side to integrate.
enum class System
{
    coinfection,    ///< (S, I, Q) system with the k2 term
    no_coinfection, ///< (S, Q) model; the I slot of the trajectory stays 0
};

/**
 * @brief Method-of-steps integration of the delayed system on [0, T].
 *
 * Classical four-stage Runge-Kutta with h = tau / K. Delayed values at the
 * stage times come from the cubic-Hermite dense output of the trajectory
 * itself (or from the history for arguments <= 0). The undershoot policy of
 * enforce_positivity() is applied after every step.
 *
 * Requires T > 0 and K >= 8; `hist` must cover [-p.tau, 0].
 */
Trajectory integrate(const Parameters& p, const History& hist, double T, int K, System system = System::coinfection);

/// First node at which a trajectory leaves the box R.
struct RegionExit {
    double t        = 0.0;
    char component  = 'S';
    double value    = 0.0;
    double bound    = 0.0;
};

/// Scans the nodes in order; `tolerance` widens the box on every side.
std::optional<RegionExit> monitor_region(const Trajectory& traj, const RegionBounds& r, double tolerance = 0.0);

/**
 * @brief Exponential decay of |Z(t) - E0| against the rate eta.
 *
 * fitted_rate is minus the least-squares slope of log|Z - E0| over the nodes
 * in the window. prefactor c = max over all nodes of |Z(t) - E0| e^{eta t},
 * so |Z(t) - E0| <= c e^{-eta t} holds everywhere with equality somewhere.
 */
struct DecayFit {
    double prefactor   = 0.0;
    double fitted_rate = 0.0;
    double eta         = 0.0;
    double window_lo   = 0.0;
    double window_hi   = 0.0;
    std::size_t window_nodes = 0;
    double max_bound_ratio = 0.0; ///< max |Z - E0| / (c e^{-eta t}); <= 1 up to rounding
    bool rate_ok = false;         ///< fitted_rate >= 0.95 eta
};

/// max over nodes of |Z(t_i) - E0| e^{eta t_i} (Euclidean norm).
double decay_prefactor(const Trajectory& traj, const State& e0, double eta);

/// Throws WindowError for windows outside the trajectory, with fewer than two nodes, or hitting |Z - E0| < 1e-14.
DecayFit fit_decay(const Trajectory& traj, const State& e0, double window_lo, double window_hi, double eta);

} // namespace phagesim

#endif // PHAGESIM_DDE_HPP
