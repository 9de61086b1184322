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
#ifndef PHAGESIM_SCENARIO_HPP
#define PHAGESIM_SCENARIO_HPP

#include "phagesim/history.hpp"
#include "phagesim/parameters.hpp"
#include "phagesim/sdde.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace phagesim
{

/**
 * @brief How the initial condition is described in a scenario file.
 *
 * preset "constant": S0 = s, Q0 = q; "zero-phage": S0 = s, Q0 = 0;
 * "table": explicit samples s_values / q_values on the uniform grid over [-tau, 0].
 */
struct HistorySpec {
    std::string preset = "constant";
    double s           = 0.0;
    double q           = 0.0;
    double i0          = 0.0;
    int n_grid         = History::default_grid_size;
    std::vector<double> s_values;
    std::vector<double> q_values;

    bool operator==(const HistorySpec&) const = default;
};

struct RunSettings {
    double T     = 50.0;
    int K        = 64;
    std::size_t n_paths = 400;
    std::uint64_t seed  = 0;
    std::vector<double> eps_list;
    double rho    = 0.05;
    double kappa1 = 1.2;
    double kappa2 = 2.0;
    Scheme scheme = Scheme::stratonovich_heun;
    double decay_window_lo = 10.0;
    double decay_window_hi = 40.0;
    std::string output_dir = "out";

    bool operator==(const RunSettings&) const = default;
};

struct Scenario {
    Parameters params;
    HistorySpec history;
    RunSettings run;

    bool operator==(const Scenario&) const = default;
};

/// Reads and validates a scenario file. IoError, ParseError (with line/column) or SchemaError (with field).
Scenario parse_scenario(const std::string& path);

/// Same as parse_scenario for in-memory text.
Scenario parse_scenario_text(const std::string& text);

/// JSON document that parse_scenario_text maps back to an identical Scenario.
std::string emit_scenario(const Scenario& scenario);

/// Builds the History described by the spec for delay `tau`.
History build_history(const HistorySpec& spec, double tau);

} // namespace phagesim

#endif // PHAGESIM_SCENARIO_HPP
