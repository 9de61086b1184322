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
#ifndef PHAGESIM_CSV_HPP
#define PHAGESIM_CSV_HPP

#include "phagesim/sdde.hpp"
#include "phagesim/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phagesim
{

/// Header plus numeric rows; every row has as many fields as the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Comma-separated, LF line endings, values printed with 17 significant digits.
std::string format_csv(const CsvTable& table);

/// Writes format_csv(table) to `path`; throws IoError naming the path on failure.
void write_csv(const CsvTable& table, const std::string& path);

/// Reads a numeric CSV produced by write_csv; throws IoError / ParseError.
CsvTable read_csv(const std::string& path);

/// `t,S,I,Q` at node resolution, or resampled every `dense_dt` through dense output.
CsvTable trajectory_table(const Trajectory& traj, std::optional<double> dense_dt = std::nullopt);

/// `t,mean_S,mean_I,mean_Q,dev_p50,dev_p95`.
CsvTable ensemble_table(const EnsembleStats& stats);

/// `eps,rho,t_lo,t_hi,n,exceed,p_hat,ci_lo,ci_hi`.
CsvTable concentration_csv_table(const ConcentrationTable& table);

} // namespace phagesim

#endif // PHAGESIM_CSV_HPP
