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
#include "phagesim/csv.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace phagesim
{

std::string format_csv(const CsvTable& table)
{
    std::string out;
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        out += (k ? "," : "") + table.header[k];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw DomainError(fmt::format("csv row has {} fields, header has {}", row.size(), table.header.size()));
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) {
                out += ',';
            }
            out += fmt::format("{:.17g}", row[k]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const CsvTable& table, const std::string& path)
{
    const std::string text = format_csv(table);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError(path, fmt::format("cannot open '{}' for writing: {}", path, std::strerror(errno)));
    }
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) {
        throw IoError(path, fmt::format("failed writing '{}'", path));
    }
}

CsvTable read_csv(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError(path, fmt::format("cannot open '{}' for reading", path));
    }
    const auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::stringstream stream(line);
        std::string field;
        while (std::getline(stream, field, ',')) {
            fields.push_back(field);
        }
        if (!line.empty() && line.back() == ',') {
            fields.emplace_back();
        }
        return fields;
    };

    CsvTable table;
    std::string line;
    if (!std::getline(file, line)) {
        throw ParseError(1, 1, fmt::format("'{}' has no header row", path));
    }
    table.header = split(line);
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != table.header.size()) {
            throw ParseError(line_no, 1,
                             fmt::format("{}:{}: expected {} fields, got {}", path, line_no, table.header.size(),
                                         fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        std::size_t column = 1;
        for (const auto& f : fields) {
            // from_chars does not parse "inf"/"nan" spelled by fmt, so go through strtod
            char* end      = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (f.empty() || end != f.c_str() + f.size()) {
                throw ParseError(line_no, column, fmt::format("{}:{}:{}: not a number: '{}'", path, line_no, column, f));
            }
            row.push_back(v);
            column += f.size() + 1;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable trajectory_table(const Trajectory& traj, std::optional<double> dense_dt)
{
    CsvTable table{{"t", "S", "I", "Q"}, {}};
    if (!dense_dt) {
        table.rows.reserve(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const State& x = traj.state(i);
            table.rows.push_back({traj.time(i), x.s, x.i, x.q});
        }
        return table;
    }
    if (!(*dense_dt > 0.0)) {
        throw DomainError(fmt::format("dense resampling step must be positive, got {}", *dense_dt));
    }
    if (traj.empty()) {
        return table;
    }
    const auto n = static_cast<std::size_t>(std::floor(traj.t_end() / *dense_dt + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = std::min(static_cast<double>(k) * *dense_dt, traj.t_end());
        const State x  = traj.dense_eval(t);
        table.rows.push_back({t, x.s, x.i, x.q});
    }
    return table;
}

CsvTable ensemble_table(const EnsembleStats& stats)
{
    CsvTable table{{"t", "mean_S", "mean_I", "mean_Q", "dev_p50", "dev_p95"}, {}};
    table.rows.reserve(stats.times.size());
    for (std::size_t k = 0; k < stats.times.size(); ++k) {
        const State& m = stats.mean[k];
        table.rows.push_back({stats.times[k], m.s, m.i, m.q, stats.dev_p50[k], stats.dev_p95[k]});
    }
    return table;
}

CsvTable concentration_csv_table(const ConcentrationTable& table)
{
    CsvTable out{{"eps", "rho", "t_lo", "t_hi", "n", "exceed", "p_hat", "ci_lo", "ci_hi"}, {}};
    for (const auto& r : table.rows) {
        out.rows.push_back({r.eps, r.rho, r.t_lo, r.t_hi, static_cast<double>(r.n), static_cast<double>(r.exceed),
                            r.p_hat, r.ci_lo, r.ci_hi});
    }
    return out;
}

} // namespace phagesim
