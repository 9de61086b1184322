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
#include "phagesim/scenario.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace phagesim
{

namespace
{

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed)
{
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            const std::string field = where.empty() ? key : where + "." + key;
            throw SchemaError(field, fmt::format("unknown key '{}'", field));
        }
    }
}

const json& require_object(const json& parent, const std::string& key, const std::string& where)
{
    const std::string field = where.empty() ? key : where + "." + key;
    if (!parent.contains(key)) {
        throw SchemaError(field, fmt::format("missing required key '{}'", field));
    }
    const json& value = parent.at(key);
    if (!value.is_object()) {
        throw SchemaError(field, fmt::format("'{}' must be an object", field));
    }
    return value;
}

double get_number(const json& obj, const std::string& key, const std::string& where)
{
    const std::string field = where + "." + key;
    if (!obj.contains(key)) {
        throw SchemaError(field, fmt::format("missing required key '{}'", field));
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw SchemaError(field, fmt::format("'{}' must be a number", field));
    }
    return v.get<double>();
}

template <class Int>
Int get_integer(const json& obj, const std::string& key, const std::string& where)
{
    const std::string field = where + "." + key;
    if (!obj.contains(key)) {
        throw SchemaError(field, fmt::format("missing required key '{}'", field));
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer() || (std::is_unsigned_v<Int> && !v.is_number_unsigned())) {
        throw SchemaError(field, fmt::format("'{}' must be a{} integer", field,
                                             std::is_unsigned_v<Int> ? " non-negative" : "n"));
    }
    return v.get<Int>();
}

std::vector<double> get_number_list(const json& obj, const std::string& key, const std::string& where)
{
    const std::string field = where + "." + key;
    if (!obj.contains(key)) {
        throw SchemaError(field, fmt::format("missing required key '{}'", field));
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
        throw SchemaError(field, fmt::format("'{}' must be an array of numbers", field));
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw SchemaError(field, fmt::format("'{}' must be an array of numbers", field));
        }
        out.push_back(x.get<double>());
    }
    return out;
}

std::string get_string(const json& obj, const std::string& key, const std::string& where)
{
    const std::string field = where + "." + key;
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw SchemaError(field, fmt::format("'{}' must be a string", field));
    }
    return obj.at(key).get<std::string>();
}

void schema_check(bool ok, const std::string& field, const std::string& message)
{
    if (!ok) {
        throw SchemaError(field, fmt::format("'{}' {}", field, message));
    }
}

Parameters parse_parameters(const json& obj)
{
    const std::string where = "parameters";
    reject_unknown_keys(obj, where, {"alpha", "k1", "k2", "d", "m", "b", "mu", "tau", "M", "eps"});
    Parameters p;
    p.alpha = get_number(obj, "alpha", where);
    p.k1    = get_number(obj, "k1", where);
    p.k2    = get_number(obj, "k2", where);
    p.d     = get_number(obj, "d", where);
    p.m     = get_number(obj, "m", where);
    p.b     = get_number(obj, "b", where);
    p.mu    = get_number(obj, "mu", where);
    p.tau   = get_number(obj, "tau", where);
    p.M     = get_number(obj, "M", where);
    p.eps   = get_number(obj, "eps", where);
    try {
        p.check();
    }
    catch (const ParameterError& e) {
        throw SchemaError(where + "." + e.field(), e.what());
    }
    return p;
}

HistorySpec parse_history(const json& obj)
{
    const std::string where = "history";
    HistorySpec spec;
    spec.preset = get_string(obj, "preset", where);
    if (spec.preset == "constant") {
        reject_unknown_keys(obj, where, {"preset", "s", "q", "i0", "n_grid"});
        spec.s = get_number(obj, "s", where);
        spec.q = get_number(obj, "q", where);
    }
    else if (spec.preset == "zero-phage") {
        reject_unknown_keys(obj, where, {"preset", "s", "i0", "n_grid"});
        spec.s = get_number(obj, "s", where);
    }
    else if (spec.preset == "table") {
        reject_unknown_keys(obj, where, {"preset", "s_values", "q_values", "i0"});
        spec.s_values = get_number_list(obj, "s_values", where);
        spec.q_values = get_number_list(obj, "q_values", where);
        schema_check(spec.s_values.size() >= 2 && spec.s_values.size() == spec.q_values.size(), where + ".s_values",
                     "and q_values must have the same length (at least 2)");
        spec.n_grid = static_cast<int>(spec.s_values.size()) - 1;
        for (std::size_t k = 0; k < spec.s_values.size(); ++k) {
            schema_check(spec.s_values[k] >= 0.0, where + ".s_values", "must be non-negative");
            schema_check(spec.q_values[k] >= 0.0, where + ".q_values", "must be non-negative");
        }
    }
    else {
        throw SchemaError(where + ".preset",
                          fmt::format("unknown history preset '{}' (expected constant, zero-phage or table)",
                                      spec.preset));
    }
    spec.i0 = get_number(obj, "i0", where);
    schema_check(spec.i0 >= 0.0, where + ".i0", "must be non-negative");
    if (spec.preset != "table") {
        schema_check(spec.s >= 0.0, where + ".s", "must be non-negative");
        schema_check(spec.q >= 0.0, where + ".q", "must be non-negative");
        if (obj.contains("n_grid")) {
            spec.n_grid = get_integer<int>(obj, "n_grid", where);
            schema_check(spec.n_grid >= 1, where + ".n_grid", "must be at least 1");
        }
    }
    return spec;
}

RunSettings parse_run(const json& obj)
{
    const std::string where = "run";
    reject_unknown_keys(obj, where,
                        {"T", "K", "n_paths", "seed", "eps_list", "rho", "kappa1", "kappa2", "scheme", "decay_window",
                         "output_dir"});
    RunSettings run;
    run.T        = get_number(obj, "T", where);
    run.K        = get_integer<int>(obj, "K", where);
    run.n_paths  = get_integer<std::size_t>(obj, "n_paths", where);
    run.seed     = get_integer<std::uint64_t>(obj, "seed", where);
    run.eps_list = get_number_list(obj, "eps_list", where);
    run.rho      = get_number(obj, "rho", where);
    run.kappa1   = get_number(obj, "kappa1", where);
    run.kappa2   = get_number(obj, "kappa2", where);
    try {
        run.scheme = scheme_from_string(get_string(obj, "scheme", where));
    }
    catch (const ConfigError& e) {
        throw SchemaError(where + ".scheme", e.what());
    }
    const auto window = get_number_list(obj, "decay_window", where);
    schema_check(window.size() == 2, where + ".decay_window", "must be [t_lo, t_hi]");
    run.decay_window_lo = window[0];
    run.decay_window_hi = window[1];
    run.output_dir      = get_string(obj, "output_dir", where);

    schema_check(run.T > 0.0, where + ".T", "must be positive");
    schema_check(run.K >= 8, where + ".K", "must be at least 8");
    schema_check(run.n_paths >= 1, where + ".n_paths", "must be at least 1");
    for (double e : run.eps_list) {
        schema_check(e >= 0.0, where + ".eps_list", "entries must be non-negative");
    }
    schema_check(run.rho > 0.0, where + ".rho", "must be positive");
    schema_check(run.kappa1 > 1.0, where + ".kappa1", "must exceed 1");
    schema_check(run.kappa2 > run.kappa1, where + ".kappa2", "must exceed kappa1");
    schema_check(0.0 <= run.decay_window_lo && run.decay_window_lo < run.decay_window_hi, where + ".decay_window",
                 "must satisfy 0 <= t_lo < t_hi");
    schema_check(run.decay_window_hi <= run.T, where + ".decay_window", "must end at or before T");
    schema_check(!run.output_dir.empty(), where + ".output_dir", "must not be empty");
    return run;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        }
        else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

Scenario parse_scenario_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw ParseError(line, column, fmt::format("line {}, column {}: {}", line, column, e.what()));
    }
    if (!doc.is_object()) {
        throw SchemaError("", "scenario document must be a JSON object");
    }
    reject_unknown_keys(doc, "", {"parameters", "history", "run"});
    Scenario s;
    s.params  = parse_parameters(require_object(doc, "parameters", ""));
    s.history = parse_history(require_object(doc, "history", ""));
    s.run     = parse_run(require_object(doc, "run", ""));
    return s;
}

Scenario parse_scenario(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError(path, fmt::format("cannot open scenario file '{}'", path));
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    try {
        return parse_scenario_text(buffer.str());
    }
    catch (const ParseError& e) {
        throw ParseError(e.line(), e.column(), fmt::format("{}: {}", path, e.what()));
    }
}

std::string emit_scenario(const Scenario& s)
{
    const auto& p = s.params;
    json doc;
    doc["parameters"] = {{"alpha", p.alpha}, {"k1", p.k1},   {"k2", p.k2},   {"d", p.d}, {"m", p.m},
                         {"b", p.b},         {"mu", p.mu},   {"tau", p.tau}, {"M", p.M}, {"eps", p.eps}};
    const auto& h = s.history;
    json history  = {{"preset", h.preset}, {"i0", h.i0}};
    if (h.preset == "table") {
        history["s_values"] = h.s_values;
        history["q_values"] = h.q_values;
    }
    else {
        history["s"]      = h.s;
        history["n_grid"] = h.n_grid;
        if (h.preset == "constant") {
            history["q"] = h.q;
        }
    }
    doc["history"] = history;
    const auto& r  = s.run;
    doc["run"]     = {{"T", r.T},
                      {"K", r.K},
                      {"n_paths", r.n_paths},
                      {"seed", r.seed},
                      {"eps_list", r.eps_list},
                      {"rho", r.rho},
                      {"kappa1", r.kappa1},
                      {"kappa2", r.kappa2},
                      {"scheme", std::string(to_string(r.scheme))},
                      {"decay_window", {r.decay_window_lo, r.decay_window_hi}},
                      {"output_dir", r.output_dir}};
    return doc.dump(2) + "\n";
}

History build_history(const HistorySpec& spec, double tau)
{
    if (spec.preset == "constant") {
        return History::constant(spec.s, spec.q, spec.i0, tau, spec.n_grid);
    }
    if (spec.preset == "zero-phage") {
        return History::zero_phage(spec.s, spec.i0, tau, spec.n_grid);
    }
    if (spec.preset == "table") {
        return History::sampled(spec.s_values, spec.q_values, spec.i0, tau);
    }
    throw SchemaError("history.preset", fmt::format("unknown history preset '{}'", spec.preset));
}

} // namespace phagesim
