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
#include "phagesim/parameters.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>

namespace phagesim
{

namespace
{

void require(bool ok, const char* field, double value, const char* what)
{
    if (!ok) {
        throw ParameterError(field, fmt::format("parameter '{}' = {} must be {}", field, value, what));
    }
}

} // namespace

void Parameters::check() const
{
    const struct {
        const char* name;
        double value;
        bool strictly_positive;
    } fields[] = {
        {"alpha", alpha, true}, {"k1", k1, true}, {"k2", k2, false}, {"d", d, true},     {"m", m, true},
        {"b", b, true},         {"mu", mu, true}, {"tau", tau, true}, {"M", M, true},    {"eps", eps, false},
    };
    for (const auto& f : fields) {
        require(std::isfinite(f.value), f.name, f.value, "finite");
        if (f.strictly_positive) {
            require(f.value > 0.0, f.name, f.value, "strictly positive");
        }
        else {
            require(f.value >= 0.0, f.name, f.value, "non-negative");
        }
    }
}

} // namespace phagesim
