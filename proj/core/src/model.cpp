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
#include "phagesim/model.hpp"
#include "phagesim/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace phagesim
{

namespace
{

void check_finite(const State& x, const char* what)
{
    if (!is_finite(x)) {
        throw NumericError(fmt::format("non-finite {} state ({}, {}, {})", what, x.s, x.i, x.q));
    }
}

} // namespace

State drift(const State& now, const State& delayed, const Parameters& p, const SigmaFn& sigma)
{
    check_finite(now, "current");
    check_finite(delayed, "delayed");
    const double sq        = sigma(now.q);
    const double survival  = p.survival();
    const double infection = p.k1 * sq * now.s;
    const double lysis     = p.k1 * survival * sigma(delayed.q) * delayed.s;
    return {
        (p.alpha - p.k1 * sq) * now.s,
        infection - p.mu * now.i - lysis,
        p.d - p.m * now.q - infection - p.k2 * sq * now.i + p.b * lysis,
    };
}

BacteriaPhage drift_no_coinfection(const BacteriaPhage& now, const BacteriaPhage& delayed, const Parameters& p,
                                   const SigmaFn& sigma)
{
    if (!std::isfinite(now.s) || !std::isfinite(now.q) || !std::isfinite(delayed.s) || !std::isfinite(delayed.q)) {
        throw NumericError(fmt::format("non-finite state (S, Q) = ({}, {}), delayed ({}, {})", now.s, now.q, delayed.s,
                                       delayed.q));
    }
    const double sq        = sigma(now.q);
    const double infection = p.k1 * sq * now.s;
    const double lysis     = p.k1 * p.survival() * sigma(delayed.q) * delayed.s;
    return {
        (p.alpha - p.k1 * sq) * now.s,
        p.d - p.m * now.q - infection + p.b * lysis,
    };
}

State diffusion(const State& now, const Parameters& p, const SigmaFn& sigma)
{
    check_finite(now, "current");
    return {p.eps * sigma(now.s), 0.0, p.eps * sigma(now.q)};
}

State stratonovich_correction(const State& now, const Parameters& p, const SigmaFn& sigma)
{
    check_finite(now, "current");
    const double half_eps2 = 0.5 * p.eps * p.eps;
    return {
        half_eps2 * sigma(now.s) * sigma.derivative(now.s),
        0.0,
        half_eps2 * sigma(now.q) * sigma.derivative(now.q),
    };
}

} // namespace phagesim
