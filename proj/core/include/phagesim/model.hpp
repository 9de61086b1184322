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
#ifndef PHAGESIM_MODEL_HPP
#define PHAGESIM_MODEL_HPP

#include "phagesim/parameters.hpp"
#include "phagesim/sigma.hpp"

namespace phagesim
{

/**
 * @brief Right-hand side of the deterministic coinfection system.
 *
 * dS/dt = (alpha - k1 sigma(q)) s
 * dI/dt = k1 sigma(q) s - mu i - k1 e^{-mu tau} sigma(q_tau) s_tau
 * dQ/dt = d - m q - k1 sigma(q) s - k2 sigma(q) i + k1 b e^{-mu tau} sigma(q_tau) s_tau
 *
 * `delayed` holds the state at t - tau; only its s and q components are read.
 * Throws NumericError on non-finite input.
 */
State drift(const State& now, const State& delayed, const Parameters& p, const SigmaFn& sigma);

/**
 * @brief Right-hand side of the two-species model without coinfection.
 *
 * Equal to the (S, Q) components of drift() with k2 = 0, whatever I is.
 */
BacteriaPhage drift_no_coinfection(const BacteriaPhage& now, const BacteriaPhage& delayed, const Parameters& p,
                                   const SigmaFn& sigma);

/**
 * @brief Noise coefficients (eps sigma(s), 0, eps sigma(q)).
 *
 * The S component multiplies the first Wiener increment, the Q component
 * the second one. The infected compartment is noise-free.
 */
State diffusion(const State& now, const Parameters& p, const SigmaFn& sigma);

/**
 * @brief Drift to add when the Stratonovich system is written in Ito form.
 *
 * (eps^2/2 sigma(s) sigma'(s), 0, eps^2/2 sigma(q) sigma'(q)).
 */
State stratonovich_correction(const State& now, const Parameters& p, const SigmaFn& sigma);

} // namespace phagesim

#endif // PHAGESIM_MODEL_HPP
