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
#ifndef PHAGESIM_RNG_HPP
#define PHAGESIM_RNG_HPP

#include <array>
#include <cstdint>

namespace phagesim
{

/**
 * @brief Philox4x32-10 block cipher used as a counter-based generator.
 *
 * The output depends only on (key, counter), so any random number of any
 * path can be regenerated in isolation.
 */
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/**
 * @brief Standard normal draw keyed by (seed, path, step, component).
 *
 * component is 0 or 1 (the two Wiener processes); both come from one
 * Box-Muller transform of the same Philox block.
 */
double normal_draw(std::uint64_t seed, std::uint64_t path, std::uint64_t step, unsigned component);

/// Both normals of one (seed, path, step) block.
std::array<double, 2> normal_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step);

} // namespace phagesim

#endif // PHAGESIM_RNG_HPP
