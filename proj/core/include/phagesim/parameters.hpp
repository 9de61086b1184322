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
#ifndef PHAGESIM_PARAMETERS_HPP
#define PHAGESIM_PARAMETERS_HPP

#include <cmath>

namespace phagesim
{

/**
 * @brief Constants of the delayed phage/bacteria coinfection model.
 *
 * One record drives both the deterministic system (eps is ignored there)
 * and the noisy one. Concentrations and rates are in arbitrary but
 * consistent units.
 */
struct Parameters {
    double alpha = 0.0; ///< net bacterial reproduction rate
    double k1    = 0.0; ///< adsorption rate onto uninfected bacteria
    double k2    = 0.0; ///< adsorption rate onto infected bacteria (coinfection)
    double d     = 0.0; ///< phage inoculation rate
    double m     = 0.0; ///< phage death rate
    double b     = 0.0; ///< burst size
    double mu    = 0.0; ///< bacterial death rate
    double tau   = 0.0; ///< latency delay
    double M     = 0.0; ///< truncation threshold of sigma
    double eps   = 0.0; ///< noise amplitude

    /// Throws ParameterError naming the first field that is non-finite or out of range.
    void check() const;

    /// Survival factor over the latency period, e^{-mu tau}.
    double survival() const
    {
        return std::exp(-mu * tau);
    }

    /// Effective burst b e^{-mu tau}.
    double effective_burst() const
    {
        return b * survival();
    }

    bool operator==(const Parameters&) const = default;
};

/**
 * @brief Concentrations (S, I, Q). Also used for their time derivatives.
 */
struct State {
    double s = 0.0; ///< uninfected bacteria
    double i = 0.0; ///< infected bacteria
    double q = 0.0; ///< phages

    State& operator+=(const State& o)
    {
        s += o.s;
        i += o.i;
        q += o.q;
        return *this;
    }
    State& operator-=(const State& o)
    {
        s -= o.s;
        i -= o.i;
        q -= o.q;
        return *this;
    }
    State& operator*=(double f)
    {
        s *= f;
        i *= f;
        q *= f;
        return *this;
    }

    friend State operator+(State a, const State& b)
    {
        return a += b;
    }
    friend State operator-(State a, const State& b)
    {
        return a -= b;
    }
    friend State operator*(State a, double f)
    {
        return a *= f;
    }
    friend State operator*(double f, State a)
    {
        return a *= f;
    }

    bool operator==(const State&) const = default;
};

inline double norm2(const State& x)
{
    return std::sqrt(x.s * x.s + x.i * x.i + x.q * x.q);
}

inline double max_abs(const State& x)
{
    return std::fmax(std::fabs(x.s), std::fmax(std::fabs(x.i), std::fabs(x.q)));
}

inline bool is_finite(const State& x)
{
    return std::isfinite(x.s) && std::isfinite(x.i) && std::isfinite(x.q);
}

/**
 * @brief (S, Q) pair of the two-species model without coinfection.
 */
struct BacteriaPhage {
    double s = 0.0;
    double q = 0.0;

    bool operator==(const BacteriaPhage&) const = default;
};

} // namespace phagesim

#endif // PHAGESIM_PARAMETERS_HPP
