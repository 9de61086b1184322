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
#ifndef PHAGESIM_ERRORS_HPP
#define PHAGESIM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phagesim
{

/**
 * @brief Base class of every error raised by the library.
 *
 * category() is a short, stable, machine-parsable tag (e.g. "divergence"),
 * used by the command-line tool to report errors on a single line.
 */
class Error : public std::runtime_error
{
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message)
        , m_category(std::move(category))
    {
    }

    const std::string& category() const noexcept
    {
        return m_category;
    }

private:
    std::string m_category;
};

/// Argument outside the mathematical domain of a function (e.g. sigma(x) for x < 0).
class DomainError : public Error
{
public:
    explicit DomainError(const std::string& message)
        : Error("domain", message)
    {
    }
};

/// Non-finite values reached a right-hand side.
class NumericError : public Error
{
public:
    explicit NumericError(const std::string& message)
        : Error("numeric", message)
    {
    }
};

/// A parameter record field violates its invariant.
class ParameterError : public Error
{
public:
    ParameterError(std::string field, const std::string& message)
        : Error("parameter", message)
        , m_field(std::move(field))
    {
    }

    const std::string& field() const noexcept
    {
        return m_field;
    }

private:
    std::string m_field;
};

/// A derived quantity was requested outside the parameter range where it is defined.
class PreconditionError : public Error
{
public:
    explicit PreconditionError(const std::string& message)
        : Error("precondition", message)
    {
    }
};

/// The requested equilibrium does not exist for these parameters.
class ExistenceError : public Error
{
public:
    explicit ExistenceError(const std::string& message)
        : Error("existence", message)
    {
    }
};

class DivergenceError : public Error
{
public:
    DivergenceError(double time, const std::string& message)
        : Error("divergence", message)
        , m_time(time)
    {
    }

    double time() const noexcept
    {
        return m_time;
    }

private:
    double m_time;
};

class PositivityError : public Error
{
public:
    PositivityError(double time, const std::string& message)
        : Error("positivity", message)
        , m_time(time)
    {
    }

    double time() const noexcept
    {
        return m_time;
    }

private:
    double m_time;
};

/// Decay-fit window is empty, outside the trajectory or hits an underflowed distance.
class WindowError : public Error
{
public:
    explicit WindowError(const std::string& message)
        : Error("window", message)
    {
    }
};

/// Experiment configuration is inconsistent (empty concentration window, bad kappas, ...).
class ConfigError : public Error
{
public:
    explicit ConfigError(const std::string& message)
        : Error("config", message)
    {
    }
};

/// A stochastic path failed inside an ensemble; carries the seed needed to replay it.
class PathError : public Error
{
public:
    PathError(std::uint64_t seed, std::uint64_t path_index, std::string inner_category, const std::string& message)
        : Error(inner_category, message)
        , m_seed(seed)
        , m_path_index(path_index)
    {
    }

    std::uint64_t seed() const noexcept
    {
        return m_seed;
    }
    std::uint64_t path_index() const noexcept
    {
        return m_path_index;
    }

private:
    std::uint64_t m_seed;
    std::uint64_t m_path_index;
};

class ParseError : public Error
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("parse", message)
        , m_line(line)
        , m_column(column)
    {
    }

    std::size_t line() const noexcept
    {
        return m_line;
    }
    std::size_t column() const noexcept
    {
        return m_column;
    }

private:
    std::size_t m_line;
    std::size_t m_column;
};

/// Scenario document is well-formed JSON but violates the schema; field() names the offending key.
class SchemaError : public Error
{
public:
    SchemaError(std::string field, const std::string& message)
        : Error("schema", message)
        , m_field(std::move(field))
    {
    }

    const std::string& field() const noexcept
    {
        return m_field;
    }

private:
    std::string m_field;
};

class IoError : public Error
{
public:
    IoError(std::string path, const std::string& message)
        : Error("io", message)
        , m_path(std::move(path))
    {
    }

    const std::string& path() const noexcept
    {
        return m_path;
    }

private:
    std::string m_path;
};

} // namespace phagesim

#endif // PHAGESIM_ERRORS_HPP
