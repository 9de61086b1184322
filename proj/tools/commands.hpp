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
#ifndef PHAGESIM_TOOLS_COMMANDS_HPP
#define PHAGESIM_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace phagesim::cli
{

/// Exit codes of the command-line tool.
enum ExitCode : int
{
    exit_ok         = 0,
    exit_validation = 2,
    exit_divergence = 3,
    exit_io         = 4,
};

/**
 * @brief Runs one subcommand; args excludes the program name.
 *
 * Subcommands: validate, equilibria, simulate, simulate-sde,
 * mc-concentration, min-dose, compare-coinfection. Errors are reported on
 * `err` as a single line "error: <category>: <message>".
 */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace phagesim::cli

#endif // PHAGESIM_TOOLS_COMMANDS_HPP
