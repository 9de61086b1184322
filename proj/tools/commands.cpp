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
#include "commands.hpp"

#include "phagesim/csv.hpp"
#include "phagesim/dde.hpp"
#include "phagesim/equilibria.hpp"
#include "phagesim/errors.hpp"
#include "phagesim/hypotheses.hpp"
#include "phagesim/scenario.hpp"
#include "phagesim/sdde.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace phagesim::cli
{

namespace
{

struct Options {
    std::string scenario_path;
    std::string out_dir;
    std::optional<double> dense_dt;
    bool json = false;
};

struct Context {
    Scenario scenario;
    History history;
    std::filesystem::path out_dir;
};

Context load(const Options& opt)
{
    Scenario s   = parse_scenario(opt.scenario_path);
    History hist = build_history(s.history, s.params.tau);
    std::filesystem::path dir = std::filesystem::path(opt.out_dir.empty() ? s.run.output_dir : opt.out_dir);
    return {std::move(s), std::move(hist), std::move(dir)};
}

std::string ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(dir.string(), fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
    return dir.string();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError(path.string(), fmt::format("cannot open '{}' for writing", path.string()));
    }
    file << text;
    if (!file) {
        throw IoError(path.string(), fmt::format("failed writing '{}'", path.string()));
    }
}

int exit_code_for(const std::string& category)
{
    if (category == "parse" || category == "schema" || category == "io") {
        return exit_io;
    }
    if (category == "divergence" || category == "positivity" || category == "numeric") {
        return exit_divergence;
    }
    return exit_validation;
}

std::string single_line(std::string text)
{
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

PathConfig path_config(const RunSettings& run)
{
    return {run.seed, run.K, run.T, run.scheme};
}

int cmd_validate(const Options& opt, std::ostream& out)
{
    const auto ctx    = load(opt);
    const auto report = validate_all(ctx.scenario.params, ctx.history);
    const auto dir    = ensure_dir(ctx.out_dir);
    write_text(std::filesystem::path(dir) / "validation.json", report.to_json() + "\n");
    out << (opt.json ? report.to_json() + "\n" : report.to_text());
    return report.verdict() ? exit_ok : exit_validation;
}

int cmd_equilibria(const Options& opt, std::ostream& out)
{
    const auto ctx = load(opt);
    const auto& p  = ctx.scenario.params;
    const auto dir = ensure_dir(ctx.out_dir);
    write_text(std::filesystem::path(dir) / "equilibria.json", equilibrium_report_json(p) + "\n");
    out << (opt.json ? equilibrium_report_json(p) + "\n" : equilibrium_report_text(p));
    return exit_ok;
}

int cmd_simulate(const Options& opt, std::ostream& out)
{
    const auto ctx  = load(opt);
    const auto& p   = ctx.scenario.params;
    const auto& run = ctx.scenario.run;
    const auto traj = integrate(p, ctx.history, run.T, run.K);
    const auto dir  = ensure_dir(ctx.out_dir);
    const auto csv  = (std::filesystem::path(dir) / "trajectory.csv").string();
    write_csv(trajectory_table(traj, opt.dense_dt), csv);

    const State last = traj.states().back();
    out << fmt::format("trajectory  : {} nodes, h = {:.6g}, T = {:.6g} -> {}\n", traj.size(), traj.step(),
                       traj.t_end(), csv);
    out << fmt::format("final state : ({:.10g}, {:.10g}, {:.10g})\n", last.s, last.i, last.q);
    out << fmt::format("positivity  : {} clamped, {} warnings\n", traj.positivity.clamped, traj.positivity.warnings);

    if (p.d / p.m < p.M) {
        const State e0  = bacteria_free(p);
        const auto info = stability_at_e0(p);
        if (info.eta > 0.0) {
            const auto fit = fit_decay(traj, e0, run.decay_window_lo, run.decay_window_hi, info.eta);
            out << fmt::format("decay fit   : rate {:.6g} on [{:.6g}, {:.6g}] vs eta {:.6g} ({}), c = {:.6g}, "
                               "max |Z-E0|/(c e^(-eta t)) = {:.6g}\n",
                               fit.fitted_rate, fit.window_lo, fit.window_hi, fit.eta,
                               fit.rate_ok ? "consistent" : "slower than eta", fit.prefactor, fit.max_bound_ratio);
        }
        else {
            out << fmt::format("decay fit   : skipped, E0 not attracting (gamma = {:.6g})\n", info.gamma);
        }
    }
    if (p.m * p.M > p.d) {
        const auto exit = monitor_region(traj, invariant_region(p));
        if (exit) {
            out << fmt::format("region R    : left at t = {:.6g} ({} = {:.10g}, bound {:.10g})\n", exit->t,
                               exit->component, exit->value, exit->bound);
        }
        else {
            out << "region R    : never left\n";
        }
    }
    return exit_ok;
}

int cmd_simulate_sde(const Options& opt, std::ostream& out)
{
    const auto ctx    = load(opt);
    const auto& p     = ctx.scenario.params;
    const auto& run   = ctx.scenario.run;
    const auto cfg    = path_config(run);
    const auto dir    = std::filesystem::path(ensure_dir(ctx.out_dir));
    const auto path   = sample_path(p, ctx.history, cfg, 0);
    write_csv(trajectory_table(path, opt.dense_dt), (dir / "path.csv").string());

    const auto reference = integrate(p, ctx.history, run.T, run.K);
    const auto stats     = ensemble(p, ctx.history, cfg, run.n_paths, reference, 0.0, run.T);
    write_csv(ensemble_table(stats), (dir / "ensemble.csv").string());

    out << fmt::format("scheme      : {}, eps = {:.6g}, seed = {}, K = {}, T = {:.6g}\n", to_string(cfg.scheme), p.eps,
                       cfg.seed, cfg.K, cfg.T);
    out << fmt::format("path 0      : -> {}\n", (dir / "path.csv").string());
    out << fmt::format("ensemble    : {} paths -> {}\n", stats.n_paths, (dir / "ensemble.csv").string());
    out << fmt::format("mean sup |Z^eps - Z^0| on [0, T]: {:.6g}\n", stats.mean_sup_deviation());
    return exit_ok;
}

int cmd_concentration(const Options& opt, std::ostream& out)
{
    const auto ctx  = load(opt);
    const auto& p   = ctx.scenario.params;
    const auto& run = ctx.scenario.run;
    const auto table =
        concentration_experiment(p, ctx.history, run.eps_list, run.rho, run.kappa1, run.kappa2, run.n_paths,
                                 path_config(run));
    const auto dir = std::filesystem::path(ensure_dir(ctx.out_dir));
    write_csv(concentration_csv_table(table), (dir / "concentration.csv").string());

    out << fmt::format("c = {:.6g}, eta = {:.6g}\n", table.prefactor, table.eta);
    out << fmt::format("{:>10} {:>8} {:>10} {:>10} {:>6} {:>7} {:>9} {:>9} {:>9} {:>10}\n", "eps", "rho", "t_lo",
                       "t_hi", "n", "exceed", "p_hat", "ci_lo", "ci_hi", "ln p_hat");
    for (const auto& r : table.rows) {
        out << fmt::format("{:>10.4g} {:>8.4g} {:>10.5g} {:>10.5g} {:>6} {:>7} {:>9.4g} {:>9.4g} {:>9.4g} {:>10.4g}\n",
                           r.eps, r.rho, r.t_lo, r.t_hi, r.n, r.exceed, r.p_hat, r.ci_lo, r.ci_hi, r.log_p_hat);
    }
    if (table.log_slope) {
        out << fmt::format("slope of ln p_hat vs 1/eps^2: {:.6g}\n", *table.log_slope);
    }
    else {
        out << "slope of ln p_hat vs 1/eps^2: undefined (fewer than two nonzero counts)\n";
    }
    out << fmt::format("-> {}\n", (dir / "concentration.csv").string());
    return exit_ok;
}

int cmd_min_dose(const Options& opt, std::ostream& out)
{
    const auto ctx     = load(opt);
    const Parameters p = ctx.scenario.params;
    const double d_min = minimal_dose(p);
    out << fmt::format("d_min = {:.10g} (scenario d = {:.10g})\n", d_min, p.d);

    bool bracket_ok = true;
    for (double factor : {1.0 + 1e-6, 1.0 - 1e-6}) {
        Parameters probe = p;
        probe.d          = d_min * factor;
        const auto dose  = check_dose(probe)[1];
        const bool expected = factor > 1.0;
        bracket_ok          = bracket_ok && dose.pass == expected;
        out << fmt::format("d = d_min*(1{:+.0e}) = {:.12g}: margin {:+.6g}, {}\n", factor - 1.0, probe.d, dose.margin,
                           dose.pass ? "pass" : "fail");
    }
    out << fmt::format("bracketing  : {}\n", bracket_ok ? "consistent" : "INCONSISTENT");
    return bracket_ok ? exit_ok : exit_validation;
}

int cmd_compare(const Options& opt, std::ostream& out)
{
    const auto ctx     = load(opt);
    const auto& run    = ctx.scenario.run;
    const Parameters p = ctx.scenario.params;
    Parameters p0      = p;
    p0.k2              = 0.0;

    const State e0        = bacteria_free(p);
    const auto info       = stability_at_e0(p);
    const auto full       = integrate(p, ctx.history, run.T, run.K);
    const auto fit_full   = fit_decay(full, e0, run.decay_window_lo, run.decay_window_hi, info.eta);

    // the (S, Q) model decays at min(gamma, m); shorten the window so it spans the same number of e-folds
    const double eta_sq   = std::min(info.gamma, p.m);
    const double span     = (run.decay_window_hi - run.decay_window_lo) * info.eta / eta_sq;
    const auto reduced    = integrate(p0, ctx.history, run.T, run.K, System::no_coinfection);
    const auto fit_sq     = fit_decay(reduced, e0, run.decay_window_lo, run.decay_window_lo + span, eta_sq);

    out << fmt::format("{:<26} {:>14} {:>14}\n", "", fmt::format("k2 = {:.4g}", p.k2), "k2 = 0");
    out << fmt::format("{:<26} {:>14.10g} {:>14.10g}\n", "minimal dose d_min", minimal_dose(p), minimal_dose(p0));
    out << fmt::format("{:<26} {:>14.6g} {:>14.6g}\n", "rate bound", info.eta, eta_sq);
    out << fmt::format("{:<26} {:>14.6g} {:>14.6g}\n", "fitted decay rate", fit_full.fitted_rate, fit_sq.fitted_rate);
    out << fmt::format("{:<26} {:>14} {:>14}\n", "fit window",
                       fmt::format("[{:.3g}, {:.3g}]", fit_full.window_lo, fit_full.window_hi),
                       fmt::format("[{:.3g}, {:.3g}]", fit_sq.window_lo, fit_sq.window_hi));
    return exit_ok;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"phagesim: delayed phage/bacteria coinfection model toolkit", "phagesim"};
    app.require_subcommand(1);
    Options opt;

    struct Entry {
        const char* name;
        const char* help;
        std::function<int(const Options&, std::ostream&)> run;
        bool dense;
    };
    const Entry entries[] = {
        {"validate", "check every standing hypothesis for a scenario", cmd_validate, false},
        {"equilibria", "equilibrium points, regime and spectrum at E0", cmd_equilibria, false},
        {"simulate", "deterministic trajectory, decay fit and region monitor", cmd_simulate, true},
        {"simulate-sde", "one noisy path and an ensemble against the deterministic run", cmd_simulate_sde, true},
        {"mc-concentration", "Monte Carlo exceedance table around E0", cmd_concentration, false},
        {"min-dose", "minimal inoculation rate and its bracketing", cmd_min_dose, false},
        {"compare-coinfection", "model with coinfection against k2 = 0", cmd_compare, false},
    };

    std::function<int(const Options&, std::ostream&)> selected;
    double dense_dt = 0.0;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("scenario", opt.scenario_path, "scenario JSON file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides run.output_dir)");
        if (std::string(e.name) == "validate" || std::string(e.name) == "equilibria") {
            sub->add_flag("--json", opt.json, "print the JSON report instead of the text table");
        }
        if (e.dense) {
            sub->add_option("--dense", dense_dt, "resample CSV output every <dt> time units")
                ->check(CLI::PositiveNumber);
        }
        sub->callback([&selected, run = e.run] {
            selected = run;
        });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::Success& e) {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError& e) {
        err << "error: usage: " << single_line(e.what()) << "\n";
        return exit_io;
    }
    if (dense_dt > 0.0) {
        opt.dense_dt = dense_dt;
    }

    try {
        return selected(opt, out);
    }
    catch (const Error& e) {
        err << "error: " << e.category() << ": " << single_line(e.what()) << "\n";
        return exit_code_for(e.category());
    }
    catch (const std::exception& e) {
        err << "error: internal: " << single_line(e.what()) << "\n";
        return exit_validation;
    }
}

} // namespace phagesim::cli
