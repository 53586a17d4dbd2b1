/*
 * Copyright (C) 2026 denguectl contributors
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
#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "dengue/cli.hpp"

namespace {

using namespace dengue;

// Shared model/run flags. Flags mirror config keys and override file values.
struct CommonFlags {
    std::string config_file;
    std::optional<double> beta_hm, beta_mh;
    std::optional<double> grid_T, grid_h;
    std::optional<std::string> method;
    std::optional<int> n_subproblems;
    std::optional<int> max_evals;
    std::optional<std::string> output_dir;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "JSON configuration file");
        app->add_option("--beta_hm", beta_hm, "transmission probability human->mosquito");
        app->add_option("--beta_mh", beta_mh, "transmission probability mosquito->human");
        app->add_option("--T", grid_T, "horizon in days");
        app->add_option("--h", grid_h, "grid step in days");
        app->add_option("--method", method,
                        "eps-constraint | chebyshev | goal-attainment | normal-constraint");
        app->add_option("--n_subproblems", n_subproblems, "scalarized subproblem count");
        app->add_option("--max_function_evaluations", max_evals, "solver evaluation budget");
        app->add_option("--output_dir", output_dir, "output directory");
    }

    RunConfig resolve() const {
        RunConfig cfg = config_file.empty() ? parse_run_config("") : load_run_config(config_file);
        if (beta_hm) cfg.parameters.beta_hm = *beta_hm;
        if (beta_mh) cfg.parameters.beta_mh = *beta_mh;
        if (grid_T || grid_h) {
            cfg.grid = TimeGrid::uniform(cfg.grid.t0, grid_T.value_or(cfg.grid.horizon()),
                                         grid_h.value_or(cfg.grid.step));
        }
        if (method) cfg.method = parse_method(*method);
        if (n_subproblems) cfg.n_subproblems = *n_subproblems;
        if (max_evals) cfg.solver.max_function_evaluations = *max_evals;
        if (output_dir) cfg.output_dir = *output_dir;
        cfg.parameters.validate();
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dengue insecticide-control optimization toolkit"};
    app.require_subcommand(1);

    CommonFlags sim_flags, opt_flags, par_flags, sweep_flags;
    cli::SimulateArgs sim_args;
    cli::OptimizeArgs opt_args;
    cli::KneeArgs knee_args;
    cli::HypervolumeArgs hv_args;

    auto* simulate = app.add_subcommand("simulate", "integrate the model under a fixed control");
    sim_flags.attach(simulate);
    double sim_level = 0.0;
    bool sim_level_set = false;
    simulate->add_option("--control", sim_level, "constant insecticide level in [0,1]")
        ->each([&](const std::string&) { sim_level_set = true; });
    std::string sim_control_file;
    simulate->add_option("--control-file", sim_control_file, "control CSV, one value per node");
    simulate->add_option("--output", sim_args.output, "trajectory CSV path")->required();

    auto* optimize = app.add_subcommand("optimize", "solve one scalarized subproblem");
    opt_flags.attach(optimize);
    double opt_eps = 0.0, opt_w1 = 0.0;
    bool opt_eps_set = false, opt_w1_set = false;
    optimize->add_option("--eps", opt_eps, "f2 bound (eps-constraint)")
        ->each([&](const std::string&) { opt_eps_set = true; });
    optimize->add_option("--w1", opt_w1, "f1 weight (other methods)")
        ->each([&](const std::string&) { opt_w1_set = true; });
    optimize->add_option("--output", opt_args.output, "solution control CSV path")->required();

    auto* pareto = app.add_subcommand("pareto", "approximate the Pareto front with one method");
    par_flags.attach(pareto);

    auto* sweep = app.add_subcommand("sweep", "Pareto runs across transmission probabilities");
    sweep_flags.attach(sweep);
    std::optional<std::string> sweep_param;
    std::vector<double> sweep_values;
    sweep->add_option("--parameter", sweep_param, "beta_hm or beta_mh");
    sweep->add_option("--values", sweep_values, "sweep values")->expected(-1);

    auto* knee = app.add_subcommand("knee", "knee point of an exported archive");
    knee->add_option("--archive", knee_args.archive_csv, "archive CSV")->required();
    knee->add_option("--controls", knee_args.controls_csv, "controls sidecar CSV");
    knee->add_option("--output-control", knee_args.output_control, "knee control CSV path");

    auto* hypervolume = app.add_subcommand("hypervolume", "2-D hypervolume of a front CSV");
    hypervolume->add_option("--front", hv_args.front_csv, "front CSV (f1,f2)")->required();
    hypervolume->add_option("--ref-f1", hv_args.ref_f1, "reference point f1");
    hypervolume->add_option("--ref-f2", hv_args.ref_f2, "reference point f2");
    hypervolume->add_flag("--normalize", hv_args.normalize,
                          "normalize by the front's own extremes first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_usage;
    }

    try {
        if (simulate->parsed()) {
            if (sim_level_set) sim_args.control_level = sim_level;
            if (!sim_control_file.empty()) sim_args.control_file = sim_control_file;
            return cli::cmd_simulate(sim_flags.resolve(), sim_args, std::cout);
        }
        if (optimize->parsed()) {
            if (opt_eps_set) opt_args.eps = opt_eps;
            if (opt_w1_set) opt_args.w1 = opt_w1;
            return cli::cmd_optimize(opt_flags.resolve(), opt_args, std::cout);
        }
        if (pareto->parsed()) {
            return cli::cmd_pareto(par_flags.resolve(), std::cout);
        }
        if (sweep->parsed()) {
            RunConfig cfg = sweep_flags.resolve();
            if (sweep_param) {
                if (*sweep_param != "beta_hm" && *sweep_param != "beta_mh") {
                    throw ConfigError("sweep parameter must be beta_hm or beta_mh");
                }
                cfg.sweep_parameter = *sweep_param;
            }
            if (!sweep_values.empty()) cfg.sweep_values = sweep_values;
            return cli::cmd_sweep(cfg, std::cout);
        }
        if (knee->parsed()) {
            if (knee_args.output_control.empty() && !knee_args.controls_csv.empty()) {
                knee_args.output_control = "knee_control.csv";
            }
            return cli::cmd_knee(knee_args, std::cout);
        }
        if (hypervolume->parsed()) {
            return cli::cmd_hypervolume(hv_args, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return cli::exit_usage;
}
