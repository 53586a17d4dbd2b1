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
#ifndef DENGUE_CLI_HPP
#define DENGUE_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dengue/io.hpp"

namespace dengue::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,           ///< bad flags, config file or keys
    exit_solver_quota = 3,    ///< more than 20% of subproblems failed
    exit_degenerate = 4,      ///< degenerate analysis (e.g. collinear knee)
};

struct SimulateArgs {
    std::optional<double> control_level;          ///< constant control
    std::optional<std::filesystem::path> control_file;
    std::filesystem::path output;  ///< trajectory CSV path
};

struct OptimizeArgs {
    std::optional<double> eps;     ///< eps-constraint bound
    std::optional<double> w1;      ///< weight for the other methods
    std::filesystem::path output;  ///< solution control CSV path
};

struct KneeArgs {
    std::filesystem::path archive_csv;
    std::filesystem::path controls_csv;
    std::filesystem::path output_control;  ///< knee control CSV path
};

struct HypervolumeArgs {
    std::filesystem::path front_csv;
    double ref_f1 = 1.0;
    double ref_f2 = 1.0;
    bool normalize = false;  ///< normalize by the front's own extremes first
};

int cmd_simulate(const RunConfig& cfg, const SimulateArgs& args, std::ostream& log);
int cmd_optimize(const RunConfig& cfg, const OptimizeArgs& args, std::ostream& log);
int cmd_pareto(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_knee(const KneeArgs& args, std::ostream& log);
int cmd_hypervolume(const HypervolumeArgs& args, std::ostream& log);

}  // namespace dengue::cli

#endif  // DENGUE_CLI_HPP
