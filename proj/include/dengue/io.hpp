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
#ifndef DENGUE_IO_HPP
#define DENGUE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dengue/pareto.hpp"
#include "dengue/scalarize.hpp"

namespace dengue {

/// Raised for malformed configuration files or unknown keys; the message
/// names the offending key or file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * @brief Resolved run configuration: model, grid, solver and experiment
 * settings, merged from a JSON file and command-line overrides.
 */
struct RunConfig {
    ModelParameters parameters;
    StateVector initial_state = default_initial_state();
    TimeGrid grid;
    nlp::SolveOptions solver;
    ScalarizationMethod method = ScalarizationMethod::normal_constraint;
    int n_subproblems = 100;
    std::string sweep_parameter = "beta_hm";  ///< or "beta_mh"
    std::vector<double> sweep_values{0.25, 0.375, 0.5, 0.75};
    std::filesystem::path output_dir = "out";

    /// Full resolved configuration as canonical JSON (for file headers).
    std::string to_json() const;
    /// FNV-1a hash of to_json(), printed for provenance.
    std::string digest() const;
};

/// Parses a config file; unknown keys raise ConfigError naming the key.
RunConfig load_run_config(const std::filesystem::path& file);
/// Same, from JSON text (empty text gives the defaults).
RunConfig parse_run_config(const std::string& json_text);

/// Trajectory CSV: zero or more '#' header lines, then a fixed column order
/// t,s_h,e_h,i_h,r_h,a_m,s_m,e_m,i_m, one row per grid node.
void write_trajectory_csv(std::ostream& os, const StateTrajectory& traj,
                          const std::string& config_header);
StateTrajectory read_trajectory_csv(std::istream& is);

/// Archive CSV columns: method,beta_param,f1,f2,status. The controls
/// sidecar holds one row per entry: entry,c_0,...,c_{n-1}.
void write_archive_csv(std::ostream& os, const ParetoArchive& archive,
                       const std::string& config_header);
void write_archive_controls_csv(std::ostream& os, const ParetoArchive& archive,
                                const std::string& config_header);

/// Rows of an archive re-imported for analysis (controls live in the sidecar).
struct ImportedArchive {
    std::vector<ObjectivePoint> points;
    std::vector<std::string> methods;
    std::vector<double> beta_params;
    std::vector<std::string> statuses;
};
ImportedArchive read_archive_csv(std::istream& is);

/// Front CSV: f1,f2 columns with an optional third control-reference column.
void write_front_csv(std::ostream& os, const Front& front, const std::string& config_header);
Front read_front_csv(std::istream& is);

std::vector<ControlTrajectory> read_controls_csv(std::istream& is);

/// One value per line (or one CSV row per line, last column taken).
ControlTrajectory read_control_file(const std::filesystem::path& file, int expected_nodes);

/// Matrix CSV used for the Pareto-set surface exports: one row per archive
/// entry (ordered by ascending f2), one column per time node.
void write_matrix_csv(std::ostream& os, const std::vector<std::vector<double>>& rows,
                      const std::string& config_header);

/// Shortest round-trippable decimal representation of a double.
std::string format_double(double v);

}  // namespace dengue

#endif  // DENGUE_IO_HPP
