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
#include "dengue/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace dengue {

namespace {

using nlohmann::json;

double number_at(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& scope) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const char* k : known) {
            if (key == k) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError("unknown config key '" + (scope.empty() ? key : scope + "." + key) +
                              "'");
        }
    }
}

void apply_parameters(const json& obj, ModelParameters& p) {
    reject_unknown(obj,
                   {"N_h", "B", "beta_mh", "beta_hm", "mu_h", "eta_h", "mu_m", "phi", "mu_A",
                    "eta_A", "eta_m", "nu_h", "m", "k"},
                   "parameters");
    if (obj.contains("N_h")) p.N_h = number_at(obj, "N_h");
    if (obj.contains("B")) p.B = number_at(obj, "B");
    if (obj.contains("beta_mh")) p.beta_mh = number_at(obj, "beta_mh");
    if (obj.contains("beta_hm")) p.beta_hm = number_at(obj, "beta_hm");
    if (obj.contains("mu_h")) p.mu_h = number_at(obj, "mu_h");
    if (obj.contains("eta_h")) p.eta_h = number_at(obj, "eta_h");
    if (obj.contains("mu_m")) p.mu_m = number_at(obj, "mu_m");
    if (obj.contains("phi")) p.phi = number_at(obj, "phi");
    if (obj.contains("mu_A")) p.mu_A = number_at(obj, "mu_A");
    if (obj.contains("eta_A")) p.eta_A = number_at(obj, "eta_A");
    if (obj.contains("eta_m")) p.eta_m = number_at(obj, "eta_m");
    if (obj.contains("nu_h")) p.nu_h = number_at(obj, "nu_h");
    if (obj.contains("m")) p.m = number_at(obj, "m");
    if (obj.contains("k")) p.k = number_at(obj, "k");
}

void apply_initial_state(const json& obj, StateVector& y) {
    reject_unknown(obj, {"s_h", "e_h", "i_h", "r_h", "a_m", "s_m", "e_m", "i_m"},
                   "initial_state");
    if (obj.contains("s_h")) y.s_h = number_at(obj, "s_h");
    if (obj.contains("e_h")) y.e_h = number_at(obj, "e_h");
    if (obj.contains("i_h")) y.i_h = number_at(obj, "i_h");
    if (obj.contains("r_h")) y.r_h = number_at(obj, "r_h");
    if (obj.contains("a_m")) y.a_m = number_at(obj, "a_m");
    if (obj.contains("s_m")) y.s_m = number_at(obj, "s_m");
    if (obj.contains("e_m")) y.e_m = number_at(obj, "e_m");
    if (obj.contains("i_m")) y.i_m = number_at(obj, "i_m");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("CSV: bad ") + what + " value '" + s + "'");
    }
}

// Returns data lines (headers and blanks skipped); the first data line is
// treated as the column header when `expect_header`.
std::vector<std::string> data_lines(std::istream& is) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

void write_header(std::ostream& os, const std::string& config_header) {
    if (config_header.empty()) return;
    std::istringstream ss(config_header);
    std::string line;
    while (std::getline(ss, line)) os << "# " << line << "\n";
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string RunConfig::to_json() const {
    json j;
    j["parameters"] = {{"N_h", parameters.N_h},
                       {"B", parameters.B},
                       {"beta_mh", parameters.beta_mh},
                       {"beta_hm", parameters.beta_hm},
                       {"mu_h", parameters.mu_h},
                       {"eta_h", parameters.eta_h},
                       {"mu_m", parameters.mu_m},
                       {"phi", parameters.phi},
                       {"mu_A", parameters.mu_A},
                       {"eta_A", parameters.eta_A},
                       {"eta_m", parameters.eta_m},
                       {"nu_h", parameters.nu_h},
                       {"m", parameters.m},
                       {"k", parameters.k}};
    j["initial_state"] = {{"s_h", initial_state.s_h}, {"e_h", initial_state.e_h},
                          {"i_h", initial_state.i_h}, {"r_h", initial_state.r_h},
                          {"a_m", initial_state.a_m}, {"s_m", initial_state.s_m},
                          {"e_m", initial_state.e_m}, {"i_m", initial_state.i_m}};
    j["grid"] = {{"t0", grid.t0}, {"T", grid.horizon()}, {"h", grid.step}};
    j["solver"] = {{"max_function_evaluations", solver.max_function_evaluations},
                   {"gradient_mode", solver.gradient_mode == nlp::GradientMode::adjoint
                                         ? "adjoint"
                                         : "finite-difference"},
                   {"constraint_tolerance", solver.constraint_tolerance},
                   {"stationarity_tolerance", solver.stationarity_tolerance}};
    j["method"] = to_string(method);
    j["n_subproblems"] = n_subproblems;
    j["sweep"] = {{"parameter", sweep_parameter}, {"values", sweep_values}};
    j["output_dir"] = output_dir.string();
    return j.dump();
}

std::string RunConfig::digest() const {
    // FNV-1a, 64 bit
    const std::string text = to_json();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_run_config(const std::string& json_text) {
    RunConfig cfg;
    cfg.grid = TimeGrid::uniform(0.0, 84.0, 0.25);
    if (json_text.empty()) return cfg;

    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(j,
                   {"parameters", "initial_state", "grid", "solver", "method", "n_subproblems",
                    "sweep", "output_dir"},
                   "");

    if (j.contains("parameters")) apply_parameters(j["parameters"], cfg.parameters);
    if (j.contains("initial_state")) apply_initial_state(j["initial_state"], cfg.initial_state);
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        reject_unknown(g, {"t0", "T", "h"}, "grid");
        const double t0 = g.contains("t0") ? number_at(g, "t0") : 0.0;
        const double T = g.contains("T") ? number_at(g, "T") : 84.0;
        const double h = g.contains("h") ? number_at(g, "h") : 0.25;
        cfg.grid = TimeGrid::uniform(t0, T, h);
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        reject_unknown(s,
                       {"max_function_evaluations", "gradient_mode", "constraint_tolerance",
                        "stationarity_tolerance"},
                       "solver");
        if (s.contains("max_function_evaluations")) {
            cfg.solver.max_function_evaluations =
                static_cast<int>(number_at(s, "max_function_evaluations"));
        }
        if (s.contains("gradient_mode")) {
            const std::string mode = s.at("gradient_mode").get<std::string>();
            if (mode == "adjoint") {
                cfg.solver.gradient_mode = nlp::GradientMode::adjoint;
            } else if (mode == "finite-difference") {
                cfg.solver.gradient_mode = nlp::GradientMode::finite_difference;
            } else {
                throw ConfigError("config key 'solver.gradient_mode' must be 'adjoint' or "
                                  "'finite-difference'");
            }
        }
        if (s.contains("constraint_tolerance")) {
            cfg.solver.constraint_tolerance = number_at(s, "constraint_tolerance");
        }
        if (s.contains("stationarity_tolerance")) {
            cfg.solver.stationarity_tolerance = number_at(s, "stationarity_tolerance");
        }
    }
    if (j.contains("method")) cfg.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("n_subproblems")) {
        cfg.n_subproblems = static_cast<int>(number_at(j, "n_subproblems"));
        if (cfg.n_subproblems < 1) throw ConfigError("config key 'n_subproblems' must be >= 1");
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        reject_unknown(s, {"parameter", "values"}, "sweep");
        if (s.contains("parameter")) {
            cfg.sweep_parameter = s.at("parameter").get<std::string>();
            if (cfg.sweep_parameter != "beta_hm" && cfg.sweep_parameter != "beta_mh") {
                throw ConfigError("config key 'sweep.parameter' must be 'beta_hm' or 'beta_mh'");
            }
        }
        if (s.contains("values")) {
            cfg.sweep_values = s.at("values").get<std::vector<double>>();
            if (cfg.sweep_values.empty()) {
                throw ConfigError("config key 'sweep.values' must be a non-empty list");
            }
        }
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();

    cfg.parameters.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open config file '" + file.string() + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_run_config(buf.str());
}

void write_trajectory_csv(std::ostream& os, const StateTrajectory& traj,
                          const std::string& config_header) {
    write_header(os, config_header);
    os << "t,s_h,e_h,i_h,r_h,a_m,s_m,e_m,i_m\n";
    for (int j = 0; j < traj.grid.n_nodes; ++j) {
        const StateVector& y = traj.states[static_cast<std::size_t>(j)];
        os << format_double(traj.grid.t(j));
        for (double v : {y.s_h, y.e_h, y.i_h, y.r_h, y.a_m, y.s_m, y.e_m, y.i_m}) {
            os << ',' << format_double(v);
        }
        os << '\n';
    }
}

StateTrajectory read_trajectory_csv(std::istream& is) {
    const auto lines = data_lines(is);
    if (lines.size() < 2) throw std::runtime_error("trajectory CSV: no data rows");
    if (split_csv_line(lines[0]).size() != 9) {
        throw std::runtime_error("trajectory CSV: expected 9 columns t,s_h,...,i_m");
    }
    StateTrajectory traj;
    std::vector<double> times;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split_csv_line(lines[r]);
        if (f.size() != 9) throw std::runtime_error("trajectory CSV: malformed row");
        times.push_back(parse_double(f[0], "time"));
        StateVector y;
        y.s_h = parse_double(f[1], "state");
        y.e_h = parse_double(f[2], "state");
        y.i_h = parse_double(f[3], "state");
        y.r_h = parse_double(f[4], "state");
        y.a_m = parse_double(f[5], "state");
        y.s_m = parse_double(f[6], "state");
        y.e_m = parse_double(f[7], "state");
        y.i_m = parse_double(f[8], "state");
        traj.states.push_back(y);
    }
    const double h = times.size() > 1 ? times[1] - times[0] : 1.0;
    traj.grid = TimeGrid::uniform(times.front(), times.back(), h);
    return traj;
}

void write_archive_csv(std::ostream& os, const ParetoArchive& archive,
                       const std::string& config_header) {
    write_header(os, config_header);
    os << "# anchors: ideal=(" << format_double(archive.anchors.ideal().f1) << ","
       << format_double(archive.anchors.ideal().f2) << ") nadir=("
       << format_double(archive.anchors.nadir().f1) << ","
       << format_double(archive.anchors.nadir().f2) << ")\n";
    os << "method,beta_param,f1,f2,status\n";
    for (const auto& e : archive.entries) {
        os << to_string(e.spec.method) << ',' << format_double(e.spec.beta_param()) << ','
           << format_double(e.point.f1) << ',' << format_double(e.point.f2) << ','
           << nlp::to_string(e.status) << '\n';
    }
}

void write_archive_controls_csv(std::ostream& os, const ParetoArchive& archive,
                                const std::string& config_header) {
    write_header(os, config_header);
    os << "entry";
    const int n = archive.entries.empty() ? 0 : archive.entries.front().control.size();
    for (int j = 0; j < n; ++j) os << ",c_" << j;
    os << '\n';
    for (std::size_t i = 0; i < archive.entries.size(); ++i) {
        os << i;
        for (double v : archive.entries[i].control.values) os << ',' << format_double(v);
        os << '\n';
    }
}

ImportedArchive read_archive_csv(std::istream& is) {
    const auto lines = data_lines(is);
    if (lines.empty()) throw std::runtime_error("archive CSV: empty file");
    const auto header = split_csv_line(lines[0]);
    if (header.size() != 5 || header[0] != "method") {
        throw std::runtime_error("archive CSV: expected header method,beta_param,f1,f2,status");
    }
    ImportedArchive out;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split_csv_line(lines[r]);
        if (f.size() != 5) throw std::runtime_error("archive CSV: malformed row");
        out.methods.push_back(f[0]);
        out.beta_params.push_back(parse_double(f[1], "beta_param"));
        out.points.push_back({parse_double(f[2], "f1"), parse_double(f[3], "f2")});
        out.statuses.push_back(f[4]);
    }
    return out;
}

void write_front_csv(std::ostream& os, const Front& front, const std::string& config_header) {
    write_header(os, config_header);
    const bool refs = !front.source_index.empty();
    os << (refs ? "f1,f2,control_ref\n" : "f1,f2\n");
    for (std::size_t i = 0; i < front.points.size(); ++i) {
        os << format_double(front.points[i].f1) << ',' << format_double(front.points[i].f2);
        if (refs) os << ',' << front.source_index[i];
        os << '\n';
    }
}

Front read_front_csv(std::istream& is) {
    const auto lines = data_lines(is);
    if (lines.empty()) throw std::runtime_error("front CSV: empty file");
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "f1" || header[1] != "f2") {
        throw std::runtime_error("front CSV: expected header f1,f2[,control_ref]");
    }
    const bool refs = header.size() >= 3;
    Front front;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split_csv_line(lines[r]);
        if (f.size() < 2) throw std::runtime_error("front CSV: malformed row");
        front.points.push_back({parse_double(f[0], "f1"), parse_double(f[1], "f2")});
        if (refs && f.size() >= 3) {
            front.source_index.push_back(static_cast<int>(parse_double(f[2], "control_ref")));
        }
    }
    return front;
}

std::vector<ControlTrajectory> read_controls_csv(std::istream& is) {
    const auto lines = data_lines(is);
    if (lines.empty()) throw std::runtime_error("controls CSV: empty file");
    std::vector<ControlTrajectory> out;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split_csv_line(lines[r]);
        if (f.size() < 2) throw std::runtime_error("controls CSV: malformed row");
        ControlTrajectory c;
        for (std::size_t j = 1; j < f.size(); ++j) {
            c.values.push_back(parse_double(f[j], "control"));
        }
        out.push_back(std::move(c));
    }
    return out;
}

ControlTrajectory read_control_file(const std::filesystem::path& file, int expected_nodes) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open control file '" + file.string() + "'");
    ControlTrajectory c;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv_line(line);
        c.values.push_back(parse_double(f.back(), "control"));
    }
    if (c.size() != expected_nodes) {
        throw std::runtime_error("control file '" + file.string() + "' has " +
                                 std::to_string(c.size()) + " values, grid needs " +
                                 std::to_string(expected_nodes));
    }
    c.validate();
    return c;
}

void write_matrix_csv(std::ostream& os, const std::vector<std::vector<double>>& rows,
                      const std::string& config_header) {
    write_header(os, config_header);
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << format_double(row[j]);
        }
        os << '\n';
    }
}

}  // namespace dengue
