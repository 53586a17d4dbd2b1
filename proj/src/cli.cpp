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
#include "dengue/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>

#include "dengue/nlp.hpp"
#include "dengue/pareto.hpp"

namespace dengue::cli {

namespace {

std::string provenance(const RunConfig& cfg, const std::string& command) {
    std::ostringstream ss;
    ss << "denguectl " << command << "\n";
    ss << "config digest " << cfg.digest() << "\n";
    ss << cfg.to_json();
    return ss.str();
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    return os;
}

Front archive_front(const ParetoArchive& archive) {
    std::vector<ObjectivePoint> pts;
    pts.reserve(archive.entries.size());
    for (const auto& e : archive.entries) pts.push_back(e.point);
    return nondominated_filter(pts);
}

double archive_hypervolume(const ParetoArchive& archive) {
    const Front nd = archive_front(archive);
    const Front norm = normalize_objectives(nd, archive.anchors.ideal(), archive.anchors.nadir());
    return hypervolume_2d(norm);
}

struct ParetoOutputs {
    ParetoArchive archive;
    double hypervolume = 0.0;
    bool quota_exceeded = false;
};

ParetoOutputs run_pareto(const RunConfig& cfg) {
    auto ev = std::make_shared<ObjectiveEvaluator>(cfg.parameters, cfg.grid, cfg.initial_state,
                                                   cfg.solver.gradient_mode);
    const AnchorData anchors = compute_anchors(cfg.parameters, cfg.grid, cfg.solver,
                                               cfg.initial_state);
    ParetoOutputs out;
    out.archive = approximate_pareto(cfg.method, cfg.n_subproblems, ev, anchors, cfg.solver);
    out.archive.config_digest = cfg.digest();
    out.hypervolume = archive_hypervolume(out.archive);
    out.quota_exceeded = 5 * out.archive.failure_count() > out.archive.entries.size();
    return out;
}

void write_archive_files(const ParetoOutputs& out, const RunConfig& cfg,
                         const std::filesystem::path& dir, std::ostream& log) {
    const std::string header = provenance(cfg, "pareto");
    const std::string stem = to_string(cfg.method);
    {
        auto os = open_out(dir / (stem + ".archive.csv"));
        write_archive_csv(os, out.archive, header);
    }
    {
        auto os = open_out(dir / (stem + ".controls.csv"));
        write_archive_controls_csv(os, out.archive, header);
    }
    {
        const Front nd = archive_front(out.archive);
        auto os = open_out(dir / (stem + ".front.csv"));
        write_front_csv(os, nd, header);
    }
    log << stem << ": " << out.archive.entries.size() << " subproblems, "
        << out.archive.failure_count() << " failures, hypervolume "
        << format_double(out.hypervolume) << "\n";
}

std::vector<std::vector<double>> control_surface(const ParetoArchive& archive) {
    std::vector<const ArchiveEntry*> order;
    for (const auto& e : archive.entries) order.push_back(&e);
    std::stable_sort(order.begin(), order.end(), [](const ArchiveEntry* a, const ArchiveEntry* b) {
        return a->point.f2 < b->point.f2;
    });
    std::vector<std::vector<double>> rows;
    rows.reserve(order.size());
    for (const ArchiveEntry* e : order) rows.push_back(e->control.values);
    return rows;
}

std::vector<std::vector<double>> infected_surface(const ParetoArchive& archive,
                                                  const RunConfig& cfg) {
    std::vector<const ArchiveEntry*> order;
    for (const auto& e : archive.entries) order.push_back(&e);
    std::stable_sort(order.begin(), order.end(), [](const ArchiveEntry* a, const ArchiveEntry* b) {
        return a->point.f2 < b->point.f2;
    });
    std::vector<std::vector<double>> rows;
    rows.reserve(order.size());
    for (const ArchiveEntry* e : order) {
        const StateTrajectory traj =
            integrate_rk4(e->control, cfg.parameters, cfg.grid, cfg.initial_state);
        rows.push_back(traj.component(&StateVector::i_h));
    }
    return rows;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, const SimulateArgs& args, std::ostream& log) {
    ControlTrajectory control;
    if (args.control_file) {
        control = read_control_file(*args.control_file, cfg.grid.n_nodes);
    } else {
        const double level = args.control_level.value_or(0.0);
        if (level < 0.0 || level > 1.0) {
            throw ConfigError("control level must lie in [0,1]");
        }
        control = ControlTrajectory::constant(level, cfg.grid.n_nodes);
    }
    const StateTrajectory traj = integrate_rk4(control, cfg.parameters, cfg.grid,
                                               cfg.initial_state);
    auto os = open_out(args.output);
    write_trajectory_csv(os, traj, provenance(cfg, "simulate"));
    log << "simulate: wrote " << cfg.grid.n_nodes << " nodes to " << args.output.string()
        << ", f1 " << format_double(f1_infected_cost(traj)) << ", f2 "
        << format_double(f2_insecticide_cost(control, cfg.grid)) << "\n";
    return exit_ok;
}

int cmd_optimize(const RunConfig& cfg, const OptimizeArgs& args, std::ostream& log) {
    auto ev = std::make_shared<ObjectiveEvaluator>(cfg.parameters, cfg.grid, cfg.initial_state,
                                                   cfg.solver.gradient_mode);
    const int n = cfg.grid.n_nodes;
    nlp::ScalarProblem prob;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);

    if (cfg.method == ScalarizationMethod::eps_constraint) {
        if (!args.eps) throw ConfigError("optimize: eps-constraint needs --eps");
        prob = eps_constraint_problem(*args.eps, ev);
    } else {
        if (!args.w1) throw ConfigError("optimize: this method needs --w1");
        if (*args.w1 < 0.0 || *args.w1 > 1.0) throw ConfigError("optimize: w1 must be in [0,1]");
        const double w1 = std::max(*args.w1, 1e-6);
        const double w2 = std::max(1.0 - *args.w1, 1e-6);
        const AnchorData anchors = compute_anchors(cfg.parameters, cfg.grid, cfg.solver,
                                                   cfg.initial_state);
        const ObjectivePoint ideal = anchors.ideal();
        const ObjectivePoint nadir = anchors.nadir();
        const ObjectivePoint utopian{ideal.f1 - 1e-4 * (nadir.f1 - ideal.f1),
                                     ideal.f2 - 1e-4 * (nadir.f2 - ideal.f2)};
        switch (cfg.method) {
            case ScalarizationMethod::chebyshev:
                prob = chebyshev_problem(w1, w2, utopian, ev);
                break;
            case ScalarizationMethod::goal_attainment: {
                const double alpha_upper =
                    10.0 * std::max(nadir.f1 - utopian.f1, nadir.f2 - utopian.f2);
                prob = goal_attainment_problem(w1, w2, utopian, alpha_upper, ev);
                x0.conservativeResize(n + 1);
                x0[n] = goal_attainment_alpha0(w1, w2, utopian,
                                               ev->objectives(Eigen::VectorXd::Zero(n)));
                break;
            }
            case ScalarizationMethod::normal_constraint:
                prob = normal_constraint_problem(w1, w2, anchors, ev);
                break;
            default:
                break;
        }
    }

    const nlp::SolveResult res = nlp::minimize(prob, x0, cfg.solver);
    const Eigen::VectorXd u = res.x_star.head(n);
    const ObjectivePoint pt = ev->objectives(u);

    auto os = open_out(args.output);
    os << "# " << provenance(cfg, "optimize") << "\n";
    os << "c\n";
    for (int j = 0; j < n; ++j) os << format_double(u[j]) << '\n';

    log << "optimize (" << to_string(cfg.method) << "): f1 " << format_double(pt.f1) << ", f2 "
        << format_double(pt.f2) << ", status " << nlp::to_string(res.status) << ", evaluations "
        << res.evaluations_used << "\n";
    return res.status == nlp::SolveStatus::numerical_failure ? exit_solver_quota : exit_ok;
}

int cmd_pareto(const RunConfig& cfg, std::ostream& log) {
    const ParetoOutputs out = run_pareto(cfg);
    write_archive_files(out, cfg, cfg.output_dir, log);
    return out.quota_exceeded ? exit_solver_quota : exit_ok;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
    struct SweepJob {
        double value;
        RunConfig cfg;
    };
    std::vector<SweepJob> jobs;
    for (double v : cfg.sweep_values) {
        RunConfig c = cfg;
        if (cfg.sweep_parameter == "beta_mh") {
            c.parameters.beta_mh = v;
        } else {
            c.parameters.beta_hm = v;
        }
        c.parameters.validate();
        jobs.push_back({v, std::move(c)});
    }

    // distinct sweep values solve independently; the coordinator below does
    // all the writing
    std::vector<std::future<ParetoOutputs>> futures;
    futures.reserve(jobs.size());
    for (const auto& job : jobs) {
        futures.push_back(std::async(std::launch::async,
                                     [&job]() { return run_pareto(job.cfg); }));
    }

    int exit_code = exit_ok;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const SweepJob& job = jobs[i];
        ParetoOutputs out = futures[i].get();
        std::ostringstream dirname;
        dirname << "sweep_" << cfg.sweep_parameter << "_" << format_double(job.value);
        const std::filesystem::path dir = cfg.output_dir / dirname.str();
        log << cfg.sweep_parameter << " = " << format_double(job.value) << ": ";
        write_archive_files(out, job.cfg, dir, log);
        if (out.quota_exceeded) exit_code = exit_solver_quota;

        const std::string header = provenance(job.cfg, "sweep");
        // extreme scenarios: no control and full control
        for (const double level : {0.0, 1.0}) {
            const auto control = ControlTrajectory::constant(level, job.cfg.grid.n_nodes);
            const StateTrajectory traj = integrate_rk4(control, job.cfg.parameters, job.cfg.grid,
                                                       job.cfg.initial_state);
            auto os = open_out(dir / (level == 0.0 ? "extreme_c0.csv" : "extreme_c1.csv"));
            write_trajectory_csv(os, traj, header);
        }
        {
            auto os = open_out(dir / "surface_control.csv");
            write_matrix_csv(os, control_surface(out.archive), header);
        }
        {
            auto os = open_out(dir / "surface_i_h.csv");
            write_matrix_csv(os, infected_surface(out.archive, job.cfg), header);
        }

        // knee of this sweep point, in the front's own normalized frame
        const Front nd = archive_front(out.archive);
        std::ostringstream knee_text;
        if (nd.size() >= 3) {
            const Front norm = normalize_objectives(nd, out.archive.anchors.ideal(),
                                                    out.archive.anchors.nadir());
            const KneeResult knee = knee_point(norm);
            if (knee.status == KneeStatus::found) {
                const ObjectivePoint raw = nd.points[static_cast<std::size_t>(knee.index)];
                const int entry = nd.source_index[static_cast<std::size_t>(knee.index)];
                knee_text << "knee f1 " << format_double(raw.f1) << ", f2 "
                          << format_double(raw.f2) << ", entry " << entry << ", beta_param "
                          << format_double(
                                 out.archive.entries[static_cast<std::size_t>(entry)]
                                     .spec.beta_param());
                auto os = open_out(dir / "knee_control.csv");
                os << "c\n";
                for (double v :
                     out.archive.entries[static_cast<std::size_t>(entry)].control.values) {
                    os << format_double(v) << '\n';
                }
            } else {
                knee_text << "knee degenerate (collinear front)";
            }
        } else {
            knee_text << "knee undefined (front has fewer than 3 points)";
        }
        log << "  " << knee_text.str() << "\n";
        auto os = open_out(dir / "knee.txt");
        os << knee_text.str() << '\n';
    }
    return exit_code;
}

int cmd_knee(const KneeArgs& args, std::ostream& log) {
    std::ifstream archive_is(args.archive_csv);
    if (!archive_is) throw ConfigError("cannot open archive '" + args.archive_csv.string() + "'");
    const ImportedArchive archive = read_archive_csv(archive_is);

    const Front nd = nondominated_filter(archive.points);
    if (nd.size() < 3) {
        log << "knee undefined: archive has " << nd.size() << " nondominated points (need 3)\n";
        return exit_degenerate;
    }
    // Eq.-5 frame of this front: its own extreme values
    ObjectivePoint ideal{std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
    ObjectivePoint nadir{-std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity()};
    for (const auto& p : nd.points) {
        ideal.f1 = std::min(ideal.f1, p.f1);
        ideal.f2 = std::min(ideal.f2, p.f2);
        nadir.f1 = std::max(nadir.f1, p.f1);
        nadir.f2 = std::max(nadir.f2, p.f2);
    }
    const Front norm = normalize_objectives(nd, ideal, nadir);
    const KneeResult knee = knee_point(norm);
    if (knee.status != KneeStatus::found) {
        log << "knee degenerate: front is collinear\n";
        return exit_degenerate;
    }
    const std::size_t k = static_cast<std::size_t>(knee.index);
    const int row = nd.source_index[k];
    log << "knee: f1 " << format_double(nd.points[k].f1) << ", f2 "
        << format_double(nd.points[k].f2) << ", method " << archive.methods[static_cast<std::size_t>(row)]
        << ", beta_param " << format_double(archive.beta_params[static_cast<std::size_t>(row)])
        << "\n";

    if (!args.controls_csv.empty()) {
        std::ifstream controls_is(args.controls_csv);
        if (!controls_is) {
            throw ConfigError("cannot open controls '" + args.controls_csv.string() + "'");
        }
        const auto controls = read_controls_csv(controls_is);
        if (static_cast<std::size_t>(row) >= controls.size()) {
            throw ConfigError("controls sidecar has no row " + std::to_string(row));
        }
        auto os = open_out(args.output_control);
        os << "c\n";
        for (double v : controls[static_cast<std::size_t>(row)].values) {
            os << format_double(v) << '\n';
        }
        log << "knee control written to " << args.output_control.string() << "\n";
    }
    return exit_ok;
}

int cmd_hypervolume(const HypervolumeArgs& args, std::ostream& log) {
    std::ifstream is(args.front_csv);
    if (!is) throw ConfigError("cannot open front '" + args.front_csv.string() + "'");
    Front front = read_front_csv(is);
    front.source_index.clear();
    if (args.normalize) {
        const Front nd = nondominated_filter(front.points);
        ObjectivePoint ideal{std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()};
        ObjectivePoint nadir{-std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()};
        for (const auto& p : nd.points) {
            ideal.f1 = std::min(ideal.f1, p.f1);
            ideal.f2 = std::min(ideal.f2, p.f2);
            nadir.f1 = std::max(nadir.f1, p.f1);
            nadir.f2 = std::max(nadir.f2, p.f2);
        }
        front = normalize_objectives(front, ideal, nadir);
    }
    const double hv = hypervolume_2d(front, {{args.ref_f1, args.ref_f2}});
    log << "hypervolume " << format_double(hv) << "\n";
    return exit_ok;
}

}  // namespace dengue::cli
