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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dengue/nlp.hpp"

using namespace dengue;
using nlp::GradientRequest;
using nlp::WhichObjective;

namespace {

const ModelParameters params;
const TimeGrid grid = TimeGrid::uniform(0.0, 84.0, 0.25);
const StateVector init = default_initial_state();

ControlTrajectory random_control(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ControlTrajectory c;
    c.values.resize(static_cast<std::size_t>(grid.n_nodes));
    for (auto& v : c.values) v = uni(rng);
    return c;
}

double functional_value(const ControlTrajectory& c, const GradientRequest& req) {
    const auto traj = integrate_rk4(c, params, grid, init);
    switch (req.which) {
        case WhichObjective::f1: return f1_infected_cost(traj);
        case WhichObjective::f2: return f2_insecticide_cost(c, grid);
        case WhichObjective::weighted_j: return weighted_cost_J(traj, c, req.cost);
        case WhichObjective::composite:
            return req.f1_weight * f1_infected_cost(traj) +
                   req.f2_weight * f2_insecticide_cost(c, grid);
    }
    return 0.0;
}

// central finite difference in one coordinate, the independent oracle
double fd_coordinate(const ControlTrajectory& c, int idx, const GradientRequest& req,
                     double step = 1e-5) {
    ControlTrajectory cp = c, cm = c;
    cp.values[static_cast<std::size_t>(idx)] += step;
    cm.values[static_cast<std::size_t>(idx)] -= step;
    return (functional_value(cp, req) - functional_value(cm, req)) / (2.0 * step);
}

// scale-aware agreement metric: relative for entries that carry the
// gradient's magnitude, floored by 1e-3 of the gradient's infinity norm so
// the oracle's own round-off noise (absolute, ~|f|*eps/step) does not
// dominate the vanishing late-horizon sensitivities
void check_against_fd(const ControlTrajectory& c, const GradientRequest& req, int n_coords,
                      std::mt19937& rng, double tol) {
    const auto grad = nlp::objective_gradient(c, params, grid, init, req);
    double grad_scale = 0.0;
    for (double v : grad) grad_scale = std::max(grad_scale, std::abs(v));
    std::uniform_int_distribution<int> pick(0, grid.n_nodes - 1);
    for (int i = 0; i < n_coords; ++i) {
        const int coord = pick(rng);
        const double fd = fd_coordinate(c, coord, req);
        const double a = grad[static_cast<std::size_t>(coord)];
        const double denom = std::max({std::abs(fd), std::abs(a), 1e-3 * grad_scale});
        const double rel = denom > 0.0 ? std::abs(a - fd) / denom : 0.0;
        CAPTURE(coord);
        CHECK(rel <= tol);
    }
}

}  // namespace

TEST_CASE("f2 gradient is the trapezoid weight vector") {
    const auto g = nlp::objective_gradient(ControlTrajectory::constant(0.3, grid.n_nodes), params,
                                           grid, init, {WhichObjective::f2});
    REQUIRE(static_cast<int>(g.size()) == grid.n_nodes);
    CHECK(g.front() == 0.125);
    CHECK(g.back() == 0.125);
    CHECK(g[100] == 0.25);
}

TEST_CASE("adjoint f1 gradient matches central differences at c = 0.5") {
    std::mt19937 rng(17);
    check_against_fd(ControlTrajectory::constant(0.5, grid.n_nodes), {WhichObjective::f1}, 20,
                     rng, 1e-5);
}

TEST_CASE("adjoint f1 gradient matches central differences at random controls") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        check_against_fd(random_control(rng), {WhichObjective::f1}, 10, rng, 1e-5);
    }
}

TEST_CASE("adjoint J gradient matches central differences") {
    std::mt19937 rng(29);
    GradientRequest req;
    req.which = WhichObjective::weighted_j;
    req.cost = {0.7, 1.3};
    for (int trial = 0; trial < 3; ++trial) {
        check_against_fd(random_control(rng), req, 10, rng, 1e-5);
    }
}

TEST_CASE("composite gradient is the matching linear combination") {
    std::mt19937 rng(31);
    const auto c = random_control(rng);
    GradientRequest req;
    req.which = WhichObjective::composite;
    req.f1_weight = 2.5;
    req.f2_weight = -0.75;
    const auto combo = nlp::objective_gradient(c, params, grid, init, req);
    const auto g1 = nlp::objective_gradient(c, params, grid, init, {WhichObjective::f1});
    const auto g2 = nlp::objective_gradient(c, params, grid, init, {WhichObjective::f2});
    for (int j = 0; j < grid.n_nodes; ++j) {
        const auto k = static_cast<std::size_t>(j);
        CHECK(combo[k] == doctest::Approx(2.5 * g1[k] - 0.75 * g2[k]).epsilon(1e-12));
    }
}

TEST_CASE("full control is a descent floor: all f1 sensitivities nonpositive") {
    const auto g = nlp::objective_gradient(ControlTrajectory::constant(1.0, grid.n_nodes), params,
                                           grid, init, {WhichObjective::f1});
    CHECK(*std::max_element(g.begin(), g.end()) <= 0.0);
}

TEST_CASE("non-finite dynamics surface as a numerical failure") {
    ModelParameters bad = params;
    bad.phi = 1e300;  // blows up the aquatic compartment immediately
    CHECK_THROWS_AS(nlp::objective_gradient(ControlTrajectory::constant(0.0, grid.n_nodes), bad,
                                            grid, init, {WhichObjective::f1}),
                    std::runtime_error);
}

TEST_CASE("finite-difference helper agrees with the adjoint on f1") {
    std::mt19937 rng(37);
    const auto c = random_control(rng);
    const auto adj = nlp::objective_gradient(c, params, grid, init, {WhichObjective::f1});
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(c.values.data(), grid.n_nodes);
    const Eigen::VectorXd fd = nlp::finite_difference_gradient(
        [&](const Eigen::VectorXd& u) {
            ControlTrajectory cc;
            cc.values.assign(u.data(), u.data() + u.size());
            return f1_infected_cost(integrate_rk4(cc, params, grid, init));
        },
        x);
    double max_abs = 0.0;
    for (int j = 0; j < grid.n_nodes; ++j) max_abs = std::max(max_abs, std::abs(fd[j]));
    for (int j = 0; j < grid.n_nodes; ++j) {
        CHECK(std::abs(adj[static_cast<std::size_t>(j)] - fd[j]) <= 1e-5 * std::max(max_abs, 1e-12));
    }
}
