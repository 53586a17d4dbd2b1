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

#include <cmath>
#include <limits>

#include "dengue/nlp.hpp"

using namespace dengue::nlp;
using Eigen::VectorXd;

namespace {

ScalarProblem box_problem(int n, DiffFunction objective) {
    ScalarProblem p;
    p.lower = VectorXd::Constant(n, -1.0);
    p.upper = VectorXd::Constant(n, 1.0);
    p.objective = std::move(objective);
    return p;
}

DiffFunction sum_of_squares() {
    return [](const VectorXd& x, VectorXd* g) {
        if (g) *g = 2.0 * x;
        return x.squaredNorm();
    };
}

}  // namespace

TEST_CASE("convex quadratic over a box") {
    ScalarProblem p = box_problem(5, sum_of_squares());
    SolveOptions opts;
    const SolveResult r = minimize(p, VectorXd::Ones(5), opts);
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.objective_value <= 1e-10);
    CHECK(r.x_star.lpNorm<Eigen::Infinity>() <= 1e-5);
    CHECK(r.evaluations_used <= opts.max_function_evaluations);
}

TEST_CASE("active linear constraint") {
    // minimize x subject to 0.5 - x <= 0 on [0, 1]
    ScalarProblem p;
    p.lower = VectorXd::Zero(1);
    p.upper = VectorXd::Ones(1);
    p.objective = [](const VectorXd& x, VectorXd* g) {
        if (g) (*g) = VectorXd::Ones(1);
        return x[0];
    };
    p.inequality_constraints.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) (*g) = -VectorXd::Ones(1);
        return 0.5 - x[0];
    });
    const SolveResult r = minimize(p, VectorXd::Ones(1), {});
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.x_star[0] == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(r.constraint_violation <= 1e-6);
}

TEST_CASE("bounds clip the unconstrained minimizer") {
    // minimize (x - 3)^2 on [-1, 1]: solution at the upper bound
    ScalarProblem p = box_problem(1, [](const VectorXd& x, VectorXd* g) {
        if (g) (*g) = 2.0 * (x.array() - 3.0).matrix();
        return (x[0] - 3.0) * (x[0] - 3.0);
    });
    const SolveResult r = minimize(p, VectorXd::Zero(1), {});
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.x_star[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("infeasible start is projected onto the box") {
    bool saw_out_of_box = false;
    ScalarProblem p = box_problem(3, [&](const VectorXd& x, VectorXd* g) {
        if ((x.array() > 1.0).any() || (x.array() < -1.0).any()) saw_out_of_box = true;
        if (g) *g = 2.0 * x;
        return x.squaredNorm();
    });
    VectorXd x0(3);
    x0 << 10.0, -10.0, 0.5;
    const SolveResult r = minimize(p, x0, {});
    CHECK(!saw_out_of_box);
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.x_star.lpNorm<Eigen::Infinity>() <= 1e-5);
}

TEST_CASE("every evaluation point stays inside the box") {
    ScalarProblem p;
    p.lower = VectorXd::Zero(4);
    p.upper = VectorXd::Ones(4);
    p.objective = [&](const VectorXd& x, VectorXd* g) {
        REQUIRE((x.array() >= -1e-15).all());
        REQUIRE((x.array() <= 1.0 + 1e-15).all());
        if (g) *g = (2.0 * (x.array() - 0.3)).matrix();
        return (x.array() - 0.3).square().sum();
    };
    p.inequality_constraints.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) {
            g->setZero(x.size());
            (*g)[0] = 1.0;
        }
        return x[0] - 0.8;
    });
    const SolveResult r = minimize(p, VectorXd::Ones(4), {});
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.x_star[1] == doctest::Approx(0.3).epsilon(1e-4));
}

TEST_CASE("merit is non-increasing across accepted iterations") {
    ScalarProblem p = box_problem(6, [](const VectorXd& x, VectorXd* g) {
        double f = x.squaredNorm();
        VectorXd grad = 2.0 * x;
        for (int i = 0; i + 1 < x.size(); ++i) {
            const double t = x[i] * x[i] - 0.5 * x[i + 1];
            f += t * t;
            grad[i] += 4.0 * t * x[i];
            grad[i + 1] += -1.0 * t;
        }
        if (g) *g = grad;
        return f;
    });
    SolveOptions opts;
    opts.record_merit_history = true;
    const SolveResult r = minimize(p, VectorXd::Constant(6, 0.9), opts);
    REQUIRE(r.merit_history.size() > 1);
    for (std::size_t i = 1; i < r.merit_history.size(); ++i) {
        if (std::isnan(r.merit_history[i]) || std::isnan(r.merit_history[i - 1])) continue;
        CHECK(r.merit_history[i] <= r.merit_history[i - 1] + 1e-12);
    }
}

TEST_CASE("two-branch minimax lands on the kink") {
    // max(x^2, (x-2)^2) has its minimum 1 at the kink x = 1
    ScalarProblem p;
    p.lower = VectorXd::Constant(1, -5.0);
    p.upper = VectorXd::Constant(1, 5.0);
    p.objective_branches.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) (*g) = 2.0 * x;
        return x[0] * x[0];
    });
    p.objective_branches.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) (*g) = 2.0 * (x.array() - 2.0).matrix();
        return (x[0] - 2.0) * (x[0] - 2.0);
    });
    const SolveResult r = minimize(p, VectorXd::Constant(1, -4.0), {});
    CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x_star[0] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("minimax whose optimum sits on a single smooth branch") {
    ScalarProblem p;
    p.lower = VectorXd::Constant(2, -3.0);
    p.upper = VectorXd::Constant(2, 3.0);
    p.objective_branches.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) *g = 2.0 * (x - VectorXd::Constant(2, 1.0));
        return (x - VectorXd::Constant(2, 1.0)).squaredNorm();
    });
    p.objective_branches.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) {
            g->setZero(2);
            (*g)[0] = 0.2;
        }
        return 0.2 * x[0] - 1.0;
    });
    // branch 1 bottoms out at (1,1) with value 0 where branch 2 = -0.8
    const SolveResult r = minimize(p, VectorXd::Constant(2, -2.0), {});
    CHECK(r.objective_value == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.x_star[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("NaN objective reports numerical failure") {
    ScalarProblem p = box_problem(2, [](const VectorXd&, VectorXd*) {
        return std::numeric_limits<double>::quiet_NaN();
    });
    const SolveResult r = minimize(p, VectorXd::Zero(2), {});
    CHECK(r.status == SolveStatus::numerical_failure);
}

TEST_CASE("tight budget stops with the budget status and an in-box point") {
    ScalarProblem p = box_problem(8, sum_of_squares());
    SolveOptions opts;
    opts.max_function_evaluations = 4;
    const SolveResult r = minimize(p, VectorXd::Ones(8), opts);
    CHECK(r.status == SolveStatus::eval_budget_exhausted);
    CHECK(r.evaluations_used <= 4);
    CHECK((r.x_star.array() <= 1.0).all());
    CHECK((r.x_star.array() >= -1.0).all());
    // never worse than the start
    CHECK(r.objective_value <= 8.0 + 1e-12);
}

TEST_CASE("result is never lexicographically worse than the start") {
    ScalarProblem p;
    p.lower = VectorXd::Zero(2);
    p.upper = VectorXd::Ones(2);
    p.objective = [](const VectorXd& x, VectorXd* g) {
        if (g) *g = 2.0 * x;
        return x.squaredNorm();
    };
    p.inequality_constraints.push_back([](const VectorXd& x, VectorXd* g) {
        if (g) {
            g->setZero(2);
            (*g)[0] = -1.0;
        }
        return 0.25 - x[0];  // requires x0 >= 0.25
    });
    const VectorXd x0 = VectorXd::Constant(2, 0.9);  // feasible start
    const SolveResult r = minimize(p, x0, {});
    CHECK(r.constraint_violation <= 1e-6);
    CHECK(r.objective_value <= x0.squaredNorm() + 1e-12);
    CHECK(r.x_star[0] == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(std::abs(r.x_star[1]) <= 1e-4);
}

TEST_CASE("problem validation") {
    ScalarProblem p;
    p.lower = VectorXd::Ones(2);
    p.upper = VectorXd::Zero(2);
    p.objective = sum_of_squares();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.upper = VectorXd::Constant(2, 2.0);
    CHECK_NOTHROW(p.validate());
    ScalarProblem empty;
    empty.lower = VectorXd::Zero(1);
    empty.upper = VectorXd::Ones(1);
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
    CHECK_THROWS_AS(minimize(p, VectorXd::Zero(3), {}), std::invalid_argument);
}
