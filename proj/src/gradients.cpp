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
#include <cmath>
#include <stdexcept>

#include "dengue/nlp.hpp"

namespace dengue::nlp {

namespace {

// Per-node integrand derivatives of the functional being differentiated.
// d/d(state) enters the adjoint seed, d/d(control) the direct control term.
struct IntegrandDerivative {
    // coefficient on i_h in d(integrand)/d(state); only i_h appears in any
    // of the supported functionals
    std::function<double(const StateVector&)> d_ih;
    std::function<double(double /*control*/)> d_control;
};

IntegrandDerivative integrand_for(const GradientRequest& req) {
    switch (req.which) {
        case WhichObjective::f1:
            return {[](const StateVector&) { return 1.0; }, [](double) { return 0.0; }};
        case WhichObjective::f2:
            return {[](const StateVector&) { return 0.0; }, [](double) { return 1.0; }};
        case WhichObjective::weighted_j: {
            const double gd = req.cost.gamma_D;
            const double gs = req.cost.gamma_S;
            return {[gd](const StateVector& y) { return 2.0 * gd * y.i_h; },
                    [gs](double c) { return 2.0 * gs * c; }};
        }
        case WhichObjective::composite: {
            const double a = req.f1_weight;
            const double b = req.f2_weight;
            return {[a](const StateVector&) { return a; }, [b](double) { return b; }};
        }
    }
    throw std::invalid_argument("objective_gradient: unknown functional");
}

}  // namespace

std::vector<double> objective_gradient(const StateTrajectory& traj,
                                       const ControlTrajectory& control,
                                       const ModelParameters& p, const GradientRequest& req) {
    const TimeGrid& grid = traj.grid;
    if (control.size() != grid.n_nodes ||
        traj.states.size() != static_cast<std::size_t>(grid.n_nodes)) {
        throw std::invalid_argument("objective_gradient: control/trajectory/grid size mismatch");
    }
    if (req.which == WhichObjective::weighted_j) req.cost.validate();

    const auto w = trapezoid_weights(grid);
    const auto integrand = integrand_for(req);
    const double h = grid.step;
    const int n = grid.n_nodes;

    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        grad[static_cast<std::size_t>(j)] =
            w[static_cast<std::size_t>(j)] * integrand.d_control(control.values[static_cast<std::size_t>(j)]);
    }

    // lambda_j = d(total cost)/d(state_j); seeded at the final node, then
    // pulled backward through each RK4 step.
    StateVector lambda{};
    lambda.i_h = w[static_cast<std::size_t>(n - 1)] * integrand.d_ih(traj.states.back());

    for (int j = n - 2; j >= 0; --j) {
        const StateVector& y = traj.states[static_cast<std::size_t>(j)];
        const double ca = control.values[static_cast<std::size_t>(j)];
        const double cb = control.values[static_cast<std::size_t>(j) + 1];
        const double cm = 0.5 * (ca + cb);

        // recompute the forward stages of step j
        const StateVector k1 = rhs(y, ca, p);
        const StateVector s2 = y + (0.5 * h) * k1;
        const StateVector k2 = rhs(s2, cm, p);
        const StateVector s3 = y + (0.5 * h) * k2;
        const StateVector k3 = rhs(s3, cm, p);
        const StateVector s4 = y + h * k3;

        // reverse sweep of y_{j+1} = y_j + h/6 (k1 + 2 k2 + 2 k3 + k4)
        StateVector ybar = lambda;
        StateVector k1bar = (h / 6.0) * lambda;
        StateVector k2bar = (h / 3.0) * lambda;
        StateVector k3bar = (h / 3.0) * lambda;
        const StateVector k4bar = (h / 6.0) * lambda;
        double ca_bar = 0.0, cb_bar = 0.0, cm_bar = 0.0;

        const StateVector s4bar = rhs_vjp_state(s4, cb, p, k4bar);
        cb_bar += rhs_vjp_control(s4, k4bar);
        ybar += s4bar;
        k3bar += h * s4bar;

        const StateVector s3bar = rhs_vjp_state(s3, cm, p, k3bar);
        cm_bar += rhs_vjp_control(s3, k3bar);
        ybar += s3bar;
        k2bar += (0.5 * h) * s3bar;

        const StateVector s2bar = rhs_vjp_state(s2, cm, p, k2bar);
        cm_bar += rhs_vjp_control(s2, k2bar);
        ybar += s2bar;
        k1bar += (0.5 * h) * s2bar;

        ybar += rhs_vjp_state(y, ca, p, k1bar);
        ca_bar += rhs_vjp_control(y, k1bar);

        // the half-step control is the average of the bounding nodes
        grad[static_cast<std::size_t>(j)] += ca_bar + 0.5 * cm_bar;
        grad[static_cast<std::size_t>(j) + 1] += cb_bar + 0.5 * cm_bar;

        lambda = ybar;
        lambda.i_h += w[static_cast<std::size_t>(j)] * integrand.d_ih(y);

        if (!lambda.all_finite()) {
            throw std::runtime_error("objective_gradient: non-finite adjoint state");
        }
    }
    return grad;
}

std::vector<double> objective_gradient(const ControlTrajectory& control,
                                       const ModelParameters& p, const TimeGrid& grid,
                                       const StateVector& init, const GradientRequest& req) {
    if (req.which == WhichObjective::f2) {
        // f2 never touches the dynamics; its gradient is the quadrature rule
        return trapezoid_weights(grid);
    }
    const StateTrajectory traj = integrate_rk4(control, p, grid, init);
    return objective_gradient(traj, control, p, req);
}

Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, double step) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        xp[i] = xi + step;
        const double fp = f(xp);
        xp[i] = xi - step;
        const double fm = f(xp);
        xp[i] = xi;
        g[i] = (fp - fm) / (2.0 * step);
    }
    return g;
}

}  // namespace dengue::nlp
