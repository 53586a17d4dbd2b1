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
#include "dengue/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dengue {

void ModelParameters::validate() const {
    const struct {
        const char* name;
        double value;
    } rates[] = {
        {"N_h", N_h},   {"B", B},         {"beta_mh", beta_mh}, {"beta_hm", beta_hm},
        {"mu_h", mu_h}, {"eta_h", eta_h}, {"mu_m", mu_m},       {"phi", phi},
        {"mu_A", mu_A}, {"eta_A", eta_A}, {"eta_m", eta_m},     {"nu_h", nu_h},
        {"m", m},       {"k", k},
    };
    for (const auto& r : rates) {
        if (!(r.value > 0.0) || !std::isfinite(r.value)) {
            throw std::invalid_argument(std::string("model parameter '") + r.name +
                                        "' must be strictly positive");
        }
    }
    if (beta_mh > 1.0 || beta_hm > 1.0) {
        throw std::invalid_argument(beta_mh > 1.0
                                        ? "model parameter 'beta_mh' must lie in [0,1]"
                                        : "model parameter 'beta_hm' must lie in [0,1]");
    }
}

double StateVector::min_component() const {
    return std::min({s_h, e_h, i_h, r_h, a_m, s_m, e_m, i_m});
}

bool StateVector::all_finite() const {
    for (double v : {s_h, e_h, i_h, r_h, a_m, s_m, e_m, i_m}) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

StateVector& StateVector::operator+=(const StateVector& o) {
    s_h += o.s_h;
    e_h += o.e_h;
    i_h += o.i_h;
    r_h += o.r_h;
    a_m += o.a_m;
    s_m += o.s_m;
    e_m += o.e_m;
    i_m += o.i_m;
    return *this;
}

StateVector operator*(double s, const StateVector& v) {
    return {s * v.s_h, s * v.e_h, s * v.i_h, s * v.r_h,
            s * v.a_m, s * v.s_m, s * v.e_m, s * v.i_m};
}

StateVector default_initial_state() {
    StateVector y;
    y.s_h = 0.99865;
    y.e_h = 0.00035;
    y.i_h = 0.001;
    y.r_h = 0.0;
    y.a_m = 1.0;
    y.s_m = 1.0;
    y.e_m = 0.0;
    y.i_m = 0.0;
    return y;
}

TimeGrid TimeGrid::uniform(double t0, double T, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("grid step h must be positive");
    if (!(T > t0)) throw std::invalid_argument("grid horizon T must exceed t0");
    const double intervals = (T - t0) / h;
    const double rounded = std::round(intervals);
    if (std::abs(intervals - rounded) > 1e-9 * std::max(1.0, intervals)) {
        throw std::invalid_argument("grid: (T - t0) is not a whole number of steps h");
    }
    TimeGrid g;
    g.t0 = t0;
    g.step = h;
    g.n_nodes = static_cast<int>(rounded) + 1;
    return g;
}

ControlTrajectory ControlTrajectory::constant(double level, int n_nodes) {
    return ControlTrajectory{std::vector<double>(static_cast<std::size_t>(n_nodes), level)};
}

void ControlTrajectory::validate() const {
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double v = values[j];
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw std::invalid_argument("control value at node " + std::to_string(j) +
                                        " is outside [0,1]");
        }
    }
}

std::vector<double> StateTrajectory::component(double StateVector::*member) const {
    std::vector<double> out(states.size());
    for (std::size_t j = 0; j < states.size(); ++j) out[j] = states[j].*member;
    return out;
}

StateVector rhs(const StateVector& y, double c, const ModelParameters& p) {
    const double force_h = p.B * p.beta_mh * p.m * y.i_m;  // bites by infected vectors
    const double force_m = p.B * p.beta_hm * y.i_h;        // bites on infected humans
    const double adults = y.s_m + y.e_m + y.i_m;

    StateVector d;
    d.s_h = p.mu_h - (force_h + p.mu_h) * y.s_h;
    d.e_h = force_h * y.s_h - (p.nu_h + p.mu_h) * y.e_h;
    d.i_h = p.nu_h * y.e_h - (p.eta_h + p.mu_h) * y.i_h;
    d.r_h = p.eta_h * y.i_h - p.mu_h * y.r_h;
    d.a_m = p.phi * (p.m / p.k) * (1.0 - y.a_m) * adults - (p.eta_A + p.mu_A) * y.a_m;
    d.s_m = p.eta_A * (p.k / p.m) * y.a_m - (force_m + p.mu_m) * y.s_m - c * y.s_m;
    d.e_m = force_m * y.s_m - (p.mu_m + p.eta_m) * y.e_m - c * y.e_m;
    d.i_m = p.eta_m * y.e_m - p.mu_m * y.i_m - c * y.i_m;
    return d;
}

StateVector rhs_vjp_state(const StateVector& y, double c, const ModelParameters& p,
                          const StateVector& v) {
    const double fh = p.B * p.beta_mh * p.m;  // d force_h / d i_m
    const double fm = p.B * p.beta_hm;        // d force_m / d i_h
    const double hatch = p.phi * (p.m / p.k);

    StateVector g;
    g.s_h = -(fh * y.i_m + p.mu_h) * v.s_h + fh * y.i_m * v.e_h;
    g.e_h = -(p.nu_h + p.mu_h) * v.e_h + p.nu_h * v.i_h;
    g.i_h = -(p.eta_h + p.mu_h) * v.i_h + p.eta_h * v.r_h - fm * y.s_m * v.s_m +
            fm * y.s_m * v.e_m;
    g.r_h = -p.mu_h * v.r_h;
    g.a_m = (-hatch * (y.s_m + y.e_m + y.i_m) - (p.eta_A + p.mu_A)) * v.a_m +
            p.eta_A * (p.k / p.m) * v.s_m;
    g.s_m = hatch * (1.0 - y.a_m) * v.a_m - (fm * y.i_h + p.mu_m + c) * v.s_m +
            fm * y.i_h * v.e_m;
    g.e_m = hatch * (1.0 - y.a_m) * v.a_m - (p.mu_m + p.eta_m + c) * v.e_m + p.eta_m * v.i_m;
    g.i_m = hatch * (1.0 - y.a_m) * v.a_m - fh * y.s_h * v.s_h + fh * y.s_h * v.e_h -
            (p.mu_m + c) * v.i_m;
    return g;
}

double rhs_vjp_control(const StateVector& y, const StateVector& v) {
    return -(y.s_m * v.s_m + y.e_m * v.e_m + y.i_m * v.i_m);
}

StateTrajectory integrate_rk4(const ControlTrajectory& control, const ModelParameters& p,
                              const TimeGrid& grid, const StateVector& init) {
    if (control.size() != grid.n_nodes) {
        throw std::invalid_argument("integrate_rk4: control has " +
                                    std::to_string(control.size()) + " nodes, grid has " +
                                    std::to_string(grid.n_nodes));
    }
    StateTrajectory traj;
    traj.grid = grid;
    traj.states.resize(static_cast<std::size_t>(grid.n_nodes));
    traj.states[0] = init;

    const double h = grid.step;
    StateVector y = init;
    for (int j = 0; j + 1 < grid.n_nodes; ++j) {
        const double ca = control.values[static_cast<std::size_t>(j)];
        const double cb = control.values[static_cast<std::size_t>(j) + 1];
        const double cm = 0.5 * (ca + cb);

        const StateVector k1 = rhs(y, ca, p);
        const StateVector k2 = rhs(y + (0.5 * h) * k1, cm, p);
        const StateVector k3 = rhs(y + (0.5 * h) * k2, cm, p);
        const StateVector k4 = rhs(y + h * k3, cb, p);

        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.states[static_cast<std::size_t>(j) + 1] = y;
    }
    return traj;
}

StateTrajectory integrate_rk4(const ControlTrajectory& control, const ModelParameters& p,
                              const TimeGrid& grid) {
    return integrate_rk4(control, p, grid, default_initial_state());
}

}  // namespace dengue
