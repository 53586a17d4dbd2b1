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
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "dengue/nlp.hpp"

namespace dengue::nlp {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::eval_budget_exhausted: return "eval-budget-exhausted";
        case SolveStatus::numerical_failure: return "numerical-failure";
    }
    return "unknown";
}

void ScalarProblem::validate() const {
    if (lower.size() != upper.size() || lower.size() == 0) {
        throw std::invalid_argument("ScalarProblem: bounds must be non-empty and equally sized");
    }
    if (((upper - lower).array() < 0.0).any()) {
        throw std::invalid_argument("ScalarProblem: lower bound exceeds upper bound");
    }
    if (!objective && objective_branches.empty()) {
        throw std::invalid_argument("ScalarProblem: no objective provided");
    }
}

namespace {

using Vec = Eigen::VectorXd;

constexpr double kPenaltyInitial = 10.0;
constexpr double kPenaltyGrowth = 10.0;
constexpr double kPenaltyCap = 1e8;
constexpr double kViolationShrink = 0.25;  // required per-round violation decrease
constexpr double kArmijo = 1e-4;

struct Budget {
    int cap;
    int used = 0;
    bool exhausted = false;
    void charge() {
        if (++used >= cap) exhausted = true;
    }
};

Vec clamp_to_box(const Vec& x, const Vec& lo, const Vec& hi) {
    return x.cwiseMax(lo).cwiseMin(hi);
}

// Augmented-Lagrangian state: multiplier estimates and penalty for the
// inequality constraints (g <= 0 convention).
struct AugLag {
    Vec lambda;
    double rho = kPenaltyInitial;
};

// One evaluation of the merit function: branch values of the (possibly
// minimax) objective plus the quadratic penalty on constraint violations.
struct MeritEval {
    double merit = std::numeric_limits<double>::quiet_NaN();
    double objective = std::numeric_limits<double>::quiet_NaN();
    double violation = 0.0;                 // max positive raw constraint part
    std::vector<double> branch_merits;      // per-branch merit (penalty included)
    Vec raw_constraints;
    bool finite = true;
};

class Evaluator {
   public:
    Evaluator(const ScalarProblem& p, Budget& budget) : p_(p), budget_(budget) {}

    // Value-only evaluation (one function evaluation).
    MeritEval value(const Vec& x, const AugLag& al) {
        budget_.charge();
        MeritEval ev;
        const int m = static_cast<int>(p_.inequality_constraints.size());
        ev.raw_constraints.resize(m);
        double penalty = 0.0;
        for (int i = 0; i < m; ++i) {
            const double gi = p_.inequality_constraints[static_cast<std::size_t>(i)](x, nullptr);
            ev.raw_constraints[i] = gi;
            ev.violation = std::max(ev.violation, gi);
            const double t = std::max(0.0, al.lambda[i] + al.rho * gi);
            penalty += (t * t - al.lambda[i] * al.lambda[i]) / (2.0 * al.rho);
            if (!std::isfinite(gi)) ev.finite = false;
        }
        ev.violation = std::max(0.0, ev.violation);

        if (p_.is_minimax()) {
            ev.objective = -std::numeric_limits<double>::infinity();
            for (const auto& branch : p_.objective_branches) {
                const double b = branch(x, nullptr);
                ev.branch_merits.push_back(b + penalty);
                ev.objective = std::max(ev.objective, b);
                if (!std::isfinite(b)) ev.finite = false;
            }
        } else {
            ev.objective = p_.objective(x, nullptr);
            if (!std::isfinite(ev.objective)) ev.finite = false;
        }
        ev.merit = ev.objective + penalty;
        return ev;
    }

    // Gradient of the merit of one objective branch (or of the smooth
    // objective when branch < 0). Does not consume budget: gradients ride
    // on the preceding value evaluation at the same point.
    Vec branch_gradient(const Vec& x, const AugLag& al, int branch) {
        Vec g(x.size());
        if (branch < 0) {
            p_.objective(x, &g);
        } else {
            p_.objective_branches[static_cast<std::size_t>(branch)](x, &g);
        }
        Vec gc(x.size());
        for (std::size_t i = 0; i < p_.inequality_constraints.size(); ++i) {
            const double gi = p_.inequality_constraints[i](x, &gc);
            const double mult = std::max(0.0, al.lambda[static_cast<Eigen::Index>(i)] + al.rho * gi);
            if (mult != 0.0) g += mult * gc;
        }
        return g;
    }

   private:
    const ScalarProblem& p_;
    Budget& budget_;
};

// Limited-memory BFGS direction from stored (s, y) pairs.
class LbfgsMemory {
   public:
    explicit LbfgsMemory(int capacity = 10) : capacity_(capacity) {}

    void clear() { pairs_.clear(); }

    void push(const Vec& s, const Vec& y) {
        const double sy = s.dot(y);
        if (sy <= 1e-12 * s.norm() * y.norm()) return;  // curvature guard
        pairs_.push_back({s, y, sy});
        if (static_cast<int>(pairs_.size()) > capacity_) pairs_.pop_front();
    }

    bool empty() const { return pairs_.empty(); }

    Vec direction(const Vec& grad) const {
        Vec q = -grad;
        if (pairs_.empty()) return q;
        std::vector<double> alpha(pairs_.size());
        for (int i = static_cast<int>(pairs_.size()) - 1; i >= 0; --i) {
            const auto& pr = pairs_[static_cast<std::size_t>(i)];
            alpha[static_cast<std::size_t>(i)] = pr.s.dot(q) / pr.sy;
            q -= alpha[static_cast<std::size_t>(i)] * pr.y;
        }
        const auto& last = pairs_.back();
        q *= last.sy / last.y.squaredNorm();
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            const auto& pr = pairs_[i];
            const double beta = pr.y.dot(q) / pr.sy;
            q += (alpha[i] - beta) * pr.s;
        }
        return q;
    }

   private:
    struct Pair {
        Vec s, y;
        double sy;
    };
    int capacity_;
    std::deque<Pair> pairs_;
};

// Minimum-norm convex combination of two gradients: the steepest-descent
// subgradient of a two-branch max function at a kink.
Vec min_norm_combination(const Vec& g1, const Vec& g2) {
    const Vec diff = g1 - g2;
    const double denom = diff.squaredNorm();
    double theta = 0.5;
    if (denom > 0.0) theta = std::clamp(g2.dot(g2 - g1) / denom, 0.0, 1.0);
    return theta * g1 + (1.0 - theta) * g2;
}

struct InnerResult {
    MeritEval at_x;
    double projected_gradient_norm = std::numeric_limits<double>::infinity();
    bool stationary = false;
};

struct InnerOptions {
    double tolerance;
    int max_iterations;
};

// Projected quasi-Newton descent on the augmented Lagrangian merit over the
// box. Nonsmooth (minimax) objectives take min-norm subgradient steps at
// kinks and quasi-Newton steps while a single branch is active.
InnerResult inner_minimize(Evaluator& eval, const ScalarProblem& p, const AugLag& al, Vec& x,
                           const InnerOptions& inner, Budget& budget,
                           std::vector<double>* merit_history) {
    const Vec& lo = p.lower;
    const Vec& hi = p.upper;
    const bool minimax = p.is_minimax();
    // near-tie width for treating both branches as active
    const double kink_width = 1e-7;

    LbfgsMemory memory;
    int previous_branch = -2;
    // Barzilai-Borwein state for the kink (subgradient) phase
    Vec kink_prev_x, kink_prev_g;

    MeritEval cur = eval.value(x, al);
    InnerResult res;
    res.at_x = cur;
    if (!cur.finite) return res;
    if (merit_history) merit_history->push_back(cur.merit);

    Vec grad;
    for (int it = 0; it < inner.max_iterations && !budget.exhausted; ++it) {
        int active_branch = -1;
        int runner_up = -1;
        bool at_kink = false;
        if (minimax) {
            const auto& bm = cur.branch_merits;
            active_branch = static_cast<int>(std::max_element(bm.begin(), bm.end()) - bm.begin());
            double second = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < bm.size(); ++i) {
                if (static_cast<int>(i) != active_branch && bm[i] > second) {
                    second = bm[i];
                    runner_up = static_cast<int>(i);
                }
            }
            at_kink = (cur.merit - second) <= kink_width * (1.0 + std::abs(cur.merit));
        }

        double bb_step = 0.0;
        if (at_kink) {
            // steepest descent over the two leading branches; no curvature
            // is carried across kinks
            const Vec g1 = eval.branch_gradient(x, al, active_branch);
            const Vec g2 = eval.branch_gradient(x, al, runner_up);
            grad = min_norm_combination(g1, g2);
            memory.clear();
            previous_branch = -2;
            if (kink_prev_x.size() == x.size()) {
                const Vec s = x - kink_prev_x;
                const Vec yv = grad - kink_prev_g;
                const double yy = yv.squaredNorm();
                if (yy > 0.0) bb_step = std::clamp(s.dot(yv) / yy, 0.0, 1e6);
            }
            kink_prev_x = x;
            kink_prev_g = grad;
        } else {
            grad = eval.branch_gradient(x, al, active_branch);
            if (minimax && active_branch != previous_branch) memory.clear();
            previous_branch = active_branch;
        }
        if (!grad.allFinite()) {
            res.at_x = cur;
            res.at_x.finite = false;
            return res;
        }

        const Vec pg = x - clamp_to_box(x - grad, lo, hi);
        res.projected_gradient_norm = pg.lpNorm<Eigen::Infinity>();
        if (res.projected_gradient_norm <= inner.tolerance) {
            res.stationary = true;
            res.at_x = cur;
            return res;
        }

        Vec dir = memory.empty() ? Vec(-grad) : memory.direction(grad);
        if (dir.dot(grad) > -1e-14 * dir.norm() * grad.norm()) dir = -grad;

        // backtracking Armijo along the projected arc
        double step = 1.0;
        if (memory.empty()) {
            step = (bb_step > 0.0) ? bb_step : std::min(1.0, 1.0 / std::max(1.0, grad.norm()));
        }
        bool accepted = false;
        Vec x_trial;
        MeritEval trial;
        for (int ls = 0; ls < 45 && !budget.exhausted; ++ls) {
            x_trial = clamp_to_box(x + step * dir, lo, hi);
            if ((x_trial - x).lpNorm<Eigen::Infinity>() == 0.0) break;
            const double decrease = grad.dot(x_trial - x);
            if (decrease >= 0.0) {
                step *= 0.5;
                continue;
            }
            trial = eval.value(x_trial, al);
            if (!trial.finite) {
                step *= 0.5;
                continue;
            }
            if (trial.merit <= cur.merit + kArmijo * decrease) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // retry once along the raw steepest-descent arc before giving up
            if (!memory.empty()) {
                memory.clear();
                continue;
            }
            res.at_x = cur;
            return res;
        }

        const Vec s = x_trial - x;
        if (!at_kink) {
            const Vec g_new = eval.branch_gradient(x_trial, al, active_branch);
            if (g_new.allFinite()) memory.push(s, g_new - grad);
        }
        x = x_trial;
        cur = trial;
        if (merit_history) merit_history->push_back(cur.merit);
    }
    res.at_x = cur;
    return res;
}

struct BestPoint {
    Vec x;
    double objective = std::numeric_limits<double>::infinity();
    double violation = std::numeric_limits<double>::infinity();

    void consider(const Vec& cand, double f, double viol) {
        if (!std::isfinite(f)) return;
        const bool better =
            viol < violation - 1e-15 || (viol <= violation + 1e-15 && f < objective);
        if (better) {
            x = cand;
            objective = f;
            violation = viol;
        }
    }
};

}  // namespace

SolveResult minimize(const ScalarProblem& problem, const Eigen::VectorXd& x0,
                     const SolveOptions& opts) {
    problem.validate();
    if (opts.max_function_evaluations <= 0) {
        throw std::invalid_argument("SolveOptions: max_function_evaluations must be positive");
    }
    if (x0.size() != problem.lower.size()) {
        throw std::invalid_argument("minimize: x0 dimension does not match bounds");
    }

    Budget budget{opts.max_function_evaluations};
    Evaluator evaluator(problem, budget);
    const int m = static_cast<int>(problem.inequality_constraints.size());

    AugLag al;
    al.lambda = Vec::Zero(m);

    SolveResult result;
    Vec x = clamp_to_box(x0, problem.lower, problem.upper);

    BestPoint best;
    {
        const MeritEval e0 = evaluator.value(x, al);
        if (!e0.finite) {
            result.x_star = x;
            result.status = SolveStatus::numerical_failure;
            result.evaluations_used = budget.used;
            return result;
        }
        best.consider(x, e0.objective, e0.violation);
    }

    std::vector<double>* history = opts.record_merit_history ? &result.merit_history : nullptr;

    bool converged = false;
    bool failed = false;
    double prev_violation = std::numeric_limits<double>::infinity();
    double inner_tol = std::max(opts.stationarity_tolerance, 1e-3);
    const int max_outer = (m == 0) ? 1 : 30;

    for (int outer = 0; outer < max_outer && !budget.exhausted; ++outer) {
        if (m == 0) inner_tol = opts.stationarity_tolerance;
        InnerOptions inner{inner_tol, problem.is_minimax() ? 8000 : 1000};
        const InnerResult ir = inner_minimize(evaluator, problem, al, x, inner, budget, history);
        if (!ir.at_x.finite) {
            failed = true;
            break;
        }
        best.consider(x, ir.at_x.objective, ir.at_x.violation);

        if (ir.at_x.violation <= opts.constraint_tolerance && ir.stationary &&
            inner_tol <= opts.stationarity_tolerance) {
            converged = true;
            break;
        }
        if (m == 0) {
            converged = ir.stationary;
            break;
        }

        // first-order multiplier update, then the safeguarded penalty schedule
        for (int i = 0; i < m; ++i) {
            al.lambda[i] = std::max(0.0, al.lambda[i] + al.rho * ir.at_x.raw_constraints[i]);
        }
        if (ir.at_x.violation > kViolationShrink * prev_violation &&
            ir.at_x.violation > opts.constraint_tolerance) {
            al.rho = std::min(al.rho * kPenaltyGrowth, kPenaltyCap);
        }
        prev_violation = ir.at_x.violation;
        // once feasible and inner-stationary, jump straight to the final tolerance
        inner_tol = (ir.stationary && ir.at_x.violation <= opts.constraint_tolerance)
                        ? opts.stationarity_tolerance
                        : std::max(opts.stationarity_tolerance, inner_tol * 0.1);
        if (history && !history->empty()) {
            history->push_back(std::numeric_limits<double>::quiet_NaN());  // round separator
        }
    }

    result.x_star = best.x.size() == x.size() ? best.x : x;
    result.objective_value = best.objective;
    result.constraint_violation = best.violation;
    result.evaluations_used = budget.used;
    if (failed) {
        result.status = SolveStatus::numerical_failure;
    } else if (converged) {
        result.status = SolveStatus::converged;
    } else {
        result.status = SolveStatus::eval_budget_exhausted;
    }
    return result;
}

}  // namespace dengue::nlp
