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
#ifndef DENGUE_PARETO_HPP
#define DENGUE_PARETO_HPP

#include <span>
#include <vector>

#include "dengue/objectives.hpp"

namespace dengue {

/**
 * @brief A set of objective points, optionally back-referencing the archive
 * entries they came from.
 */
struct Front {
    std::vector<ObjectivePoint> points;
    std::vector<int> source_index;  ///< per-point archive index, empty if untracked
    bool normalized = false;

    std::size_t size() const { return points.size(); }
};

/// Reference point for the 2-D hypervolume; points beyond it are excluded
/// and points on it contribute zero.
struct HypervolumeSpec {
    ObjectivePoint reference{1.0, 1.0};
};

/// true iff a <= b component-wise with strict inequality somewhere.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

/// The subset not dominated by any other point, exact duplicates kept once,
/// sorted by ascending f2. source_index tracks each survivor's position in
/// the input.
Front nondominated_filter(std::span<const ObjectivePoint> points);

/// Component-wise (f - ideal) / (nadir - ideal). Throws std::runtime_error
/// when a denominator is not strictly positive.
Front normalize_objectives(const Front& front, ObjectivePoint ideal, ObjectivePoint nadir);

/// Exact 2-D hypervolume by the descending-slab sweep. Dominated or
/// duplicate input points are filtered first; empty fronts give 0.
double hypervolume_2d(const Front& front, const HypervolumeSpec& spec = {});

enum class KneeStatus { found, degenerate };

struct KneeResult {
    KneeStatus status = KneeStatus::degenerate;
    int index = -1;             ///< position in the (filtered) front
    ObjectivePoint point;       ///< knee objectives, meaningful when found
    double distance = 0.0;      ///< perpendicular distance to the boundary line
};

/**
 * @brief Das-style knee point of a normalized nondominated front.
 *
 * Builds the boundary line through the two extreme points and returns the
 * front point with maximum perpendicular distance on the feasible side,
 * ties broken by smaller f1. Collinear fronts report degenerate status.
 * Throws std::invalid_argument on fewer than 3 points.
 */
KneeResult knee_point(const Front& front);

}  // namespace dengue

#endif  // DENGUE_PARETO_HPP
