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
#include "dengue/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dengue {

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

Front nondominated_filter(std::span<const ObjectivePoint> points) {
    const int n = static_cast<int>(points.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    // ascending f2, ties by ascending f1 and original position (stable)
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& pa = points[static_cast<std::size_t>(a)];
        const auto& pb = points[static_cast<std::size_t>(b)];
        if (pa.f2 != pb.f2) return pa.f2 < pb.f2;
        return pa.f1 < pb.f1;
    });

    Front out;
    double best_f1 = std::numeric_limits<double>::infinity();
    for (int idx : order) {
        const auto& p = points[static_cast<std::size_t>(idx)];
        // in f2 order a point survives iff it strictly improves f1 over
        // everything with smaller-or-equal f2 already kept; this also drops
        // exact duplicates after their first occurrence
        if (p.f1 < best_f1) {
            out.points.push_back(p);
            out.source_index.push_back(idx);
            best_f1 = p.f1;
        }
    }
    return out;
}

Front normalize_objectives(const Front& front, ObjectivePoint ideal, ObjectivePoint nadir) {
    const double d1 = nadir.f1 - ideal.f1;
    const double d2 = nadir.f2 - ideal.f2;
    if (!(d1 > 0.0) || !(d2 > 0.0)) {
        throw std::runtime_error("normalize_objectives: nadir must exceed ideal in every component");
    }
    Front out = front;
    for (auto& p : out.points) {
        p.f1 = (p.f1 - ideal.f1) / d1;
        p.f2 = (p.f2 - ideal.f2) / d2;
    }
    out.normalized = true;
    return out;
}

double hypervolume_2d(const Front& front, const HypervolumeSpec& spec) {
    const double r1 = spec.reference.f1;
    const double r2 = spec.reference.f2;
    std::vector<ObjectivePoint> kept;
    for (const auto& p : front.points) {
        if (p.f1 < r1 && p.f2 < r2) kept.push_back(p);
    }
    const Front nd = nondominated_filter(kept);
    // nd is sorted by ascending f2, so f1 descends; sweep slabs against f2
    double hv = 0.0;
    double prev_f1 = r1;
    for (const auto& p : nd.points) {
        hv += (prev_f1 - p.f1) * (r2 - p.f2);
        prev_f1 = p.f1;
    }
    return hv;
}

KneeResult knee_point(const Front& front) {
    const auto& pts = front.points;
    if (pts.size() < 3) {
        throw std::invalid_argument("knee_point: need at least 3 nondominated points");
    }
    // extremes of the front: minimum f1 and minimum f2 ends
    const auto by_f1 = std::minmax_element(pts.begin(), pts.end(),
                                           [](const ObjectivePoint& a, const ObjectivePoint& b) {
                                               if (a.f1 != b.f1) return a.f1 < b.f1;
                                               return a.f2 < b.f2;
                                           });
    const ObjectivePoint p1 = *by_f1.first;   // min f1 (max f2 end)
    const ObjectivePoint p2 = *by_f1.second;  // max f1 (min f2 end)
    const double ex = p2.f1 - p1.f1;
    const double ey = p2.f2 - p1.f2;
    const double len = std::hypot(ex, ey);
    if (!(len > 0.0)) {
        return {};  // all extremes coincide
    }

    KneeResult best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // signed area cross product; positive on the feasible (ideal) side
        const double cross = ex * (pts[i].f2 - p1.f2) - ey * (pts[i].f1 - p1.f1);
        const double signed_dist = -cross / len;
        if (signed_dist > best.distance + 1e-15 ||
            (best.index >= 0 && std::abs(signed_dist - best.distance) <= 1e-15 &&
             signed_dist > 0.0 && pts[i].f1 < best.point.f1)) {
            best.distance = signed_dist;
            best.index = static_cast<int>(i);
            best.point = pts[i];
        }
    }
    if (best.index < 0 || best.distance <= 1e-12) {
        return {};  // collinear within tolerance: no interior bulge
    }
    best.status = KneeStatus::found;
    return best;
}

}  // namespace dengue
