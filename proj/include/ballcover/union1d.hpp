#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ballcover/types.hpp"

namespace ballcover {

/// Connected components of the union, where intervals whose closures touch
/// are merged. Sorted by left endpoint.
inline std::vector<Interval> merge_intervals(std::span<const Interval> intervals) {
    std::vector<Interval> sorted(intervals.begin(), intervals.end());
    std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
        return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
    });
    std::vector<Interval> out;
    for (const auto& iv : sorted) {
        if (!out.empty() && iv.lo() <= out.back().hi()) {
            if (iv.hi() > out.back().hi()) {
                out.back() = Interval(out.back().lo(), iv.hi());
            }
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

inline double union_measure_1d(std::span<const Interval> intervals) {
    if (intervals.empty()) {
        throw std::invalid_argument("union_measure_1d: empty list");
    }
    double total = 0.0;
    for (const auto& c : merge_intervals(intervals)) {
        total += c.length();
    }
    return total;
}

/// H^0 of the measure-theoretic boundary of the union. A shared endpoint of
/// two touching intervals has density one and is not counted.
inline std::size_t union_boundary_1d(std::span<const Interval> intervals) {
    if (intervals.empty()) {
        throw std::invalid_argument("union_boundary_1d: empty list");
    }
    return 2 * merge_intervals(intervals).size();
}

inline std::vector<Interval> intervals_of(const BallCollection& balls) {
    if (balls.dimension() != 1) {
        throw std::invalid_argument("intervals_of: collection must be one-dimensional");
    }
    std::vector<Interval> out;
    out.reserve(balls.size());
    for (const auto& b : balls) {
        out.push_back(to_interval(b));
    }
    return out;
}

}  // namespace ballcover
