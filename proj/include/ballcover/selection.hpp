#pragma once

// Greedy covering selections. Every selector works on a finite collection,
// picks an exact maximum at each step (ties broken by input order) and
// reports, for each representative, the input balls it accounts for.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballcover/measure.hpp"
#include "ballcover/types.hpp"

namespace ballcover {

struct Group {
    std::size_t representative = 0;
    std::vector<std::size_t> members;
};

/// Constants a selector used, carried with its output.
struct SelectionParams {
    std::size_t dimension = 0;
    double radius_slack = 7.0 / 8.0;
    double eps = 0.0;             // perimeter-vitali only
    double eps_max = 0.0;         // derived admissible bound for eps
    double overlap_threshold = 0.0;  // (7/8)^d * eps
    double enlargement = 0.0;     // 5, 8/7 or 23/7 depending on the guarantee
};

struct SelectionResult {
    std::string algorithm;
    std::vector<std::size_t> selected;
    std::vector<Group> groups;
    std::optional<std::vector<std::vector<std::size_t>>> families;
    SelectionParams params;
};

namespace detail {

inline void require_nonempty(const BallCollection& balls, const char* who) {
    if (balls.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty collection");
    }
}

// Index of the largest-radius ball with flag set, lowest index on ties.
inline std::optional<std::size_t> largest_flagged(const BallCollection& balls,
                                                  const std::vector<char>& flag) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (flag[i] && (!best || balls[i].radius() > balls[*best].radius())) {
            best = i;
        }
    }
    return best;
}

}  // namespace detail

/// Classical Vitali selection: disjoint balls whose 5-fold dilations cover ⋃B.
inline SelectionResult vitali_select(const BallCollection& balls) {
    detail::require_nonempty(balls, "vitali_select");
    SelectionResult out;
    out.algorithm = "vitali";
    out.params.dimension = balls.dimension();
    out.params.radius_slack = 1.0;
    out.params.enlargement = 5.0;
    std::vector<char> remaining(balls.size(), 1);
    while (auto pick = detail::largest_flagged(balls, remaining)) {
        const std::size_t s = *pick;
        Group g{s, {}};
        for (std::size_t i = 0; i < balls.size(); ++i) {
            if (remaining[i] && (i == s || !disjoint(balls[i], balls[s]))) {
                g.members.push_back(i);
                remaining[i] = 0;
            }
        }
        out.selected.push_back(s);
        out.groups.push_back(std::move(g));
    }
    return out;
}

/// Besicovitch selection with the extra fact: every input center x of
/// B(x, r) lies in a chosen B(y, s) with r <= (8/7) s, and the chosen balls
/// split into boundedly many disjoint color classes.
///
/// Chosen balls are colored in selection order with the least color not
/// used by an earlier chosen ball they intersect. `groups` assigns every
/// input to the earliest chosen ball containing its center.
inline SelectionResult besicovitch_select(const BallCollection& balls) {
    detail::require_nonempty(balls, "besicovitch_select");
    SelectionResult out;
    out.algorithm = "besicovitch";
    out.params.dimension = balls.dimension();
    out.params.enlargement = 8.0 / 7.0;

    const std::size_t n = balls.size();
    std::vector<char> uncovered(n, 1);
    std::vector<std::size_t> owner(n, 0);
    while (auto pick = detail::largest_flagged(balls, uncovered)) {
        const std::size_t s = *pick;
        for (std::size_t i = 0; i < n; ++i) {
            if (uncovered[i] && center_distance(balls[i], balls[s]) <= balls[s].radius()) {
                uncovered[i] = 0;
                owner[i] = out.selected.size();
            }
        }
        out.selected.push_back(s);
    }

    out.groups.resize(out.selected.size());
    for (std::size_t k = 0; k < out.selected.size(); ++k) {
        out.groups[k].representative = out.selected[k];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.groups[owner[i]].members.push_back(i);
    }

    std::vector<std::size_t> color(out.selected.size(), 0);
    std::vector<std::vector<std::size_t>> families;
    std::vector<char> used;
    for (std::size_t a = 0; a < out.selected.size(); ++a) {
        used.assign(a + 1, 0);
        for (std::size_t b = 0; b < a; ++b) {
            if (!disjoint(balls[out.selected[a]], balls[out.selected[b]])) {
                used[color[b]] = 1;
            }
        }
        std::size_t c = 0;
        while (used[c]) {
            ++c;
        }
        color[a] = c;
        if (c == families.size()) {
            families.emplace_back();
        }
        families[c].push_back(out.selected[a]);
    }
    out.families = std::move(families);
    return out;
}

/// The disjoint family of besicovitch_select with the largest total surface.
inline SelectionResult perimeter_besicovitch_select(const BallCollection& balls) {
    SelectionResult out = besicovitch_select(balls);
    out.algorithm = "perimeter-besicovitch";
    const auto& fams = *out.families;
    std::size_t best = 0;
    double best_surface = -1.0;
    for (std::size_t m = 0; m < fams.size(); ++m) {
        double s = 0.0;
        for (std::size_t i : fams[m]) {
            s += ball_surface(balls[i]);
        }
        if (s > best_surface) {
            best_surface = s;
            best = m;
        }
    }
    out.selected = fams[best];
    return out;
}

/// Largest eps for which λ(S1 ∩ S2) <= eps min{λ(S1), λ(S2)} forces the
/// center distance to be at least (6/7)(r1 + r2), i.e. (6/7)S1 ∩ (6/7)S2 = ∅.
///
/// With r1 = 1 >= r2 = q this is inf_q lens(1, q, (6/7)(1 + q)) / λ(B(q)),
/// found by a grid scan over q in (0, 1] and a golden-section refinement.
/// The result is cached per dimension.
inline double perimeter_vitali_eps_max(std::size_t d) {
    static std::mutex mutex;
    static std::map<std::size_t, double> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) {
            return it->second;
        }
    }
    auto frac = [d](double q) {
        return lens_volume(1.0, q, 6.0 / 7.0 * (1.0 + q), d) / ball_volume(q, d);
    };
    constexpr int kGrid = 400;
    int arg = kGrid;
    double best = frac(1.0);
    for (int i = 1; i < kGrid; ++i) {
        const double v = frac(static_cast<double>(i) / kGrid);
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    double a = std::max(1e-6, static_cast<double>(arg - 1) / kGrid);
    double b = std::min(1.0, static_cast<double>(arg + 1) / kGrid);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double x1 = b - phi * (b - a);
        const double x2 = a + phi * (b - a);
        if (frac(x1) < frac(x2)) {
            b = x2;
        } else {
            a = x1;
        }
    }
    best = std::min({best, frac(0.5 * (a + b)), frac(1.0)});
    std::lock_guard lock(mutex);
    cache[d] = best;
    return best;
}

/// ε-overlap selection: selected balls overlap pairwise by at most ε times
/// the smaller volume, and every input joins a group B_S contained in (23/7)S.
inline SelectionResult perimeter_vitali_select(const BallCollection& balls, double eps) {
    detail::require_nonempty(balls, "perimeter_vitali_select");
    const std::size_t d = balls.dimension();
    const double eps_max = perimeter_vitali_eps_max(d);
    if (!(eps > 0.0 && eps < eps_max)) {
        throw std::invalid_argument("perimeter_vitali_select: eps must lie in (0, " +
                                    std::to_string(eps_max) + ")");
    }
    SelectionResult out;
    out.algorithm = "perimeter-vitali";
    out.params.dimension = d;
    out.params.eps = eps;
    out.params.eps_max = eps_max;
    out.params.overlap_threshold = std::pow(7.0 / 8.0, static_cast<double>(d)) * eps;
    out.params.enlargement = 23.0 / 7.0;
    const double factor = out.params.overlap_threshold;

    const std::size_t n = balls.size();
    std::vector<double> volume(n);
    for (std::size_t i = 0; i < n; ++i) {
        volume[i] = ball_volume(balls[i]);
    }
    std::vector<char> candidate(n, 1);
    while (auto pick = detail::largest_flagged(balls, candidate)) {
        const std::size_t s = *pick;
        const Ball& S = balls[s];
        Group g{s, {}};
        for (std::size_t i = 0; i < n; ++i) {
            const bool heavy = lens_volume(balls[i], S) >= factor * volume[i];
            if (heavy) {
                candidate[i] = 0;
                if (balls[i].radius() <= 8.0 / 7.0 * S.radius()) {
                    g.members.push_back(i);
                }
            }
        }
        out.selected.push_back(s);
        out.groups.push_back(std::move(g));
    }
    return out;
}

/// One-dimensional selection with pairwise disjoint closures giving
/// λ(⋃I) <= 5 λ(⋃S) and H^0(∂*⋃I) <= H^0(∂*⋃S).
inline SelectionResult interval_select_1d(std::span<const Interval> intervals) {
    if (intervals.empty()) {
        throw std::invalid_argument("interval_select_1d: empty list");
    }
    SelectionResult out;
    out.algorithm = "interval-1d";
    out.params.dimension = 1;
    out.params.radius_slack = 1.0;
    out.params.enlargement = 5.0;
    const std::size_t n = intervals.size();
    std::vector<char> candidate(n, 1);
    for (;;) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < n; ++i) {
            if (candidate[i] && (!best || intervals[i].length() > intervals[*best].length())) {
                best = i;
            }
        }
        if (!best) {
            break;
        }
        const Interval& S = intervals[*best];
        Group g{*best, {}};
        for (std::size_t i = 0; i < n; ++i) {
            if (candidate[i] && intervals[i].closure_meets(S)) {
                g.members.push_back(i);
                candidate[i] = 0;
            }
        }
        out.selected.push_back(*best);
        out.groups.push_back(std::move(g));
    }
    return out;
}

inline SelectionResult interval_select_1d(const BallCollection& balls) {
    std::vector<Interval> iv;
    if (balls.dimension() != 1) {
        throw std::invalid_argument("interval_select_1d: collection must be one-dimensional");
    }
    for (const auto& b : balls) {
        iv.push_back(to_interval(b));
    }
    return interval_select_1d(iv);
}

}  // namespace ballcover
