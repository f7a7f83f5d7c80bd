#pragma once

// Exact perimeter of finite unions of disks: every circle is clipped against
// the open disks of all other balls and the surviving arcs are summed.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ballcover/types.hpp"
#include "ballcover/union1d.hpp"

namespace ballcover {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Counterclockwise arc on the circle of ball `ball`, angles in radians.
struct BoundaryArc {
    std::size_t ball = 0;
    double start = 0.0;   // in [0, 2π)
    double length = 0.0;  // in (0, 2π]
};

/// Angular sub-arc of a circle, or the full circle / nothing.
struct AngularCover {
    enum class Kind { none, full, arc } kind = Kind::none;
    double start = 0.0;
    double length = 0.0;
};

namespace detail {

inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    return a >= kTwoPi ? 0.0 : a;
}

// Sorted disjoint [start, end] pieces inside [0, 2π].
struct Piece {
    double lo;
    double hi;
};

inline void push_wrapped(std::vector<Piece>& out, double start, double length) {
    start = wrap_angle(start);
    const double end = start + length;
    if (end <= kTwoPi) {
        out.push_back({start, end});
    } else {
        out.push_back({start, kTwoPi});
        out.push_back({0.0, end - kTwoPi});
    }
}

inline std::vector<Piece> merge_pieces(std::vector<Piece> p) {
    std::sort(p.begin(), p.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    std::vector<Piece> out;
    for (const auto& x : p) {
        if (!out.empty() && x.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, x.hi);
        } else {
            out.push_back(x);
        }
    }
    return out;
}

// Complement of merged pieces in [0, 2π), joining the wrap-around gap.
inline std::vector<Piece> complement_pieces(const std::vector<Piece>& merged) {
    std::vector<Piece> gaps;
    double cursor = 0.0;
    for (const auto& m : merged) {
        if (m.lo > cursor) {
            gaps.push_back({cursor, m.lo});
        }
        cursor = std::max(cursor, m.hi);
    }
    if (cursor < kTwoPi) {
        gaps.push_back({cursor, kTwoPi});
    }
    if (gaps.size() >= 2 && gaps.front().lo == 0.0 && gaps.back().hi == kTwoPi) {
        gaps.front().lo = gaps.back().lo - kTwoPi;
        gaps.pop_back();
    }
    return gaps;
}

}  // namespace detail

/// Part of circle ∂B(c, r) covered by the open disk B(p, R).
inline AngularCover disk_cover(double cx, double cy, double r, double px, double py, double R) {
    const double dx = px - cx;
    const double dy = py - cy;
    const double d = std::hypot(dx, dy);
    if (d >= r + R - kDisjointTol) {
        return {};
    }
    if (d + r <= R + kDisjointTol) {
        return {AngularCover::Kind::full, 0.0, kTwoPi};
    }
    if (d + R <= r + kDisjointTol) {
        return {};
    }
    const double cos_a = std::clamp((r * r + d * d - R * R) / (2.0 * r * d), -1.0, 1.0);
    const double a = std::acos(cos_a);
    const double phi = std::atan2(dy, dx);
    return {AngularCover::Kind::arc, detail::wrap_angle(phi - a), 2.0 * a};
}

/// Part of circle ∂B(c, r) lying in the closed half-plane {x_1 <= x_max}.
inline AngularCover halfplane_cover(double cx, double r, double x_max) {
    const double q = (x_max - cx) / r;
    if (q >= 1.0) {
        return {AngularCover::Kind::full, 0.0, kTwoPi};
    }
    if (q <= -1.0) {
        return {};
    }
    const double a = std::acos(q);
    return {AngularCover::Kind::arc, a, kTwoPi - 2.0 * a};
}

/// Indices of the first representative of every group of coincident balls.
inline std::vector<std::size_t> distinct_ball_indices(const BallCollection& balls) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        bool dup = false;
        for (std::size_t k : keep) {
            if (coincident(balls[i], balls[k])) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            keep.push_back(i);
        }
    }
    return keep;
}

inline void require_planar(const BallCollection& balls, const char* who) {
    if (balls.dimension() != 2) {
        throw std::invalid_argument(std::string(who) + ": collection must be two-dimensional");
    }
}

/// Arcs of ∂*(⋃B): pieces of each distinct circle outside every other open disk.
inline std::vector<BoundaryArc> boundary_arcs_2d(const BallCollection& balls) {
    require_planar(balls, "boundary_arcs_2d");
    const auto keep = distinct_ball_indices(balls);
    std::vector<BoundaryArc> arcs;
    std::vector<detail::Piece> covered;
    for (std::size_t i : keep) {
        const Ball& bi = balls[i];
        covered.clear();
        bool hidden = false;
        for (std::size_t j : keep) {
            if (j == i) {
                continue;
            }
            const Ball& bj = balls[j];
            const auto c = disk_cover(bi.center(0), bi.center(1), bi.radius(), bj.center(0),
                                      bj.center(1), bj.radius());
            if (c.kind == AngularCover::Kind::full) {
                hidden = true;
                break;
            }
            if (c.kind == AngularCover::Kind::arc) {
                detail::push_wrapped(covered, c.start, c.length);
            }
        }
        if (hidden) {
            continue;
        }
        for (const auto& g : detail::complement_pieces(detail::merge_pieces(covered))) {
            if (g.hi - g.lo > kArcTol) {
                arcs.push_back({i, detail::wrap_angle(g.lo), g.hi - g.lo});
            }
        }
    }
    return arcs;
}

inline double arc_length(const std::vector<BoundaryArc>& arcs, const BallCollection& balls) {
    double total = 0.0;
    for (const auto& a : arcs) {
        total += balls[a.ball].radius() * a.length;
    }
    return total;
}

/// Restrict arcs to the angular window each circle's `window(ball)` returns.
template <typename Window>
std::vector<BoundaryArc> clip_arcs(const std::vector<BoundaryArc>& arcs, const BallCollection& balls,
                                   Window window) {
    std::vector<BoundaryArc> out;
    for (const auto& a : arcs) {
        const AngularCover w = window(balls[a.ball]);
        if (w.kind == AngularCover::Kind::none) {
            continue;
        }
        if (w.kind == AngularCover::Kind::full) {
            out.push_back(a);
            continue;
        }
        std::vector<detail::Piece> pa;
        std::vector<detail::Piece> pw;
        detail::push_wrapped(pa, a.start, a.length);
        detail::push_wrapped(pw, w.start, w.length);
        for (const auto& x : pa) {
            for (const auto& y : pw) {
                const double lo = std::max(x.lo, y.lo);
                const double hi = std::min(x.hi, y.hi);
                if (hi - lo > kArcTol) {
                    out.push_back({a.ball, lo, hi - lo});
                }
            }
        }
    }
    return out;
}

/// Length of ∂*(⋃B) inside the closed half-plane {x_1 <= x_max}.
inline double boundary_length_in_halfplane(const std::vector<BoundaryArc>& arcs,
                                           const BallCollection& balls, double x_max) {
    return arc_length(clip_arcs(arcs, balls,
                                [&](const Ball& b) { return halfplane_cover(b.center(0), b.radius(), x_max); }),
                      balls);
}

/// Length of ∂*(⋃B) inside the open disk B(p, R).
inline double boundary_length_in_disk(const std::vector<BoundaryArc>& arcs, const BallCollection& balls,
                                      double px, double py, double R) {
    return arc_length(clip_arcs(arcs, balls,
                                [&](const Ball& b) {
                                    return disk_cover(b.center(0), b.center(1), b.radius(), px, py, R);
                                }),
                      balls);
}

/// Exact H^1 of the measure-theoretic boundary of a finite union of disks.
inline PerimeterEstimate union_perimeter_2d(const BallCollection& balls) {
    require_planar(balls, "union_perimeter_2d");
    PerimeterEstimate e;
    e.method = Method::exact2d;
    e.value = balls.empty() ? 0.0 : arc_length(boundary_arcs_2d(balls), balls);
    return e;
}

/// Exact area of a finite union of disks, by Green's theorem over the
/// counterclockwise boundary arcs.
inline double union_area_2d(const BallCollection& balls) {
    require_planar(balls, "union_area_2d");
    if (balls.empty()) {
        return 0.0;
    }
    double twice = 0.0;
    for (const auto& a : boundary_arcs_2d(balls)) {
        const Ball& b = balls[a.ball];
        const double r = b.radius();
        const double t0 = a.start;
        const double t1 = a.start + a.length;
        twice += r * (b.center(0) * (std::sin(t1) - std::sin(t0)) - b.center(1) * (std::cos(t1) - std::cos(t0))) +
                 r * r * a.length;
    }
    return 0.5 * twice;
}

/// H^1 of {x_1 = x} ∩ ⋃B, the union of the chords cut by a vertical line.
inline double chord_union_length(const BallCollection& balls, double x) {
    require_planar(balls, "chord_union_length");
    std::vector<Interval> chords;
    for (const auto& b : balls) {
        const double off = x - b.center(0);
        const double h2 = b.radius() * b.radius() - off * off;
        if (h2 > 0.0) {
            const double h = std::sqrt(h2);
            chords.emplace_back(b.center(1) - h, b.center(1) + h);
        }
    }
    return chords.empty() ? 0.0 : union_measure_1d(chords);
}

}  // namespace ballcover
