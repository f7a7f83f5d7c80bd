#pragma once

// Generators for extremal configurations in the plane: a ball ringed by tiny
// balls, the surrounded ball whose small satellites each overlap the unit
// ball by a fixed fraction, its restriction to a half-plane, and a lattice of
// unit balls punctured around a small disk.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "ballcover/arcs.hpp"
#include "ballcover/measure.hpp"
#include "ballcover/parallel.hpp"
#include "ballcover/types.hpp"

namespace ballcover {

/// Unit ball at the origin ringed by k disjoint balls of radius tiny_radius,
/// centered on the circle of radius 1 + tiny_radius/2.
inline BallCollection build_fig1(std::size_t k, double tiny_radius) {
    if (k < 1) {
        throw std::invalid_argument("build_fig1: k must be >= 1");
    }
    if (!(tiny_radius > 0.0 && tiny_radius <= 2.0 / 3.0)) {
        throw std::invalid_argument("build_fig1: tiny_radius must lie in (0, 2/3]");
    }
    const double kd = static_cast<double>(k);
    const double ring = 1.0 + 0.5 * tiny_radius;
    const bool fits = kd * 2.0 * std::asin(tiny_radius / (1.0 + tiny_radius)) <= kTwoPi &&
                      (k == 1 || ring * std::sin(std::numbers::pi / kd) >= tiny_radius);
    if (!fits) {
        throw std::invalid_argument("build_fig1: " + std::to_string(k) + " balls of radius " +
                                    std::to_string(tiny_radius) + " do not fit around the unit ball");
    }
    BallCollection out(2);
    out.push_back(Ball({0.0, 0.0}, 1.0));
    for (std::size_t j = 0; j < k; ++j) {
        const double a = kTwoPi * static_cast<double>(j) / kd;
        out.push_back(Ball({ring * std::cos(a), ring * std::sin(a)}, tiny_radius));
    }
    return out;
}

struct SurroundedBallConfig {
    double eps = 0.01;       // overlap fraction λ(B_0 ∩ B_n) / λ(B_n)
    double delta = 0.02;     // largest satellite radius
    std::size_t n_max = 1000;
    std::uint64_t seed = 0;  // nonzero: random rotation of the first satellite
    double floor_ratio = 1e-3;  // stop once the best radius drops below floor_ratio * delta

    void validate() const {
        if (!(eps > 0.0 && eps < 0.5)) {
            throw std::invalid_argument("SurroundedBallConfig: eps must lie in (0, 1/2)");
        }
        if (!(delta > 0.0 && delta <= 0.25)) {
            throw std::invalid_argument("SurroundedBallConfig: delta must lie in (0, 1/4]");
        }
        if (!(floor_ratio > 0.0 && floor_ratio < 1.0)) {
            throw std::invalid_argument("SurroundedBallConfig: floor_ratio must lie in (0, 1)");
        }
        if (n_max < 1) {
            throw std::invalid_argument("SurroundedBallConfig: n_max must be >= 1");
        }
    }
};

struct GenerationStep {
    std::size_t index = 0;
    double radius = 0.0;
    double angle = 0.0;
    double uncovered_fraction = 1.0;  // of ∂B_0, after this step
};

struct SurroundedBall {
    BallCollection balls{2};  // balls[0] = B(0, 1)
    std::vector<GenerationStep> log;
    double uncovered_fraction = 1.0;
    std::string stop_reason;
};

namespace detail {

// Greedy placement of satellites B_n with λ(B_0 ∩ B_n) = ε λ(B_n), each as
// large as possible. Satellites meet ∂B_0 in disjoint arcs, so every new one
// lives in a gap (uncovered arc) of ∂B_0. Each gap caches its best placement;
// placing a ball re-solves only the gaps within reach of it.
class SurroundedBuilder {
public:
    explicit SurroundedBuilder(const SurroundedBallConfig& cfg)
        : cfg_(cfg), floor_(cfg.delta * cfg.floor_ratio), levels_() {
        cfg_.validate();
        build_offset_table();
    }

    SurroundedBall run() {
        SurroundedBall out;
        out.balls.push_back(Ball({0.0, 0.0}, 1.0));
        double start = 0.0;
        if (cfg_.seed != 0) {
            auto rng = substream(cfg_.seed, 0, 0xa9u);
            start = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
        }
        place(start, cfg_.delta, out);
        while (placed_.size() < cfg_.n_max) {
            if (heap_.empty()) {
                out.stop_reason = "no gap admits a ball";
                break;
            }
            const Candidate c = heap_.top();
            heap_.pop();
            auto it = gaps_.find(c.gap_lo);
            if (it == gaps_.end() || it->second.id != c.id) {
                continue;  // stale
            }
            if (c.radius < floor_) {
                out.stop_reason = "largest feasible radius below the floor";
                break;
            }
            pending_lo_ = it->first;
            pending_hi_ = it->second.hi;
            gaps_.erase(it);
            if (!place(c.theta, c.radius, out)) {
                out.stop_reason = "placement failed to verify";
                break;
            }
        }
        if (out.stop_reason.empty()) {
            out.stop_reason = "n_max reached";
        }
        out.uncovered_fraction = uncovered_ / kTwoPi;
        return out;
    }

private:
    struct Placed {
        double x, y, r, theta;
    };
    struct GapRec {
        double hi;
        std::uint64_t id;
        double r_upper;  // largest radius whose chord fits
    };
    struct Candidate {
        double radius;
        double theta;
        double gap_lo;
        std::uint64_t id;
        bool operator<(const Candidate& o) const {
            return radius < o.radius || (radius == o.radius && id > o.id);
        }
    };
    struct Level {
        double reach = 0.0;  // largest radius stored at this level
        double width = 0.0;  // bucket angular width
        std::vector<std::vector<std::uint32_t>> buckets;
    };

    static constexpr int kOffsetSamples = 1025;
    static constexpr int kThetaSamples = 24;
    static constexpr double kAngularSlack = 1.4;

    // rho(r) = 1 - r + 2 r s(r); s tabulated against log r.
    void build_offset_table() {
        const double u0 = std::log(0.5 * floor_);
        const double u1 = std::log(cfg_.delta);
        const double h = (u1 - u0) / (kOffsetSamples - 1);
        std::vector<double> s(kOffsetSamples);
        for (int i = 0; i < kOffsetSamples; ++i) {
            const double r = std::exp(u0 + h * i);
            const double rho = center_distance_for_overlap(r, 1.0, cfg_.eps, 2);
            s[i] = (rho - (1.0 - r)) / (2.0 * r);
        }
        offset_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(s.begin(), s.end(), u0, h);
    }

    double rho_of(double r) const { return 1.0 - r + 2.0 * r * offset_(std::log(r)); }

    // Half-angle of the arc B(rho e, r) ∩ ∂B_0.
    static double chord_half_angle(double rho, double r) {
        return std::acos(std::clamp((1.0 + rho * rho - r * r) / (2.0 * rho), -1.0, 1.0));
    }

    std::size_t level_of(double r) const {
        const double l = std::floor(std::log2(cfg_.delta / r));
        return static_cast<std::size_t>(std::max(0.0, l));
    }

    Level& level(std::size_t l) {
        while (levels_.size() <= l) {
            Level lv;
            lv.reach = cfg_.delta * std::ldexp(1.0, -static_cast<int>(levels_.size()));
            // Buckets tile [0, 2π) exactly so circular bucket arithmetic holds.
            const auto nb = static_cast<std::size_t>(std::ceil(kTwoPi / (2.0 * lv.reach)));
            lv.width = kTwoPi / static_cast<double>(nb);
            lv.buckets.resize(nb);
            levels_.push_back(std::move(lv));
        }
        return levels_[l];
    }

    void index_ball(std::uint32_t id) {
        const Placed& p = placed_[id];
        Level& lv = level(level_of(p.r));
        const auto nb = lv.buckets.size();
        const auto b = static_cast<std::size_t>(std::floor(p.theta / lv.width)) % nb;
        lv.buckets[b].push_back(id);
    }

    // Placed balls that could meet a ball of radius <= rq centered at an angle
    // within half_span of theta.
    void query(double theta, double half_span, double rq, std::vector<std::uint32_t>& out) const {
        out.clear();
        for (const auto& lv : levels_) {
            const double h = half_span + kAngularSlack * (rq + lv.reach) + 1e-12;
            const auto nb = static_cast<long>(lv.buckets.size());
            long b0 = static_cast<long>(std::floor((theta - h) / lv.width));
            long b1 = static_cast<long>(std::floor((theta + h) / lv.width));
            if (b1 - b0 + 1 >= nb) {
                b0 = 0;
                b1 = nb - 1;
            }
            for (long b = b0; b <= b1; ++b) {
                const auto& bucket = lv.buckets[static_cast<std::size_t>(((b % nb) + nb) % nb)];
                out.insert(out.end(), bucket.begin(), bucket.end());
            }
        }
    }

    bool feasible(double theta, double r, double rho, const std::vector<std::uint32_t>& near) const {
        const double x = rho * std::cos(theta);
        const double y = rho * std::sin(theta);
        for (auto j : near) {
            const Placed& p = placed_[j];
            const double dx = x - p.x;
            const double dy = y - p.y;
            const double s = r + p.r;
            if (dx * dx + dy * dy < s * s) {
                return false;
            }
        }
        return true;
    }

    bool feasible(double theta, double r, const std::vector<std::uint32_t>& near) const {
        return feasible(theta, r, rho_of(r), near);
    }

    double max_radius_at(double theta, double r_upper, const std::vector<std::uint32_t>& near) const {
        if (feasible(theta, r_upper, near)) {
            return r_upper;
        }
        if (!feasible(theta, floor_, near)) {
            return 0.0;
        }
        double lo = floor_;
        double hi = r_upper;
        for (int it = 0; it < 60 && hi - lo > 1e-11 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (feasible(theta, mid, near) ? lo : hi) = mid;
        }
        return lo;
    }

    // Largest radius whose chord fits in an arc of the given width.
    double radius_fitting(double width) const {
        if (2.0 * chord_half_angle(rho_of(cfg_.delta), cfg_.delta) <= width) {
            return cfg_.delta;
        }
        double lo = 0.5 * floor_;
        double hi = cfg_.delta;
        for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (2.0 * chord_half_angle(rho_of(mid), mid) <= width ? lo : hi) = mid;
        }
        return lo;
    }

    void solve_gap(double lo, double hi) {
        const std::uint64_t id = next_id_++;
        const double width = hi - lo;
        const double r_upper = radius_fitting(width);
        gaps_[lo] = GapRec{hi, id, r_upper};
        solved_now_.push_back(lo);
        if (r_upper < floor_) {
            heap_.push({0.0, lo, lo, id});
            return;
        }
        const double mid = 0.5 * (lo + hi);
        query(mid, 0.5 * width, r_upper, near_);

        const double step = width / kThetaSamples;
        std::vector<double> rad(kThetaSamples);
        std::size_t best = 0;
        for (int i = 0; i < kThetaSamples; ++i) {
            rad[i] = max_radius_at(lo + (i + 0.5) * step, r_upper, near_);
            if (rad[i] > rad[best]) {
                best = static_cast<std::size_t>(i);
            }
        }
        double theta = lo + (best + 0.5) * step;
        double radius = rad[best];
        if (radius <= 0.0) {
            heap_.push({0.0, theta, lo, id});
            return;
        }
        if (radius == r_upper) {
            // Leftmost angle admitting the capped radius.
            double a = best > 0 ? lo + (best - 0.5) * step : lo;
            double b = theta;
            for (int it = 0; it < 50; ++it) {
                const double m = 0.5 * (a + b);
                (feasible(m, r_upper, near_) ? b : a) = m;
            }
            theta = b;
        } else {
            double a = std::max(lo, theta - step);
            double b = std::min(hi, theta + step);
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = b - phi * (b - a);
            double x2 = a + phi * (b - a);
            double f1 = max_radius_at(x1, r_upper, near_);
            double f2 = max_radius_at(x2, r_upper, near_);
            for (int it = 0; it < 40; ++it) {
                if (f1 >= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = max_radius_at(x1, r_upper, near_);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = max_radius_at(x2, r_upper, near_);
                }
            }
            const double t = f1 >= f2 ? x1 : x2;
            const double f = std::max(f1, f2);
            if (f > radius) {
                radius = f;
                theta = t;
            }
        }
        heap_.push({radius, theta, lo, id});
    }

    // Gaps whose candidates a new ball B(theta, r) could block.
    std::vector<std::pair<double, double>> gaps_near(double theta, double r) const {
        std::vector<std::pair<double, double>> out;
        const double far = kAngularSlack * (r + cfg_.delta) + 1e-9;
        auto visit = [&](auto it) {
            const double glo = it->first;
            const double ghi = it->second.hi;
            const double c = 0.5 * (glo + ghi);
            const double d = std::abs(std::remainder(theta - c, kTwoPi));
            if (d <= 0.5 * (ghi - glo) + kAngularSlack * (r + it->second.r_upper) + 1e-9) {
                out.emplace_back(glo, ghi);
            }
        };
        // Gaps are disjoint: only keys within `far` of theta, plus the single
        // gap starting just before that window, can qualify.
        const double a = theta - far;
        const double b = theta + far;
        auto scan = [&](double from, double to) {
            for (auto it = gaps_.lower_bound(from); it != gaps_.end() && it->first <= to; ++it) {
                visit(it);
            }
        };
        scan(a, b);
        if (a < 0.0) {
            scan(a + kTwoPi, kTwoPi);
        }
        if (b > kTwoPi) {
            scan(0.0, b - kTwoPi);
        }
        if (!gaps_.empty()) {
            // A gap starting before `a` may still reach theta.
            auto it = gaps_.lower_bound(a < 0.0 ? a + kTwoPi : a);
            it = it == gaps_.begin() ? std::prev(gaps_.end()) : std::prev(it);
            visit(it);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool place(double theta, double r, SurroundedBall& out) {
        // Exact center distance; back off r if the tabulated offset was optimistic.
        std::vector<std::uint32_t> near;
        query(theta, 0.0, cfg_.delta, near);
        double rho = center_distance_for_overlap(r, 1.0, cfg_.eps, 2);
        int tries = 0;
        while (!feasible(theta, r, rho, near)) {
            if (++tries > 60 || r * (1.0 - 1e-10 * std::ldexp(1.0, tries)) < floor_) {
                return false;
            }
            r *= 1.0 - 1e-10 * std::ldexp(1.0, tries);
            if (r < floor_) {
                return false;
            }
            rho = center_distance_for_overlap(r, 1.0, cfg_.eps, 2);
        }
        theta = wrap_theta(theta);
        const Placed p{rho * std::cos(theta), rho * std::sin(theta), r, theta};
        placed_.push_back(p);
        index_ball(static_cast<std::uint32_t>(placed_.size() - 1));
        out.balls.push_back(Ball({p.x, p.y}, r));

        const double beta = chord_half_angle(rho, r);
        // Split the gap holding theta; run() already removed it from gaps_.
        if (placed_.size() == 1) {
            uncovered_ = kTwoPi - 2.0 * beta;
            solve_gap(theta + beta, theta + kTwoPi - beta);
        } else {
            const double lo = pending_lo_;
            const double hi = pending_hi_;
            double t = theta;
            while (t < lo) {
                t += kTwoPi;
            }
            uncovered_ -= std::min(hi, t + beta) - std::max(lo, t - beta);
            if (t - beta > lo) {
                solve_gap(lo, t - beta);
            }
            if (hi > t + beta) {
                double a = t + beta;
                double b = hi;
                if (a >= kTwoPi) {
                    a -= kTwoPi;
                    b -= kTwoPi;
                }
                solve_gap(a, b);
            }
        }
        uncovered_ = std::max(0.0, uncovered_);
        out.log.push_back({placed_.size(), r, theta, uncovered_ / kTwoPi});

        for (const auto& [glo, ghi] : gaps_near(theta, r)) {
            if (!just_solved(glo)) {
                solve_gap(glo, ghi);
            }
        }
        solved_now_.clear();
        return true;
    }

    static double wrap_theta(double t) {
        t = std::fmod(t, kTwoPi);
        return t < 0.0 ? t + kTwoPi : t;
    }

    bool just_solved(double lo) const {
        return std::find(solved_now_.begin(), solved_now_.end(), lo) != solved_now_.end();
    }

    SurroundedBallConfig cfg_;
    double floor_;
    boost::math::interpolators::cardinal_cubic_b_spline<double> offset_;
    std::vector<Level> levels_;
    std::vector<Placed> placed_;
    std::map<double, GapRec> gaps_;
    std::priority_queue<Candidate> heap_;
    std::vector<std::uint32_t> near_;
    std::vector<double> solved_now_;
    std::uint64_t next_id_ = 0;
    double uncovered_ = kTwoPi;
    double pending_lo_ = 0.0;
    double pending_hi_ = 0.0;
};

}  // namespace detail

/// Unit ball surrounded by satellites B_n with λ(B_0 ∩ B_n) = ε λ(B_n), each
/// chosen as large as possible (radius <= delta) among placements disjoint
/// from all earlier satellites.
inline SurroundedBall build_surrounded_ball(const SurroundedBallConfig& cfg) {
    return detail::SurroundedBuilder(cfg).run();
}

/// Exposed boundary length per unit of covered ∂B_0 for a vanishing
/// satellite: the limit r -> 0, where ∂B_0 looks like a line cutting off the
/// fraction eps of the satellite's area.
inline double flat_exposure_ratio(double eps) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw std::invalid_argument("flat_exposure_ratio: eps must lie in (0, 1/2)");
    }
    // Segment of half-angle phi holds (2 phi - sin 2 phi) / (2π) of the disk.
    double lo = 0.0;
    double hi = 0.5 * std::numbers::pi;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double frac = (2.0 * mid - std::sin(2.0 * mid)) / kTwoPi;
        (frac < eps ? lo : hi) = mid;
    }
    const double phi = 0.5 * (lo + hi);
    return (std::numbers::pi - phi) / std::sin(phi);
}

/// Balls whose centers lie in the closed half-space {x_1 >= 0}.
inline BallCollection restrict_to_halfspace(const BallCollection& balls) {
    BallCollection out(balls.dimension());
    for (const auto& b : balls) {
        if (b.center(0) >= 0.0) {
            out.push_back(b);
        }
    }
    return out;
}

struct ReverseExample {
    BallCollection balls{2};
    double inner_radius = 0.0;     // the disk B(0, inner_radius) is probed
    double inner_perimeter = 0.0;  // H^1(∂*⋃B ∩ B(0, inner_radius))
};

/// Unit balls on a hexagonal lattice in [-W, W]^2 that miss B(0, eps), plus
/// a dense ring of unit balls tangent to B(0, eps) from outside, so the hole
/// around 0 is B(0, eps) up to scallops of depth O(eps^2).
inline ReverseExample build_reverse_example(double eps, double half_width) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("build_reverse_example: eps must lie in (0, 1)");
    }
    if (!(half_width >= 2.0)) {
        throw std::invalid_argument("build_reverse_example: half_width must be >= 2");
    }
    ReverseExample out;
    const double pitch = 1.0;
    const double row = pitch * std::sqrt(3.0) / 2.0;
    const double keep_out = 1.0 + eps;  // lattice ball stays clear of B(0, eps)
    const auto rows = static_cast<long>(std::floor(half_width / row));
    for (long j = -rows; j <= rows; ++j) {
        const double y = j * row;
        const double shift = (j % 2 == 0) ? 0.0 : 0.5 * pitch;
        const auto cols = static_cast<long>(std::floor(half_width / pitch)) + 1;
        for (long i = -cols; i <= cols; ++i) {
            const double x = i * pitch + shift;
            if (std::abs(x) > half_width || std::hypot(x, y) < keep_out) {
                continue;
            }
            out.balls.push_back(Ball({x, y}, 1.0));
        }
    }
    const double ring = 1.0 + eps;
    const auto m = static_cast<std::size_t>(std::ceil(8.0 * std::numbers::pi / eps));
    for (std::size_t k = 0; k < m; ++k) {
        const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        out.balls.push_back(Ball({ring * std::cos(a), ring * std::sin(a)}, 1.0));
    }
    out.inner_radius = 2.0 * eps;
    out.inner_perimeter = boundary_length_in_disk(boundary_arcs_2d(out.balls), out.balls, 0.0, 0.0,
                                                  out.inner_radius);
    return out;
}

}  // namespace ballcover
