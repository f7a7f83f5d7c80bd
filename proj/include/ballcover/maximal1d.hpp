#pragma once

// Uncentered Hardy-Littlewood maximal function of step functions on the line,
// its maximal intervals at a level, and the per-level boundary comparison
// behind var(Mf) <= var(f).
//
// With F the antiderivative of |f| and H(x) = F(x) - λx, an interval (a, b)
// has average λ iff H(a) = H(b), and average >= λ iff H(b) <= H(a). Since
// H -> +∞ at -∞ and H -> -∞ at +∞, the inclusion-maximal intervals with
// average λ are exactly (first(h), last(h)) for the levels h that H meets at
// two or more points, where first/last are the first and last hitting times.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballcover/parallel.hpp"
#include "ballcover/types.hpp"
#include "ballcover/union1d.hpp"

namespace ballcover {

/// f = values[i] on (breakpoints[i], breakpoints[i+1]), zero outside.
class StepFunction {
public:
    StepFunction(std::vector<double> breakpoints, std::vector<double> values)
        : x_(std::move(breakpoints)), v_(std::move(values)) {
        if (x_.size() < 2 || v_.size() + 1 != x_.size()) {
            throw std::invalid_argument("StepFunction: need k+1 breakpoints and k >= 1 values");
        }
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (!std::isfinite(x_[i]) || (i > 0 && !(x_[i] > x_[i - 1]))) {
                throw std::invalid_argument("StepFunction: breakpoints must be finite and strictly increasing");
            }
        }
        for (double v : v_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("StepFunction: values must be finite");
            }
        }
        prefix_.assign(x_.size(), 0.0);
        for (std::size_t i = 1; i < x_.size(); ++i) {
            prefix_[i] = prefix_[i - 1] + std::abs(v_[i - 1]) * (x_[i] - x_[i - 1]);
        }
    }

    const std::vector<double>& breakpoints() const { return x_; }
    const std::vector<double>& values() const { return v_; }
    std::size_t pieces() const { return v_.size(); }

    /// ∫_{-∞}^{x} |f|.
    double antiderivative(double x) const {
        if (x <= x_.front()) {
            return 0.0;
        }
        if (x >= x_.back()) {
            return prefix_.back();
        }
        const auto i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
        return prefix_[i] + std::abs(v_[i]) * (x - x_[i]);
    }

    double l1_norm() const { return prefix_.back(); }

    double sup_abs() const {
        double m = 0.0;
        for (double v : v_) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }

    /// |f| at a point that is not a breakpoint.
    double abs_at(double x) const {
        if (x <= x_.front() || x >= x_.back()) {
            return 0.0;
        }
        const auto i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
        return std::abs(v_[i]);
    }

    StepFunction scaled(double c) const {
        std::vector<double> v = v_;
        for (double& y : v) {
            y *= c;
        }
        return StepFunction(x_, std::move(v));
    }

    StepFunction shifted(double t) const {
        std::vector<double> x = x_;
        for (double& y : x) {
            y += t;
        }
        return StepFunction(std::move(x), v_);
    }

    StepFunction absolute() const {
        std::vector<double> v = v_;
        for (double& y : v) {
            y = std::abs(y);
        }
        return StepFunction(x_, std::move(v));
    }

private:
    std::vector<double> x_;
    std::vector<double> v_;
    std::vector<double> prefix_;
};

/// (1/(b-a)) ∫_a^b |f|.
inline double average(const StepFunction& f, double a, double b) {
    if (!(a < b)) {
        throw std::invalid_argument("average: need a < b");
    }
    return (f.antiderivative(b) - f.antiderivative(a)) / (b - a);
}

/// Mf(x) = sup of average(f, a, b) over a <= x <= b, a < b. Zero for f = 0.
///
/// For fixed b the average is monotone in a on every piece of F, so optimal
/// endpoints lie in breakpoints ∪ {x}.
inline double maximal_function_at(const StepFunction& f, double x) {
    std::vector<double> left{x};
    std::vector<double> right{x};
    for (double p : f.breakpoints()) {
        if (p < x) {
            left.push_back(p);
        } else if (p > x) {
            right.push_back(p);
        }
    }
    double best = 0.0;
    for (double a : left) {
        const double fa = f.antiderivative(a);
        for (double b : right) {
            if (a < b) {
                best = std::max(best, (f.antiderivative(b) - fa) / (b - a));
            }
        }
    }
    return best;
}

/// var(f): sum of absolute jumps, including the jumps to 0 at both ends.
inline double variation(const StepFunction& f) {
    const auto& v = f.values();
    double s = std::abs(v.front()) + std::abs(v.back());
    for (std::size_t i = 1; i < v.size(); ++i) {
        s += std::abs(v[i] - v[i - 1]);
    }
    return s;
}

/// H^0(∂*{|f| >= level}).
inline std::size_t superlevel_boundary_count(const StepFunction& f, double level) {
    const auto& v = f.values();
    std::size_t components = 0;
    bool inside = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const bool in = std::abs(v[i]) >= level;
        components += (in && !inside) ? 1 : 0;
        inside = in;
    }
    return 2 * components;
}

/// A connected range (h_lo, h_hi) of levels of H, possibly a single level,
/// whose members (first(h), last(h)) are maximal intervals of I_λ.
struct IntervalFamily {
    double h_lo = 0.0;
    double h_hi = 0.0;
    Interval leftmost{0.0, 1.0};   // member at h_hi (or its limit)
    Interval rightmost{0.0, 1.0};  // member at h_lo (or its limit)
    Interval hull{0.0, 1.0};       // union of all members
};

namespace detail {

inline constexpr double kFamilyTol = 1e-12;

class LevelGeometry {
public:
    LevelGeometry(const StepFunction& f, double level) : x_(f.breakpoints()), lambda_(level) {
        h_.resize(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) {
            h_[i] = f.antiderivative(x_[i]) - lambda_ * x_[i];
        }
    }

    const std::vector<double>& values() const { return h_; }

    double first(double h) const {
        if (h >= h_.front()) {
            return x_.front() - (h - h_.front()) / lambda_;
        }
        for (std::size_t i = 1; i < x_.size(); ++i) {
            if (h_[i] <= h) {
                return x_[i - 1] + (x_[i] - x_[i - 1]) * (h_[i - 1] - h) / (h_[i - 1] - h_[i]);
            }
        }
        return x_.back() + (h_.back() - h) / lambda_;
    }

    double last(double h) const {
        if (h <= h_.back()) {
            return x_.back() + (h_.back() - h) / lambda_;
        }
        for (std::size_t i = x_.size() - 1; i >= 1; --i) {
            if (h_[i - 1] >= h) {
                return x_[i - 1] + (x_[i] - x_[i - 1]) * (h_[i - 1] - h) / (h_[i - 1] - h_[i]);
            }
        }
        return x_.front() - (h - h_.front()) / lambda_;
    }

private:
    std::vector<double> x_;
    double lambda_;
    std::vector<double> h_;
};

inline void require_level(double level, const char* who) {
    if (!(level > 0.0) || !std::isfinite(level)) {
        throw std::invalid_argument(std::string(who) + ": level must be positive and finite");
    }
}

}  // namespace detail

/// The maximal interval (first(h), last(h)) of I_λ at H-level h, if any.
inline std::optional<Interval> maximal_interval_at(const StepFunction& f, double level, double h) {
    detail::require_level(level, "maximal_interval_at");
    const detail::LevelGeometry g(f, level);
    const double a = g.first(h);
    const double b = g.last(h);
    if (b - a > detail::kFamilyTol) {
        return Interval(a, b);
    }
    return std::nullopt;
}

/// I_λ grouped into connected families, ordered left to right.
///
/// first and last are linear in h between consecutive values of H at the
/// breakpoints; each such cell and each of those values is examined.
inline std::vector<IntervalFamily> maximal_intervals(const StepFunction& f, double level) {
    detail::require_level(level, "maximal_intervals");
    const detail::LevelGeometry g(f, level);
    std::vector<double> eta = g.values();
    std::sort(eta.begin(), eta.end(), std::greater<>());
    // Values a rounding error apart come from a piece where |f| = level (H flat).
    eta.erase(std::unique(eta.begin(), eta.end(),
                          [](double a, double b) { return a - b <= 1e-13 * (1.0 + std::abs(a)); }),
              eta.end());

    // Pieces of the nondegenerate h-set, scanned from high h to low h.
    struct Piece {
        double hi, lo;          // h range, hi >= lo
        double a_hi, b_hi;      // member endpoints at hi (limits)
        double a_lo, b_lo;      // at lo
    };
    std::vector<Piece> pieces;
    auto member_ok = [](double a, double b) { return b - a > detail::kFamilyTol; };

    for (std::size_t j = 0; j < eta.size(); ++j) {
        const double e = eta[j];
        const double ae = g.first(e);
        const double be = g.last(e);
        if (member_ok(ae, be)) {
            pieces.push_back({e, e, ae, be, ae, be});
        }
        if (j + 1 == eta.size()) {
            break;
        }
        // Open cell (e_next, e): both endpoints linear in h.
        const double lo = eta[j + 1];
        const double hi = e;
        const double h1 = hi - (hi - lo) / 3.0;
        const double h2 = lo + (hi - lo) / 3.0;
        const double a1 = g.first(h1), a2 = g.first(h2);
        const double b1 = g.last(h1), b2 = g.last(h2);
        auto lin = [&](double y1, double y2, double h) { return y1 + (y2 - y1) * (h - h1) / (h2 - h1); };
        const double d_hi = lin(b1, b2, hi) - lin(a1, a2, hi);
        const double d_lo = lin(b1, b2, lo) - lin(a1, a2, lo);
        double top = hi;
        double bot = lo;
        if (d_hi <= detail::kFamilyTol && d_lo <= detail::kFamilyTol) {
            continue;
        }
        if (d_hi <= detail::kFamilyTol) {
            top = hi + (lo - hi) * (detail::kFamilyTol - d_hi) / (d_lo - d_hi);
        } else if (d_lo <= detail::kFamilyTol) {
            bot = hi + (lo - hi) * (detail::kFamilyTol - d_hi) / (d_lo - d_hi);
        }
        if (!(top > bot)) {
            continue;
        }
        pieces.push_back({top, bot, lin(a1, a2, top), lin(b1, b2, top), lin(a1, a2, bot), lin(b1, b2, bot)});
    }

    std::vector<IntervalFamily> out;
    double hull_lo = 0.0;
    double hull_hi = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        if (i == 0 || p.hi != pieces[i - 1].lo) {
            IntervalFamily fam;
            fam.h_hi = p.hi;
            fam.leftmost = Interval(p.a_hi, p.b_hi);
            out.push_back(fam);
            hull_lo = p.a_hi;
            hull_hi = p.b_hi;
        }
        IntervalFamily& fam = out.back();
        fam.h_lo = p.lo;
        fam.rightmost = Interval(p.a_lo, p.b_lo);
        hull_lo = std::min({hull_lo, p.a_hi, p.a_lo});
        hull_hi = std::max({hull_hi, p.b_hi, p.b_lo});
        fam.hull = Interval(hull_lo, hull_hi);
    }
    std::sort(out.begin(), out.end(),
              [](const IntervalFamily& a, const IntervalFamily& b) { return a.hull.lo() < b.hull.lo(); });
    return out;
}

/// Extreme members of every family, without duplicates.
inline std::vector<Interval> maximal_interval_list(const StepFunction& f, double level) {
    std::vector<Interval> out;
    for (const auto& fam : maximal_intervals(f, level)) {
        out.push_back(fam.leftmost);
        if (!(fam.rightmost == fam.leftmost)) {
            out.push_back(fam.rightmost);
        }
    }
    return out;
}

struct LevelSetReport {
    double level = 0.0;
    std::vector<IntervalFamily> families;
    std::size_t superlevel_boundary_count = 0;  // H^0(∂*{|f| >= level})
    std::size_t maximal_boundary_count = 0;     // H^0(∂*⋃I_λ)
    double weight = 0.0;                        // slice width in the coarea sums
    bool skipped = false;
};

inline LevelSetReport level_set_report(const StepFunction& f, double level) {
    LevelSetReport r;
    r.level = level;
    r.families = maximal_intervals(f, level);
    r.superlevel_boundary_count = superlevel_boundary_count(f, level);
    if (!r.families.empty()) {
        std::vector<Interval> hulls;
        for (const auto& fam : r.families) {
            hulls.push_back(fam.hull);
        }
        r.maximal_boundary_count = union_boundary_1d(hulls);
    }
    return r;
}

struct MaximalVariationReport {
    std::vector<LevelSetReport> levels;
    double variation_f = 0.0;
    double variation_abs_f = 0.0;   // coarea slice sum of count_f
    double variation_mf_bound = 0.0;  // coarea slice sum of count_MI
    std::size_t skipped = 0;
    std::size_t per_level_failures = 0;
    bool passed = false;
};

/// Per-level comparison H^0(∂*⋃I_λ) <= H^0(∂*{|f| >= λ}) on a level grid in
/// (0, max|f|), and the coarea slice sums of both counts.
///
/// Levels are midpoints of equal sub-cells of each gap between consecutive
/// distinct values of |f|, so count_f is constant on every slice and its
/// slice sum equals var(|f|) exactly.
inline MaximalVariationReport maximal_variation_check(const StepFunction& f_in, std::size_t level_grid_size,
                                                     std::size_t jobs = 1) {
    if (level_grid_size < 10) {
        throw std::invalid_argument("maximal_variation_check: level_grid_size must be >= 10");
    }
    const StepFunction f = f_in.absolute();
    std::vector<double> u{0.0};
    for (double v : f.values()) {
        u.push_back(v);
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    const double top = u.back();
    if (!(top > 0.0)) {
        throw std::domain_error("maximal_variation_check: f = 0 leaves no levels");
    }

    std::vector<std::pair<double, double>> grid;  // (level, weight)
    const double n = static_cast<double>(level_grid_size);
    for (std::size_t j = 1; j < u.size(); ++j) {
        const double len = u[j] - u[j - 1];
        const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * len / top)));
        const double w = len / static_cast<double>(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            grid.emplace_back(u[j - 1] + (static_cast<double>(c) + 0.5) * w, w);
        }
    }

    MaximalVariationReport rep;
    rep.levels.resize(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        const auto [level, w] = grid[i];
        bool degenerate = false;
        for (double v : u) {
            degenerate = degenerate || std::abs(level - v) <= 1e-9;
        }
        if (degenerate) {
            rep.levels[i].level = level;
            rep.levels[i].weight = w;
            rep.levels[i].skipped = true;
            return;
        }
        rep.levels[i] = level_set_report(f, level);
        rep.levels[i].weight = w;
    });

    rep.variation_f = variation(f_in);
    for (const auto& l : rep.levels) {
        if (l.skipped) {
            ++rep.skipped;
            continue;
        }
        rep.variation_abs_f += l.weight * static_cast<double>(l.superlevel_boundary_count);
        rep.variation_mf_bound += l.weight * static_cast<double>(l.maximal_boundary_count);
        if (l.maximal_boundary_count > l.superlevel_boundary_count) {
            ++rep.per_level_failures;
        }
    }
    if (rep.skipped == rep.levels.size()) {
        throw std::domain_error("maximal_variation_check: every grid level is degenerate");
    }
    rep.passed = rep.per_level_failures == 0 && rep.variation_mf_bound <= rep.variation_f + 1e-9;
    return rep;
}

}  // namespace ballcover
