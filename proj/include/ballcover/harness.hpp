#pragma once

// Verification harness: random corpora, per-instance inequality checks,
// log-log rate fits and report emission.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ballcover/arcs.hpp"
#include "ballcover/counterexample.hpp"
#include "ballcover/io.hpp"
#include "ballcover/maximal1d.hpp"
#include "ballcover/measure.hpp"
#include "ballcover/montecarlo.hpp"
#include "ballcover/parallel.hpp"
#include "ballcover/selection.hpp"
#include "ballcover/types.hpp"
#include "ballcover/union1d.hpp"

namespace ballcover {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Params = std::vector<std::pair<std::string, std::string>>;

/// One evaluated inequality lhs <= constant * rhs * (1 + tol).
/// constant = +inf marks a record-only comparison (an unquantified ≲).
struct CheckReport {
    std::string check_id;
    std::string instance_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double constant = 1.0;
    double tol = 0.0;
    bool passed = false;
    Params params;

    void finalize() {
        ratio = rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : kInf);
        const bool finite = std::isfinite(lhs) && std::isfinite(rhs);
        passed = finite && (std::isinf(constant) || lhs <= constant * rhs * (1.0 + tol));
    }
};

inline CheckReport make_report(std::string check_id, std::string instance_id, double lhs, double rhs,
                               double constant, double tol, Params params = {}) {
    CheckReport r{std::move(check_id), std::move(instance_id), lhs, rhs, 0.0, constant, tol, false,
                  std::move(params)};
    r.finalize();
    return r;
}

struct RateFit {
    std::vector<double> xs;
    std::vector<double> ys;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least squares of log y on log x. xs strictly decreasing, all values > 0.
inline RateFit fit_rate(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_rate: need at least two (x, y) pairs");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || (i > 0 && !(xs[i] < xs[i - 1]))) {
            throw std::invalid_argument("fit_rate: xs must be positive and strictly decreasing, ys positive");
        }
    }
    const double n = static_cast<double>(xs.size());
    std::vector<double> u(xs.size());
    std::vector<double> v(xs.size());
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        u[i] = std::log(xs[i]);
        v[i] = std::log(ys[i]);
        mu += u[i] / n;
        mv += v[i] / n;
    }
    double cxx = 0, cxy = 0, cyy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cxx += (u[i] - mu) * (u[i] - mu);
        cxy += (u[i] - mu) * (v[i] - mv);
        cyy += (v[i] - mv) * (v[i] - mv);
    }
    RateFit f;
    f.slope = cxy / cxx;
    f.intercept = mv - f.slope * mu;
    f.r_squared = cyy > 0.0 ? std::min(1.0, (cxy * cxy) / (cxx * cyy)) : 1.0;
    f.xs = std::move(xs);
    f.ys = std::move(ys);
    return f;
}

// ---------------------------------------------------------------- corpora

namespace detail {
inline constexpr std::uint32_t kCorpusTag = 0xc0de;
inline constexpr std::uint32_t kStepTag = 0x57e9;
}  // namespace detail

/// Centers uniform in [-3, 3]^d, radii log-uniform in [0.05, 1], n uniform
/// in [n_min, n_max]. Instance `index` of `seed` is reproducible on its own.
inline BallCollection random_collection(std::size_t d, std::uint64_t seed, std::uint64_t index,
                                        std::size_t n_min = 2, std::size_t n_max = 40) {
    if (d < 1 || n_min < 1 || n_min > n_max) {
        throw std::invalid_argument("random_collection: bad dimension or size range");
    }
    auto rng = substream(seed, index, detail::kCorpusTag + static_cast<std::uint32_t>(d));
    std::uniform_int_distribution<std::size_t> count(n_min, n_max);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> logr(std::log(0.05), 0.0);
    const std::size_t n = count(rng);
    BallCollection out(d);
    std::vector<double> c(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& x : c) {
            x = coord(rng);
        }
        out.push_back(Ball(c, std::exp(logr(rng))));
    }
    return out;
}

inline std::vector<Interval> random_intervals(std::uint64_t seed, std::uint64_t index, std::size_t n_max = 50) {
    std::vector<Interval> out;
    for (const auto& b : random_collection(1, seed, index, 1, n_max)) {
        out.push_back(to_interval(b));
    }
    return out;
}

/// Nonnegative step function with k uniform in [1, k_max] pieces; values are
/// drawn from a small lattice so ties and zero gaps occur.
inline StepFunction random_step_function(std::uint64_t seed, std::uint64_t index, std::size_t k_max = 12) {
    auto rng = substream(seed, index, detail::kStepTag);
    std::uniform_int_distribution<std::size_t> pieces(1, k_max);
    std::uniform_real_distribution<double> width(0.1, 2.0);
    std::uniform_int_distribution<int> lattice(0, 8);
    const std::size_t k = pieces(rng);
    std::vector<double> x{std::uniform_real_distribution<double>(-3.0, 3.0)(rng)};
    std::vector<double> v;
    for (std::size_t i = 0; i < k; ++i) {
        x.push_back(x.back() + width(rng));
        v.push_back(0.5 * lattice(rng));
    }
    if (*std::max_element(v.begin(), v.end()) == 0.0) {
        v[k / 2] = 1.0;
    }
    return StepFunction(std::move(x), std::move(v));
}

// ---------------------------------------------------------------- measures

/// σ(∂*⋃B): exact for d <= 2, Monte Carlo otherwise.
inline PerimeterEstimate union_perimeter(const BallCollection& balls, std::size_t samples_per_ball = 20000,
                                         std::uint64_t seed = 1, std::size_t jobs = 1) {
    if (balls.dimension() == 1) {
        PerimeterEstimate e;
        e.method = Method::exact1d;
        e.value = balls.empty() ? 0.0 : static_cast<double>(union_boundary_1d(intervals_of(balls)));
        return e;
    }
    if (balls.dimension() == 2) {
        return union_perimeter_2d(balls);
    }
    return union_perimeter_mc(balls, samples_per_ball, seed, jobs);
}

/// λ(⋃B): exact for d <= 2, Monte Carlo otherwise.
inline PerimeterEstimate union_volume(const BallCollection& balls, std::size_t samples = 200000,
                                      std::uint64_t seed = 1, std::size_t jobs = 1) {
    if (balls.dimension() == 2) {
        PerimeterEstimate e;
        e.method = Method::exact2d;
        e.value = union_area_2d(balls);
        return e;
    }
    return union_volume_mc(balls, samples, seed, jobs);
}

inline BallCollection selected_balls(const BallCollection& balls, const SelectionResult& sel) {
    return balls.subset(sel.selected);
}

// ---------------------------------------------------------------- checks

inline Params base_params(const BallCollection& balls) {
    return {{"d", std::to_string(balls.dimension())}, {"n", std::to_string(balls.size())}};
}

/// σ(∂*⋃B) against σ(∂*⋃S) for the perimeter-Besicovitch selection.
inline CheckReport check_thm12(const BallCollection& balls, const std::string& instance_id,
                               std::size_t samples_per_ball = 20000, std::uint64_t seed = 1) {
    if (balls.empty()) {
        throw std::invalid_argument("check_thm12: empty collection");
    }
    const auto sel = perimeter_besicovitch_select(balls);
    const auto lhs = union_perimeter(balls, samples_per_ball, seed);
    const auto rhs = union_perimeter(selected_balls(balls, sel), samples_per_ball, seed);
    Params p = base_params(balls);
    p.emplace_back("method", to_string(lhs.method));
    p.emplace_back("families", std::to_string(sel.families->size()));
    p.emplace_back("selected", std::to_string(sel.selected.size()));
    auto r = make_report("thm12.perimeter", instance_id, lhs.value, rhs.value, kInf, 0.0, std::move(p));
    r.passed = r.passed && r.lhs > 0.0 && r.rhs > 0.0;
    return r;
}

inline constexpr double kOverlapRelTol = 1e-9;
inline constexpr double kContainmentTol = 1e-12;

/// Exact guarantees of the ε-overlap selection, followed by the volume and
/// rate-normalized perimeter ratios.
inline std::vector<CheckReport> check_thm13(const BallCollection& balls, double eps, const std::string& instance_id,
                                            std::size_t samples = 200000, std::uint64_t seed = 1) {
    const auto sel = perimeter_vitali_select(balls, eps);
    const std::size_t d = balls.dimension();
    Params p = base_params(balls);
    p.emplace_back("eps", format_real(eps));
    p.emplace_back("eps_max", format_real(sel.params.eps_max));

    double worst_overlap = 0.0;  // max of lens / (eps * min volume)
    for (std::size_t a = 0; a < sel.selected.size(); ++a) {
        for (std::size_t b = a + 1; b < sel.selected.size(); ++b) {
            const Ball& s1 = balls[sel.selected[a]];
            const Ball& s2 = balls[sel.selected[b]];
            const double m = std::min(ball_volume(s1), ball_volume(s2));
            worst_overlap = std::max(worst_overlap, lens_volume(s1, s2) / (eps * m));
        }
    }
    double worst_reach = -kInf;  // max of |c_B - c_S| + r_B - (23/7) r_S
    for (const auto& g : sel.groups) {
        const Ball& s = balls[g.representative];
        for (std::size_t i : g.members) {
            worst_reach = std::max(worst_reach, center_distance(balls[i], s) + balls[i].radius() -
                                                    23.0 / 7.0 * s.radius());
        }
    }
    const BallCollection chosen = selected_balls(balls, sel);
    const auto vol_b = union_volume(balls, samples, seed);
    const auto vol_s = union_volume(chosen, samples, seed);
    const auto per_b = union_perimeter(balls, samples / 10, seed);
    const auto per_s = union_perimeter(chosen, samples / 10, seed);
    const double rate = std::pow(eps, -(static_cast<double>(d) - 1.0) / (static_cast<double>(d) + 1.0));

    std::vector<CheckReport> out;
    out.push_back(make_report("thm13.overlap", instance_id, worst_overlap, 1.0, 1.0, kOverlapRelTol, p));
    out.push_back(make_report("thm13.containment", instance_id, std::max(0.0, worst_reach), kContainmentTol, 1.0,
                              0.0, p));
    out.push_back(make_report("thm13.volume", instance_id, vol_b.value, vol_s.value, kInf, 0.0, p));
    out.push_back(make_report("thm13.perimeter", instance_id, per_b.value, rate * per_s.value, kInf, 0.0, p));
    return out;
}

/// Guarantees of interval_select_1d on one family.
inline std::vector<CheckReport> check_thm15(std::span<const Interval> intervals, const std::string& instance_id) {
    const auto sel = interval_select_1d(intervals);
    Params p{{"n", std::to_string(intervals.size())}};
    std::vector<Interval> chosen;
    for (std::size_t i : sel.selected) {
        chosen.push_back(intervals[i]);
    }
    double overlap = 0.0;  // count of chosen pairs whose closures meet
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (std::size_t b = a + 1; b < chosen.size(); ++b) {
            overlap += chosen[a].closure_meets(chosen[b]) ? 1.0 : 0.0;
        }
    }
    double local_reach = 0.0;  // groups stepping outside 5S
    double local_boundary = 0.0;
    for (const auto& g : sel.groups) {
        const Interval five = intervals[g.representative].dilated(5.0);
        std::vector<Interval> members;
        for (std::size_t i : g.members) {
            members.push_back(intervals[i]);
            local_reach += (intervals[i].lo() < five.lo() || intervals[i].hi() > five.hi()) ? 1.0 : 0.0;
        }
        local_boundary = std::max(local_boundary, static_cast<double>(union_boundary_1d(members)));
    }
    std::vector<CheckReport> out;
    out.push_back(make_report("thm15.disjoint", instance_id, overlap, 0.0, 1.0, 0.0, p));
    out.push_back(make_report("thm15.volume", instance_id, union_measure_1d(intervals), union_measure_1d(chosen), 5.0,
                              0.0, p));
    out.push_back(make_report("thm15.boundary", instance_id, static_cast<double>(union_boundary_1d(intervals)),
                              static_cast<double>(union_boundary_1d(chosen)), 1.0, 0.0, p));
    out.push_back(make_report("thm15.local_containment", instance_id, local_reach, 0.0, 1.0, 0.0, p));
    out.push_back(make_report("thm15.local_boundary", instance_id, local_boundary, 2.0, 1.0, 0.0, p));
    return out;
}

/// Covering and disjointness facts of besicovitch_select.
inline std::vector<CheckReport> check_prop42(const BallCollection& balls, const std::string& instance_id) {
    const auto sel = besicovitch_select(balls);
    Params p = base_params(balls);
    double slack = 0.0;  // max of r / s - 8/7 over covered centers
    double uncovered = 0.0;
    for (const auto& g : sel.groups) {
        const Ball& s = balls[g.representative];
        for (std::size_t i : g.members) {
            if (center_distance(balls[i], s) > s.radius()) {
                uncovered += 1.0;
            }
            slack = std::max(slack, balls[i].radius() - 8.0 / 7.0 * s.radius());
        }
    }
    double clashes = 0.0;
    for (const auto& fam : *sel.families) {
        for (std::size_t a = 0; a < fam.size(); ++a) {
            for (std::size_t b = a + 1; b < fam.size(); ++b) {
                clashes += disjoint(balls[fam[a]], balls[fam[b]]) ? 0.0 : 1.0;
            }
        }
    }
    std::vector<CheckReport> out;
    out.push_back(make_report("prop42.cover", instance_id, uncovered, 0.0, 1.0, 0.0, p));
    out.push_back(make_report("prop42.slack", instance_id, slack, 1e-12, 1.0, 0.0, p));
    out.push_back(make_report("prop42.families_disjoint", instance_id, clashes, 0.0, 1.0, 0.0, p));
    out.push_back(
        make_report("prop42.family_count", instance_id, static_cast<double>(sel.families->size()), 1.0, kInf, 0.0, p));
    return out;
}

/// Per-level bound and var(Mf) coarea bound for one step function.
inline CheckReport check_thm31(const StepFunction& f, std::size_t levels, const std::string& instance_id,
                               std::size_t jobs = 1) {
    const auto rep = maximal_variation_check(f, levels, jobs);
    Params p{{"k", std::to_string(f.pieces())},
             {"levels", std::to_string(rep.levels.size())},
             {"skipped", std::to_string(rep.skipped)},
             {"per_level_failures", std::to_string(rep.per_level_failures)}};
    auto r = make_report("thm31.variation", instance_id, rep.variation_mf_bound, rep.variation_f, 1.0,
                         1e-9 / std::max(rep.variation_f, 1e-300), std::move(p));
    r.passed = r.passed && rep.per_level_failures == 0;
    return r;
}

/// Surrounded-ball rate data for one ε.
struct RatePoint {
    double eps = 0.0;
    std::size_t balls = 0;
    std::string stop_reason;
    double perimeter = 0.0;         // exact σ(∂*⋃B)
    double uncovered = 0.0;         // exact uncovered length of ∂B_0
    double ratio = 0.0;             // σ(∂*⋃B) / σ(∂B_0)
    double exposure = 0.0;          // flat_exposure_ratio(eps)
    double completed_ratio = 0.0;   // ratio with the uncovered arc filled at the exposure rate
    double small_volume = 0.0;      // Σ_{n>=1} λ(B_n)
};

inline RatePoint surrounded_ball_rate_point(double eps, double delta, std::size_t n_max) {
    SurroundedBallConfig cfg;
    cfg.eps = eps;
    cfg.delta = delta;
    cfg.n_max = n_max;
    const auto sb = build_surrounded_ball(cfg);
    RatePoint pt;
    pt.eps = eps;
    pt.balls = sb.balls.size();
    pt.stop_reason = sb.stop_reason;
    const auto arcs = boundary_arcs_2d(sb.balls);
    pt.perimeter = arc_length(arcs, sb.balls);
    for (const auto& a : arcs) {
        pt.uncovered += a.ball == 0 ? a.length : 0.0;
    }
    for (std::size_t i = 1; i < sb.balls.size(); ++i) {
        pt.small_volume += ball_volume(sb.balls[i]);
    }
    pt.ratio = pt.perimeter / kTwoPi;
    pt.exposure = flat_exposure_ratio(eps);
    pt.completed_ratio = (pt.perimeter + pt.uncovered * (pt.exposure - 1.0)) / kTwoPi;
    return pt;
}

struct RateReport {
    std::vector<RatePoint> points;
    RateFit completed;  // fit on completed_ratio
    RateFit raw;        // fit on the truncated ratio
    double delta = 0.0;
    std::size_t n_max = 0;
};

/// Log-log fit of the surrounded-ball perimeter ratio against ε.
inline RateReport check_example14_rate(const std::vector<double>& eps_list, double delta, std::size_t n_max,
                                       std::size_t jobs = 1) {
    if (eps_list.size() < 2) {
        throw std::invalid_argument("check_example14_rate: need at least two eps values");
    }
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] <= 0.05) || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
            throw std::invalid_argument("check_example14_rate: eps_list must be decreasing in (0, 0.05]");
        }
    }
    RateReport rep;
    rep.delta = delta;
    rep.n_max = n_max;
    rep.points.resize(eps_list.size());
    parallel_for(eps_list.size(), jobs,
                 [&](std::size_t i) { rep.points[i] = surrounded_ball_rate_point(eps_list[i], delta, n_max); });
    std::vector<double> ys_c;
    std::vector<double> ys_r;
    for (const auto& p : rep.points) {
        ys_c.push_back(p.completed_ratio);
        ys_r.push_back(p.ratio);
    }
    rep.completed = fit_rate(eps_list, ys_c);
    rep.raw = fit_rate(eps_list, ys_r);
    return rep;
}

struct IsoperimetricPoint {
    std::size_t d = 0;
    double max_ratio = 0.0;
    double argmax_offset = 0.0;  // as a fraction of r
};

/// max over offsets t of min(vol_in, vol_out)^{d-1} / slice_area^d for cuts
/// of B(0, r) by {x_1 = t}; offsets on a uniform grid in (-r, r) with
/// |t| <= r (1 - 1e-6).
inline IsoperimetricPoint isoperimetric_max(std::size_t d, std::size_t grid, double r = 1.0) {
    if (grid < 10) {
        throw std::invalid_argument("check_isoperimetric: grid must be >= 10");
    }
    IsoperimetricPoint pt;
    pt.d = d;
    const Ball b(std::vector<double>(d, 0.0), r);
    const double de = static_cast<double>(d);
    for (std::size_t i = 0; i <= grid; ++i) {
        const double frac = std::clamp(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid),
                                       -(1.0 - 1e-6), 1.0 - 1e-6);
        const auto cut = halfspace_cut_data(b, frac * r);
        const double ratio =
            std::pow(std::min(cut.vol_in, cut.vol_out), de - 1.0) / std::pow(cut.slice_area, de);
        if (ratio > pt.max_ratio) {
            pt.max_ratio = ratio;
            pt.argmax_offset = frac;
        }
    }
    return pt;
}

inline std::vector<CheckReport> check_isoperimetric(const std::vector<std::size_t>& d_list, std::size_t grid) {
    std::vector<CheckReport> out;
    for (std::size_t d : d_list) {
        const auto pt = isoperimetric_max(d, grid);
        const double de = static_cast<double>(d);
        // Central cut: half the ball against the equatorial slice.
        const double central =
            std::pow(0.5 * unit_ball_volume(d), de - 1.0) / std::pow(unit_ball_volume(d - 1), de);
        out.push_back(make_report("lemma38.isoperimetric", "d" + std::to_string(d), pt.max_ratio, central, kInf, 0.0,
                                  {{"d", std::to_string(d)},
                                   {"grid", std::to_string(grid)},
                                   {"argmax_offset", format_real(pt.argmax_offset)}}));
    }
    return out;
}

/// E = {x_1 > 0}: σ(∂*⋃B \ E) against λ^{-1/2} σ(∂E ∩ ⋃B) over the balls with
/// λ(E ∩ B) > lambda λ(B).
inline CheckReport check_prop16_ratio(const BallCollection& balls, double lambda, const std::string& instance_id) {
    require_planar(balls, "check_prop16_ratio");
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("check_prop16_ratio: lambda must lie in (0, 1)");
    }
    BallCollection kept(2);
    for (const auto& b : balls) {
        const double c = b.center(0);
        const double r = b.radius();
        double in = 0.0;
        if (c >= r) {
            in = ball_volume(b);
        } else if (c > -r) {
            in = halfspace_cut_data(b, -c).vol_in;
        }
        if (in > lambda * ball_volume(b)) {
            kept.push_back(b);
        }
    }
    double lhs = 0.0;
    double rhs = 0.0;
    if (!kept.empty()) {
        lhs = boundary_length_in_halfplane(boundary_arcs_2d(kept), kept, 0.0);
        rhs = chord_union_length(kept, 0.0);
    }
    Params p = base_params(balls);
    p.emplace_back("lambda", format_real(lambda));
    p.emplace_back("kept", std::to_string(kept.size()));
    return make_report("prop16.ratio", instance_id, lhs, std::pow(lambda, -0.5) * rhs, kInf, 0.0, std::move(p));
}

// ---------------------------------------------------------------- output

inline std::string format_report(const CheckReport& r) {
    std::ostringstream os;
    os << "check=" << r.check_id << " instance=" << r.instance_id << " lhs=" << format_real(r.lhs)
       << " rhs=" << format_real(r.rhs) << " ratio=" << format_real(r.ratio)
       << " constant=" << format_real(r.constant) << " tol=" << format_real(r.tol)
       << " passed=" << (r.passed ? 1 : 0);
    for (const auto& [k, v] : r.params) {
        os << ' ' << k << '=' << v;
    }
    return os.str();
}

inline std::vector<CheckReport> sorted_reports(std::vector<CheckReport> reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
        return std::tie(a.instance_id, a.check_id) < std::tie(b.instance_id, b.check_id);
    });
    return reports;
}

struct SummaryRow {
    std::string check_id;
    std::size_t corpus_size = 0;
    std::size_t pass_count = 0;
    double max_ratio = 0.0;
};

inline std::vector<SummaryRow> summarize(const std::vector<CheckReport>& reports) {
    std::map<std::string, SummaryRow> rows;
    for (const auto& r : reports) {
        auto& row = rows[r.check_id];
        row.check_id = r.check_id;
        ++row.corpus_size;
        row.pass_count += r.passed ? 1 : 0;
        if (std::isfinite(r.ratio)) {
            row.max_ratio = std::max(row.max_ratio, r.ratio);
        }
    }
    std::vector<SummaryRow> out;
    for (auto& [k, v] : rows) {
        out.push_back(v);
    }
    return out;
}

inline std::string format_summary(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    os << "check_id corpus_size pass_count max_ratio\n";
    for (const auto& r : rows) {
        os << r.check_id << ' ' << r.corpus_size << ' ' << r.pass_count << ' ' << format_real(r.max_ratio) << '\n';
    }
    return os.str();
}

inline std::string format_rate(const RateReport& rep) {
    std::ostringstream os;
    os << "rate delta=" << format_real(rep.delta) << " n_max=" << rep.n_max
       << " slope=" << format_real(rep.completed.slope) << " intercept=" << format_real(rep.completed.intercept)
       << " r_squared=" << format_real(rep.completed.r_squared) << " raw_slope=" << format_real(rep.raw.slope)
       << " raw_r_squared=" << format_real(rep.raw.r_squared) << '\n';
    os << "eps,balls,ratio,completed_ratio,uncovered_fraction,exposure,small_volume,stop\n";
    for (const auto& p : rep.points) {
        os << format_real(p.eps) << ',' << p.balls << ',' << format_real(p.ratio) << ','
           << format_real(p.completed_ratio) << ',' << format_real(p.uncovered / kTwoPi) << ','
           << format_real(p.exposure) << ',' << format_real(p.small_volume) << ',' << p.stop_reason << '\n';
    }
    return os.str();
}

}  // namespace ballcover
