#pragma once

// Command layer of the ballcover tool: configuration handling and dispatch.
// run() is pure apart from the files it is told to read and write.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballcover.hpp"

namespace ballcover::cli {

inline constexpr const char* kVersion = "ballcover 0.1.0";

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "input", "output", "seed",  "dim",   "eps", "eps-list", "delta",       "lambda", "level",
        "levels", "samples", "algorithm", "jobs", "kind", "k",    "tiny-radius", "n-max",  "box",
        "count"};
    return keys;
}

inline const std::set<std::string>& commands() {
    static const std::set<std::string> c{"generate", "select", "measure", "check", "rate", "maxfn"};
    return c;
}

/// Raised for malformed or incomplete configuration (exit status 1).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    const std::string& text(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end()) {
            throw ConfigError(command + ": --" + key + " is required");
        }
        return it->second;
    }

    std::string text_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? values.at(key) : fallback;
    }

    double real(const std::string& key) const {
        const std::string& s = text(key);
        double v = 0.0;
        const char* b = s.data() + (!s.empty() && s[0] == '+' ? 1 : 0);
        const char* e = s.data() + s.size();
        const auto [end, ec] = std::from_chars(b, e, v);
        if (s.empty() || ec != std::errc() || end != e || !std::isfinite(v)) {
            throw ConfigError("--" + key + ": not a finite number: '" + s + "'");
        }
        return v;
    }

    double real_or(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

    std::uint64_t integer(const std::string& key) const {
        const std::string& s = text(key);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = s.empty() || s[0] == '-' ? 0 : std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) {
            throw ConfigError("--" + key + ": not a nonnegative integer: '" + s + "'");
        }
        return v;
    }

    std::uint64_t integer_or(const std::string& key, std::uint64_t fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    std::vector<double> reals(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(text(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            RunConfig tmp;
            tmp.values["item"] = item;
            try {
                out.push_back(tmp.real("item"));
            } catch (const ConfigError&) {
                throw ConfigError("--" + key + ": bad list entry '" + item + "'");
            }
        }
        if (out.empty()) {
            throw ConfigError("--" + key + ": empty list");
        }
        return out;
    }

    void set(const std::string& key, const std::string& value) {
        if (!known_keys().count(key)) {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
        values[key] = value;
    }

    void validate() const {
        if (!commands().count(command)) {
            throw ConfigError("unknown command '" + command + "'");
        }
        for (const auto& [k, v] : values) {
            if (!known_keys().count(k)) {
                throw ConfigError("unknown configuration key '" + k + "'");
            }
        }
    }
};

/// Flat key=value file; '#' starts a comment line.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto l = s.find_first_not_of(" \t\r");
            const auto r = s.find_last_not_of(" \t\r");
            return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "command") {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": the command is given on the command line");
        }
        cfg.set(key, value);
    }
}

/// Header lines embedded in every output file. "jobs" and "output" are
/// left out: neither changes the results.
inline std::string provenance(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# " << kVersion << '\n' << "# command=" << cfg.command << '\n';
    for (const auto& [k, v] : cfg.values) {
        if (k != "jobs" && k != "output") {
            os << "# " << k << '=' << v << '\n';
        }
    }
    return os.str();
}

struct Outcome {
    std::string body;     // written to --output, or stdout
    std::string summary;  // one line
    int status = 0;
};

namespace detail {

inline BallCollection load_balls(const RunConfig& cfg) {
    std::istringstream in(read_file(cfg.text("input")));
    return parse_balls(in);
}

inline std::size_t jobs_of(const RunConfig& cfg) {
    return static_cast<std::size_t>(std::max<std::uint64_t>(1, cfg.integer_or("jobs", 1)));
}

inline std::string dim_line(std::size_t d) { return std::to_string(d); }

inline Outcome generate(const RunConfig& cfg) {
    const std::string kind = cfg.text("kind");
    const std::uint64_t seed = cfg.integer_or("seed", 1);
    Outcome o;
    if (kind == "random") {
        const auto d = static_cast<std::size_t>(cfg.integer_or("dim", 2));
        const auto b = random_collection(d, seed, 0);
        o.body = format_balls(b);
        o.summary = "generated " + std::to_string(b.size()) + " random balls in dimension " + dim_line(d);
    } else if (kind == "intervals") {
        const auto b = random_collection(1, seed, 0, 1, 50);
        o.body = format_balls(b);
        o.summary = "generated " + std::to_string(b.size()) + " random intervals";
    } else if (kind == "fig1") {
        const auto b = build_fig1(static_cast<std::size_t>(cfg.integer("k")), cfg.real("tiny-radius"));
        o.body = format_balls(b);
        o.summary = "generated unit ball with " + std::to_string(b.size() - 1) + " tiny balls";
    } else if (kind == "surrounded" || kind == "surrounded-halfspace") {
        SurroundedBallConfig sc;
        sc.eps = cfg.real("eps");
        sc.delta = cfg.real_or("delta", 0.25);
        sc.n_max = static_cast<std::size_t>(cfg.integer_or("n-max", 2000));
        sc.seed = seed;
        sc.validate();
        const auto sb = build_surrounded_ball(sc);
        const auto balls = kind == "surrounded" ? sb.balls : restrict_to_halfspace(sb.balls);
        std::ostringstream os;
        os << format_balls(balls);
        os << "# generation log: step radius angle uncovered_fraction\n";
        for (const auto& s : sb.log) {
            os << "# step " << s.index << ' ' << format_real(s.radius) << ' ' << format_real(s.angle) << ' '
               << format_real(s.uncovered_fraction) << '\n';
        }
        os << "# stop " << sb.stop_reason << '\n';
        o.body = os.str();
        o.summary = "generated " + std::to_string(balls.size()) + " balls (" + sb.stop_reason +
                    ", uncovered fraction " + format_real(sb.uncovered_fraction) + ")";
    } else if (kind == "reverse") {
        const auto rev = build_reverse_example(cfg.real("eps"), cfg.real_or("box", 4.0));
        o.body = format_balls(rev.balls) + "# inner_perimeter " + format_real(rev.inner_perimeter) + '\n';
        o.summary = "generated " + std::to_string(rev.balls.size()) + " unit balls, inner boundary " +
                    format_real(rev.inner_perimeter);
    } else if (kind == "step") {
        const auto f = random_step_function(seed, 0);
        o.body = format_step_function(f);
        o.summary = "generated step function with " + std::to_string(f.pieces()) + " pieces";
    } else {
        throw ConfigError(
            "generate: --kind must be one of random, intervals, fig1, surrounded, surrounded-halfspace, reverse, step");
    }
    return o;
}

inline Outcome select(const RunConfig& cfg) {
    const auto balls = load_balls(cfg);
    if (balls.empty()) {
        throw ConfigError("select: input collection is empty");
    }
    const std::string alg = cfg.text("algorithm");
    SelectionResult r;
    if (alg == "vitali") {
        r = vitali_select(balls);
    } else if (alg == "besicovitch") {
        r = besicovitch_select(balls);
    } else if (alg == "perimeter-besicovitch") {
        r = perimeter_besicovitch_select(balls);
    } else if (alg == "perimeter-vitali") {
        r = perimeter_vitali_select(balls, cfg.real("eps"));
    } else if (alg == "interval-1d") {
        r = interval_select_1d(balls);
    } else {
        throw ConfigError(
            "select: --algorithm must be one of vitali, besicovitch, perimeter-besicovitch, perimeter-vitali, "
            "interval-1d");
    }
    Outcome o;
    o.body = format_selection(r);
    o.summary = alg + ": selected " + std::to_string(r.selected.size()) + " of " + std::to_string(balls.size());
    return o;
}

inline Outcome measure(const RunConfig& cfg) {
    const auto balls = load_balls(cfg);
    const auto samples = static_cast<std::size_t>(cfg.integer_or("samples", 20000));
    const std::uint64_t seed = cfg.integer_or("seed", 1);
    const std::size_t jobs = jobs_of(cfg);
    const auto per = union_perimeter(balls, samples, seed, jobs);
    Outcome o;
    o.body = format_estimate(per, "perimeter");
    if (!balls.empty()) {
        const auto vol = balls.dimension() == 1
                             ? PerimeterEstimate{union_measure_1d(intervals_of(balls)), 0.0, Method::exact1d, 0}
                             : union_volume(balls, std::max<std::size_t>(1000, samples * balls.size()), seed, jobs);
        o.body += format_estimate(vol, "volume");
    }
    o.summary = "perimeter " + format_real(per.value) + " (" + to_string(per.method) + ")";
    return o;
}

inline Outcome check(const RunConfig& cfg) {
    std::vector<BallCollection> corpus;
    std::vector<std::string> ids;
    if (cfg.has("input")) {
        corpus.push_back(load_balls(cfg));
        ids.push_back("input");
    } else {
        const auto d = static_cast<std::size_t>(cfg.integer_or("dim", 2));
        const auto count = static_cast<std::size_t>(cfg.integer_or("count", 20));
        const std::uint64_t seed = cfg.integer_or("seed", 1);
        for (std::size_t i = 0; i < count; ++i) {
            corpus.push_back(random_collection(d, seed, i));
            char buf[32];
            std::snprintf(buf, sizeof buf, "random-%06zu", i);
            ids.emplace_back(buf);
        }
    }
    const std::optional<double> eps = cfg.has("eps") ? std::optional(cfg.real("eps")) : std::nullopt;
    const std::optional<double> lambda = cfg.has("lambda") ? std::optional(cfg.real("lambda")) : std::nullopt;
    if (eps) {
        const double m = perimeter_vitali_eps_max(corpus.front().dimension());
        if (!(*eps > 0.0 && *eps < m)) {
            throw ConfigError("check: --eps must lie in (0, " + format_real(m) + ")");
        }
    }
    if (lambda && !(*lambda > 0.0 && *lambda < 1.0)) {
        throw ConfigError("check: --lambda must lie in (0, 1)");
    }
    const auto samples = static_cast<std::size_t>(cfg.integer_or("samples", 20000));
    const std::uint64_t seed = cfg.integer_or("seed", 1);

    std::vector<std::vector<CheckReport>> per(corpus.size());
    parallel_for(corpus.size(), jobs_of(cfg), [&](std::size_t i) {
        const auto& b = corpus[i];
        if (b.empty()) {
            return;
        }
        auto& out = per[i];
        out.push_back(check_thm12(b, ids[i], samples, seed));
        for (auto& r : check_prop42(b, ids[i])) {
            out.push_back(std::move(r));
        }
        if (b.dimension() == 1) {
            for (auto& r : check_thm15(intervals_of(b), ids[i])) {
                out.push_back(std::move(r));
            }
        }
        if (eps) {
            for (auto& r : check_thm13(b, *eps, ids[i], samples * 10, seed)) {
                out.push_back(std::move(r));
            }
        }
        if (lambda && b.dimension() == 2) {
            out.push_back(check_prop16_ratio(b, *lambda, ids[i]));
        }
    });
    std::vector<CheckReport> all;
    for (auto& v : per) {
        for (auto& r : v) {
            all.push_back(std::move(r));
        }
    }
    all = sorted_reports(std::move(all));
    Outcome o;
    std::size_t failed = 0;
    for (const auto& r : all) {
        o.body += format_report(r) + '\n';
        failed += r.passed ? 0 : 1;
    }
    for (const auto& row : summarize(all)) {
        o.body += "summary check=" + row.check_id + " corpus_size=" + std::to_string(row.corpus_size) +
                  " pass_count=" + std::to_string(row.pass_count) + " max_ratio=" + format_real(row.max_ratio) +
                  '\n';
    }
    o.status = failed ? 2 : 0;
    o.summary = std::to_string(all.size()) + " checks, " + std::to_string(failed) + " failed";
    return o;
}

inline constexpr double kRateTarget = -1.0 / 3.0;
inline constexpr double kRateBand = 0.1;

inline Outcome rate(const RunConfig& cfg) {
    const std::vector<double> eps = cfg.has("eps-list")
                                        ? cfg.reals("eps-list")
                                        : std::vector<double>{std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5), 1e-3};
    const double delta = cfg.real_or("delta", 0.25);
    const auto n_max = static_cast<std::size_t>(cfg.integer_or("n-max", 2000));
    SurroundedBallConfig probe;
    probe.delta = delta;
    probe.n_max = n_max;
    probe.validate();
    const auto rep = check_example14_rate(eps, delta, n_max, jobs_of(cfg));
    Outcome o;
    o.body = format_rate(rep);
    const bool ok = std::abs(rep.completed.slope - kRateTarget) <= kRateBand;
    o.status = ok ? 0 : 2;
    o.summary = "slope " + format_real(rep.completed.slope) + " (r^2 " + format_real(rep.completed.r_squared) + ")";
    return o;
}

inline Outcome maxfn(const RunConfig& cfg) {
    std::istringstream in(read_file(cfg.text("input")));
    const auto f = parse_step_function(in);
    const auto levels = static_cast<std::size_t>(cfg.integer_or("levels", 200));
    const auto rep = maximal_variation_check(f, levels, jobs_of(cfg));
    std::ostringstream os;
    for (const auto& l : rep.levels) {
        os << "level=" << format_real(l.level) << " weight=" << format_real(l.weight)
           << " count_MI=" << l.maximal_boundary_count << " count_f=" << l.superlevel_boundary_count
           << " skipped=" << (l.skipped ? 1 : 0) << '\n';
    }
    os << "variation var_f=" << format_real(rep.variation_f) << " var_abs_f_slices=" << format_real(rep.variation_abs_f)
       << " var_mf_bound=" << format_real(rep.variation_mf_bound) << " skipped=" << rep.skipped
       << " per_level_failures=" << rep.per_level_failures << " passed=" << (rep.passed ? 1 : 0) << '\n';
    if (cfg.has("level")) {
        const double level = cfg.real("level");
        for (const auto& fam : maximal_intervals(f, level)) {
            os << "family level=" << format_real(level) << " h_lo=" << format_real(fam.h_lo)
               << " h_hi=" << format_real(fam.h_hi) << " leftmost=" << format_real(fam.leftmost.lo()) << ','
               << format_real(fam.leftmost.hi()) << " rightmost=" << format_real(fam.rightmost.lo()) << ','
               << format_real(fam.rightmost.hi()) << " hull=" << format_real(fam.hull.lo()) << ','
               << format_real(fam.hull.hi()) << '\n';
        }
    }
    Outcome o;
    o.body = os.str();
    o.status = rep.passed ? 0 : 2;
    o.summary = "var(Mf) bound " + format_real(rep.variation_mf_bound) + " vs var(f) " + format_real(rep.variation_f);
    return o;
}

}  // namespace detail

/// Writes the outcome (with the provenance header) and returns its status.
inline int emit(const RunConfig& cfg, const Outcome& o, std::ostream& out, std::ostream& err) {
    const std::string content = provenance(cfg) + o.body;
    if (cfg.has("output")) {
        write_file_atomic(cfg.text("output"), content);
        out << o.summary << '\n';
    } else {
        out << content;
        err << o.summary << '\n';
    }
    return o.status;
}

/// Executes one command. Returns 0 on success, 1 on invalid input, 2 when a
/// verified inequality fails.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        Outcome o;
        if (cfg.command == "generate") {
            o = detail::generate(cfg);
        } else if (cfg.command == "select") {
            o = detail::select(cfg);
        } else if (cfg.command == "measure") {
            o = detail::measure(cfg);
        } else if (cfg.command == "check") {
            o = detail::check(cfg);
        } else if (cfg.command == "rate") {
            o = detail::rate(cfg);
        } else {
            o = detail::maxfn(cfg);
        }
        return emit(cfg, o, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace ballcover::cli
