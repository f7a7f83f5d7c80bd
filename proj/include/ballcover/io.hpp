#pragma once

// Line-oriented text formats. Lines starting with '#' are comments and are
// skipped by every reader.
//
//   balls:          "d n" then n lines "x_1 ... x_d r"
//   step function:  one line of k+1 breakpoints, one line of k values
//   selection:      "algorithm", "params", "selected", "group", "family" records

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "ballcover/maximal1d.hpp"
#include "ballcover/selection.hpp"
#include "ballcover/types.hpp"

namespace ballcover {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

// Next non-comment, non-blank line.
inline bool data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p != std::string::npos && line[p] != '#') {
            return true;
        }
    }
    return false;
}

inline std::vector<double> parse_reals(const std::string& line, const char* what) {
    std::istringstream is(line);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        double v = 0.0;
        const char* b = tok.data() + (tok[0] == '+' ? 1 : 0);
        const char* e = tok.data() + tok.size();
        const auto [end, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || end != e) {
            throw std::invalid_argument(std::string(what) + ": not a number: '" + tok + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

inline std::string format_balls(const BallCollection& balls) {
    std::ostringstream os;
    os << balls.dimension() << ' ' << balls.size() << '\n';
    for (const auto& b : balls) {
        for (std::size_t c = 0; c < b.dimension(); ++c) {
            os << format_real(b.center(c)) << ' ';
        }
        os << format_real(b.radius()) << '\n';
    }
    return os.str();
}

inline BallCollection parse_balls(std::istream& in) {
    std::string line;
    if (!detail::data_line(in, line)) {
        throw std::invalid_argument("balls: missing 'd n' header");
    }
    std::istringstream head(line);
    long long d = 0;
    long long n = 0;
    std::string rest;
    if (!(head >> d >> n) || (head >> rest) || d < 1 || n < 0) {
        throw std::invalid_argument("balls: header must be 'd n' with d >= 1, n >= 0");
    }
    BallCollection out(static_cast<std::size_t>(d));
    for (long long i = 0; i < n; ++i) {
        if (!detail::data_line(in, line)) {
            throw std::invalid_argument("balls: expected " + std::to_string(n) + " ball lines, got " +
                                        std::to_string(i));
        }
        auto v = detail::parse_reals(line, "balls");
        if (v.size() != static_cast<std::size_t>(d) + 1) {
            throw std::invalid_argument("balls: line " + std::to_string(i + 1) + " needs " + std::to_string(d + 1) +
                                        " numbers");
        }
        const double r = v.back();
        v.pop_back();
        out.push_back(Ball(std::move(v), r));
    }
    if (detail::data_line(in, line)) {
        throw std::invalid_argument("balls: trailing data after " + std::to_string(n) + " balls");
    }
    return out;
}

inline std::string format_step_function(const StepFunction& f) {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
        os << (i ? " " : "") << format_real(f.breakpoints()[i]);
    }
    os << '\n';
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        os << (i ? " " : "") << format_real(f.values()[i]);
    }
    os << '\n';
    return os.str();
}

inline StepFunction parse_step_function(std::istream& in) {
    std::string a;
    std::string b;
    if (!detail::data_line(in, a) || !detail::data_line(in, b)) {
        throw std::invalid_argument("step function: need a breakpoints line and a values line");
    }
    std::string extra;
    if (detail::data_line(in, extra)) {
        throw std::invalid_argument("step function: trailing data");
    }
    return StepFunction(detail::parse_reals(a, "step function"), detail::parse_reals(b, "step function"));
}

inline std::string format_selection(const SelectionResult& s) {
    std::ostringstream os;
    const auto& p = s.params;
    os << "algorithm " << s.algorithm << '\n';
    os << "params dimension=" << p.dimension << " radius_slack=" << format_real(p.radius_slack)
       << " enlargement=" << format_real(p.enlargement);
    if (s.algorithm == "perimeter-vitali") {
        os << " eps=" << format_real(p.eps) << " eps_max=" << format_real(p.eps_max)
           << " eps_max_source=derived overlap_threshold=" << format_real(p.overlap_threshold);
    }
    os << '\n';
    auto list = [&](const std::vector<std::size_t>& v) {
        os << v.size();
        for (std::size_t i : v) {
            os << ' ' << i;
        }
    };
    os << "selected ";
    list(s.selected);
    os << '\n';
    for (const auto& g : s.groups) {
        os << "group " << g.representative << ' ';
        list(g.members);
        os << '\n';
    }
    if (s.families) {
        for (std::size_t m = 0; m < s.families->size(); ++m) {
            os << "family " << m << ' ';
            list((*s.families)[m]);
            os << '\n';
        }
    }
    return os.str();
}

inline std::string format_estimate(const PerimeterEstimate& e, const char* quantity) {
    std::ostringstream os;
    os << quantity << " method=" << to_string(e.method) << " value=" << format_real(e.value)
       << " std_error=" << format_real(e.std_error) << " samples=" << e.sample_count << '\n';
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename into '" + path + "': " + ec.message());
    }
}

}  // namespace ballcover
