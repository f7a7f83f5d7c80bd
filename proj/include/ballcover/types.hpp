#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ballcover {

// Tangency and rounding threshold for "disjoint" and "coincident" tests.
inline constexpr double kDisjointTol = 1e-12;
inline constexpr double kCoincidentTol = 1e-12;
// Angular arcs shorter than this (radians) are dropped.
inline constexpr double kArcTol = 1e-12;

/// Euclidean ball B(center, radius) in R^d. Open/closed is not stored; every
/// routine states which one it uses.
class Ball {
public:
    Ball(std::vector<double> center, double radius)
        : center_(std::move(center)), radius_(radius) {
        if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
            throw std::invalid_argument("Ball: radius must be positive and finite");
        }
        if (center_.empty()) {
            throw std::invalid_argument("Ball: center must have at least one coordinate");
        }
        for (double c : center_) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("Ball: center coordinates must be finite");
            }
        }
    }

    const std::vector<double>& center() const { return center_; }
    double center(std::size_t i) const { return center_[i]; }
    double radius() const { return radius_; }
    std::size_t dimension() const { return center_.size(); }

    // cB: same center, radius scaled by c.
    Ball dilated(double c) const { return Ball(center_, c * radius_); }

    bool operator==(const Ball&) const = default;

private:
    std::vector<double> center_;
    double radius_;
};

inline double center_distance(const Ball& a, const Ball& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        const double t = a.center(i) - b.center(i);
        s += t * t;
    }
    return std::sqrt(s);
}

// Open balls a and b do not meet (up to tangency tolerance).
inline bool disjoint(const Ball& a, const Ball& b) {
    return center_distance(a, b) >= a.radius() + b.radius() - kDisjointTol;
}

inline bool coincident(const Ball& a, const Ball& b) {
    return std::abs(a.radius() - b.radius()) <= kCoincidentTol &&
           center_distance(a, b) <= kCoincidentTol;
}

/// Interval (lo, hi) of the real line, lo < hi.
class Interval {
public:
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo_ < hi_) || !std::isfinite(lo_) || !std::isfinite(hi_)) {
            throw std::invalid_argument("Interval: requires finite lo < hi");
        }
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double length() const { return hi_ - lo_; }
    double midpoint() const { return 0.5 * (lo_ + hi_); }

    // Closures [lo, hi] intersect.
    bool closure_meets(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    // cI: same midpoint, length scaled by c.
    Interval dilated(double c) const {
        const double h = 0.5 * c * length();
        return Interval(midpoint() - h, midpoint() + h);
    }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    bool operator==(const Interval&) const = default;

private:
    double lo_;
    double hi_;
};

inline Interval to_interval(const Ball& b) {
    return Interval(b.center(0) - b.radius(), b.center(0) + b.radius());
}

inline Ball to_ball(const Interval& i) { return Ball({i.midpoint()}, 0.5 * i.length()); }

/// Finite family of balls sharing one dimension.
class BallCollection {
public:
    explicit BallCollection(std::size_t dimension) : dimension_(dimension) {
        if (dimension_ < 1) {
            throw std::invalid_argument("BallCollection: dimension must be >= 1");
        }
    }

    BallCollection(std::size_t dimension, std::vector<Ball> balls) : BallCollection(dimension) {
        balls_.reserve(balls.size());
        for (auto& b : balls) {
            push_back(std::move(b));
        }
    }

    void push_back(Ball b) {
        if (b.dimension() != dimension_) {
            throw std::invalid_argument("BallCollection: ball dimension " +
                                        std::to_string(b.dimension()) + " != " +
                                        std::to_string(dimension_));
        }
        balls_.push_back(std::move(b));
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return balls_.size(); }
    bool empty() const { return balls_.empty(); }
    const Ball& operator[](std::size_t i) const { return balls_[i]; }
    const std::vector<Ball>& balls() const { return balls_; }
    auto begin() const { return balls_.begin(); }
    auto end() const { return balls_.end(); }

    BallCollection subset(const std::vector<std::size_t>& indices) const {
        BallCollection out(dimension_);
        for (std::size_t i : indices) {
            out.push_back(balls_.at(i));
        }
        return out;
    }

    BallCollection scaled(double c) const {
        BallCollection out(dimension_);
        for (const auto& b : balls_) {
            std::vector<double> x = b.center();
            for (double& v : x) {
                v *= c;
            }
            out.push_back(Ball(std::move(x), c * b.radius()));
        }
        return out;
    }

private:
    std::size_t dimension_;
    std::vector<Ball> balls_;
};

enum class Method { exact1d, exact2d, montecarlo };

inline const char* to_string(Method m) {
    switch (m) {
    case Method::exact1d: return "exact1d";
    case Method::exact2d: return "exact2d";
    case Method::montecarlo: return "montecarlo";
    }
    return "unknown";
}

/// A measured perimeter or volume. std_error is zero exactly for exact methods.
struct PerimeterEstimate {
    double value = 0.0;
    double std_error = 0.0;
    Method method = Method::exact2d;
    std::size_t sample_count = 0;
};

}  // namespace ballcover
