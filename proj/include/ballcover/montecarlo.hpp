#pragma once

// Monte Carlo estimators for perimeter and volume of unions of balls in any
// dimension. Each ball (or volume chunk) draws from its own substream of the
// seed, so results are bit-identical for any number of worker threads.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "ballcover/arcs.hpp"
#include "ballcover/measure.hpp"
#include "ballcover/parallel.hpp"
#include "ballcover/types.hpp"
#include "ballcover/union1d.hpp"

namespace ballcover {

namespace detail {

inline constexpr std::uint32_t kSphereTag = 0x5ba11u;
inline constexpr std::uint32_t kVolumeTag = 0x701u;
inline constexpr std::size_t kVolumeChunk = 1u << 16;

struct Tally {
    double value = 0.0;
    double variance = 0.0;
};

}  // namespace detail

/// σ(∂*⋃B) by uniform sampling of every distinct sphere.
inline PerimeterEstimate union_perimeter_mc(const BallCollection& balls, std::size_t samples_per_ball,
                                            std::uint64_t seed, std::size_t jobs = 1) {
    if (samples_per_ball < 100) {
        throw std::invalid_argument("union_perimeter_mc: samples_per_ball must be >= 100");
    }
    const std::size_t d = balls.dimension();
    const auto keep = distinct_ball_indices(balls);
    std::vector<detail::Tally> per(keep.size());

    parallel_for(keep.size(), jobs, [&](std::size_t k) {
        const std::size_t i = keep[k];
        const Ball& b = balls[i];
        std::vector<std::size_t> near;
        for (std::size_t j : keep) {
            if (j != i && center_distance(b, balls[j]) < b.radius() + balls[j].radius()) {
                near.push_back(j);
            }
        }
        std::size_t outside = 0;
        if (near.empty()) {
            outside = samples_per_ball;
        } else {
            auto rng = substream(seed, i, detail::kSphereTag);
            std::normal_distribution<double> normal(0.0, 1.0);
            std::vector<double> p(d);
            for (std::size_t s = 0; s < samples_per_ball; ++s) {
                double norm2 = 0.0;
                do {
                    norm2 = 0.0;
                    for (std::size_t c = 0; c < d; ++c) {
                        p[c] = normal(rng);
                        norm2 += p[c] * p[c];
                    }
                } while (norm2 == 0.0);
                const double scale = b.radius() / std::sqrt(norm2);
                for (std::size_t c = 0; c < d; ++c) {
                    p[c] = b.center(c) + scale * p[c];
                }
                bool covered = false;
                for (std::size_t j : near) {
                    const Ball& o = balls[j];
                    double dist2 = 0.0;
                    for (std::size_t c = 0; c < d; ++c) {
                        const double t = p[c] - o.center(c);
                        dist2 += t * t;
                    }
                    if (dist2 < o.radius() * o.radius()) {
                        covered = true;
                        break;
                    }
                }
                outside += covered ? 0 : 1;
            }
        }
        const double n = static_cast<double>(samples_per_ball);
        const double frac = static_cast<double>(outside) / n;
        const double area = ball_surface(b);
        per[k] = {area * frac, area * area * frac * (1.0 - frac) / n};
    });

    PerimeterEstimate e;
    e.method = Method::montecarlo;
    e.sample_count = samples_per_ball * keep.size();
    double var = 0.0;
    for (const auto& t : per) {
        e.value += t.value;
        var += t.variance;
    }
    e.std_error = std::sqrt(var);
    return e;
}

/// λ(⋃B) by rejection sampling in the bounding box; exact for d = 1.
inline PerimeterEstimate union_volume_mc(const BallCollection& balls, std::size_t samples,
                                         std::uint64_t seed, std::size_t jobs = 1) {
    if (balls.empty()) {
        throw std::invalid_argument("union_volume_mc: empty collection");
    }
    if (samples < 1000) {
        throw std::invalid_argument("union_volume_mc: samples must be >= 1000");
    }
    const std::size_t d = balls.dimension();
    if (d == 1) {
        PerimeterEstimate e;
        e.method = Method::exact1d;
        e.value = union_measure_1d(intervals_of(balls));
        return e;
    }
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const auto& b : balls) {
        for (std::size_t c = 0; c < d; ++c) {
            lo[c] = std::min(lo[c], b.center(c) - b.radius());
            hi[c] = std::max(hi[c], b.center(c) + b.radius());
        }
    }
    double box = 1.0;
    for (std::size_t c = 0; c < d; ++c) {
        box *= hi[c] - lo[c];
    }
    const std::size_t chunks = (samples + detail::kVolumeChunk - 1) / detail::kVolumeChunk;
    std::vector<std::size_t> hits(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t k) {
        const std::size_t begin = k * detail::kVolumeChunk;
        const std::size_t count = std::min(samples, begin + detail::kVolumeChunk) - begin;
        auto rng = substream(seed, k, detail::kVolumeTag);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> p(d);
        std::size_t in = 0;
        for (std::size_t s = 0; s < count; ++s) {
            for (std::size_t c = 0; c < d; ++c) {
                p[c] = lo[c] + (hi[c] - lo[c]) * unit(rng);
            }
            for (const auto& b : balls) {
                double dist2 = 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    const double t = p[c] - b.center(c);
                    dist2 += t * t;
                }
                if (dist2 < b.radius() * b.radius()) {
                    ++in;
                    break;
                }
            }
        }
        hits[k] = in;
    });
    std::size_t total = 0;
    for (std::size_t h : hits) {
        total += h;
    }
    const double n = static_cast<double>(samples);
    const double frac = static_cast<double>(total) / n;
    PerimeterEstimate e;
    e.method = Method::montecarlo;
    e.value = box * frac;
    e.std_error = box * std::sqrt(frac * (1.0 - frac) / n);
    e.sample_count = samples;
    return e;
}

}  // namespace ballcover
