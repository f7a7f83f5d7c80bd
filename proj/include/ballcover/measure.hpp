#pragma once

// Volumes and surface areas of balls, hyperspherical caps and lenses
// (pairwise intersections), plus the inverse problems used by the
// counterexample generator.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ballcover/types.hpp"

namespace ballcover {

/// Volume of the unit ball in R^d, pi^{d/2} / Gamma(d/2 + 1). d = 0 gives 1.
inline double unit_ball_volume(std::size_t d) {
    const double h = 0.5 * static_cast<double>(d);
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

inline double ball_volume(double radius, std::size_t d) {
    if (d < 1) {
        throw std::invalid_argument("ball_volume: dimension must be >= 1");
    }
    return unit_ball_volume(d) * std::pow(radius, static_cast<double>(d));
}

inline double ball_volume(const Ball& b) { return ball_volume(b.radius(), b.dimension()); }

/// H^{d-1} of the sphere; for d = 1 the two endpoints count 2.
inline double ball_surface(double radius, std::size_t d) {
    if (d < 1) {
        throw std::invalid_argument("ball_surface: dimension must be >= 1");
    }
    if (d == 1) {
        return 2.0;
    }
    return static_cast<double>(d) * unit_ball_volume(d) *
           std::pow(radius, static_cast<double>(d) - 1.0);
}

inline double ball_surface(const Ball& b) { return ball_surface(b.radius(), b.dimension()); }

namespace detail {

// (u - sin u) / 2 without cancellation for small u.
inline double half_u_minus_sin(double u) {
    if (u < 0.25) {
        const double u2 = u * u;
        // u^3/6 - u^5/120 + u^7/5040 - u^9/362880
        const double s = u * u2 * (1.0 / 6.0 - u2 * (1.0 / 120.0 - u2 * (1.0 / 5040.0 - u2 / 362880.0)));
        return 0.5 * s;
    }
    return 0.5 * (u - std::sin(u));
}

// Polar half-angle of a cap of height h in a ball of radius r.
inline double cap_half_angle(double h, double r) {
    const double s = std::clamp(std::sqrt(0.5 * h / r), 0.0, 1.0);
    return 2.0 * std::asin(s);
}

inline double sin_power_integral(double theta, std::size_t d) {
    if (theta <= 0.0) {
        return 0.0;
    }
    const double p = static_cast<double>(d);
    auto f = [p](double t) { return std::pow(std::sin(t), p); };
    // Shallow depth: at small theta the error estimate has an absolute floor.
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, theta, 3, 1e-14, &err);
}

}  // namespace detail

/// Volume of the cap {x in B(0,r) : x_1 > r - h}, h in [0, 2r].
/// d = 1, 2 closed form; d >= 3 integrates sin^d of the polar angle.
inline double cap_volume(double r, double h, std::size_t d) {
    if (d < 1) {
        throw std::invalid_argument("cap_volume: dimension must be >= 1");
    }
    h = std::clamp(h, 0.0, 2.0 * r);
    if (h == 0.0) {
        return 0.0;
    }
    if (d == 1) {
        return h;
    }
    const double theta = detail::cap_half_angle(h, r);
    if (d == 2) {
        return r * r * detail::half_u_minus_sin(2.0 * theta);
    }
    return unit_ball_volume(d - 1) * std::pow(r, static_cast<double>(d)) *
           detail::sin_power_integral(theta, d);
}

/// Volume of a lens B(0,r1) ∩ B(rho e_1, r2) in R^d as a function of the
/// radii and center distance only.
inline double lens_volume(double r1, double r2, double rho, std::size_t d) {
    if (rho >= r1 + r2) {
        return 0.0;
    }
    if (rho <= std::abs(r1 - r2)) {
        return ball_volume(std::min(r1, r2), d);
    }
    if (d == 1) {
        return r1 + r2 - rho;
    }
    // Cap heights from the radical hyperplane, factored to avoid cancellation.
    const double g = r1 + r2 - rho;
    const double h1 = g * (r2 + rho - r1) / (2.0 * rho);
    const double h2 = g * (r1 + rho - r2) / (2.0 * rho);
    return cap_volume(r1, h1, d) + cap_volume(r2, h2, d);
}

/// Exact λ^d(b1 ∩ b2). Symmetric in its arguments bit for bit.
inline double lens_volume(const Ball& b1, const Ball& b2) {
    if (b1.dimension() != b2.dimension()) {
        throw std::invalid_argument("lens_volume: dimension mismatch");
    }
    const Ball* a = &b1;
    const Ball* b = &b2;
    if (b2.radius() < b1.radius() || (b2.radius() == b1.radius() && b2.center() < b1.center())) {
        std::swap(a, b);
    }
    return lens_volume(a->radius(), b->radius(), center_distance(*a, *b), a->dimension());
}

/// Radius t of the curvature-one parabolic cap {(y, z) : |y| < t,
/// 0 < z < (t^2 - |y|^2)/2} in R^d whose volume is eps_prime * ω_d.
/// The cap volume is ω_{d-1} t^{d+1} / (d+1); solved by bisection.
inline double cap_radius_for_overlap(double eps_prime, std::size_t d) {
    if (!(eps_prime > 0.0 && eps_prime < 0.5)) {
        throw std::invalid_argument("cap_radius_for_overlap: eps_prime must lie in (0, 1/2)");
    }
    if (d < 1) {
        throw std::invalid_argument("cap_radius_for_overlap: dimension must be >= 1");
    }
    const double coef = unit_ball_volume(d - 1) / static_cast<double>(d + 1);
    const double target = eps_prime * unit_ball_volume(d);
    const double p = static_cast<double>(d + 1);
    auto vol = [&](double t) { return coef * std::pow(t, p); };
    double lo = 0.0;
    double hi = 1.0;
    while (vol(hi) < target) {
        hi *= 2.0;
    }
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (vol(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Center distance rho in (r_big - r_small, r_big + r_small) at which the
/// lens of B(., r_small) and B(., r_big) holds eps of the small ball's volume.
inline double center_distance_for_overlap(double r_small, double r_big, double eps, std::size_t d) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw std::invalid_argument("center_distance_for_overlap: eps must lie in (0, 1/2)");
    }
    if (!(r_small > 0.0 && r_small <= r_big)) {
        throw std::invalid_argument("center_distance_for_overlap: need 0 < r_small <= r_big");
    }
    const double target = eps * ball_volume(r_small, d);
    // Parametrize rho = r_big - r_small + 2 r_small s so the bisection resolves
    // the small scale, not the ulp of rho.
    const double base = r_big - r_small;
    const double span = 2.0 * r_small;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lens_volume(r_small, r_big, base + span * mid, d) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double rho = base + span * 0.5 * (lo + hi);
    if (!(rho > base && rho < r_big + r_small)) {
        throw std::domain_error("center_distance_for_overlap: no solution in range");
    }
    return rho;
}

struct HalfspaceCut {
    double vol_in = 0.0;      // part with x_1 > center_1 + offset
    double vol_out = 0.0;     // part with x_1 < center_1 + offset
    double slice_area = 0.0;  // H^{d-1} of the cross-section
};

/// Data of a ball cut by the hyperplane {x_1 = center_1 + offset}.
inline HalfspaceCut halfspace_cut_data(const Ball& b, double offset) {
    const double r = b.radius();
    if (!(std::abs(offset) < r)) {
        throw std::invalid_argument("halfspace_cut_data: offset must lie in (-r, r)");
    }
    const std::size_t d = b.dimension();
    HalfspaceCut out;
    out.vol_in = cap_volume(r, r - offset, d);
    out.vol_out = cap_volume(r, r + offset, d);
    const double chord2 = (r - offset) * (r + offset);
    out.slice_area = unit_ball_volume(d - 1) * std::pow(chord2, 0.5 * (static_cast<double>(d) - 1.0));
    return out;
}

}  // namespace ballcover
