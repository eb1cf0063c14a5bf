#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <variant>

#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"

namespace calibgeo {
namespace detail {

// 5-point Gauss-Legendre nodes/weights on [-1, 1] (degree of exactness 9).
inline constexpr double kGauss5Nodes[5] = {
    -0.9061798459386639928, -0.5384693101056830910, 0.0,
    0.5384693101056830910, 0.9061798459386639928};
inline constexpr double kGauss5Weights[5] = {
    0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
    0.4786286704993664680, 0.2369268850561890875};

template <typename F>
double gauss5(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) sum += kGauss5Weights[i] * f(mid + half * kGauss5Nodes[i]);
    return half * sum;
}

inline constexpr int kMaxAdaptiveDepth = 48;

template <typename F>
double adaptive_gauss5(const F& f, double a, double b, double abs_tol, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss5(f, a, mid);
    const double right = gauss5(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= abs_tol || b - a <= std::abs(mid) * 1e-15) return left + right;
    if (depth <= 0) throw NoConvergence("adaptive quadrature depth exceeded");
    return adaptive_gauss5(f, a, mid, 0.5 * abs_tol, left, depth - 1) +
           adaptive_gauss5(f, mid, b, 0.5 * abs_tol, right, depth - 1);
}

} // namespace detail

// Adaptive bisection with 5-point Gauss-Legendre panels, absolute tolerance.
template <typename F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    const double whole = detail::gauss5(f, a, b);
    return detail::adaptive_gauss5(f, a, b, abs_tol, whole, detail::kMaxAdaptiveDepth);
}

namespace detail {

inline double density_at(const ScalarField& rho, Point2 p) {
    const double r = rho(p);
    if (!std::isfinite(r) || r <= 0.0)
        throw SingularDensity("density not finite and positive on the curve");
    return r;
}

} // namespace detail

// Weighted length  integral of rho ds  along the curve, converged to the
// requested relative tolerance. Parametric curves use finite-difference
// velocities in t; polylines integrate the density along each straight
// segment.
inline double weighted_length(const Curve& curve, const ScalarField& rho, double rel_tol = 1e-9) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-2)
        throw std::invalid_argument("rel_tol must lie in (0, 1e-2]");

    if (const auto* par = std::get_if<Parametric>(&curve)) {
        auto integrand = [&](double t) {
            return detail::density_at(rho, par->map(t)) * parametric_velocity(*par, t).norm();
        };
        // Length is orientation-independent; allow decreasing parametrizations.
        const double lo = std::min(par->t0, par->t1);
        const double hi = std::max(par->t0, par->t1);
        const double rough = std::abs(detail::gauss5(integrand, lo, hi));
        const double abs_tol = rel_tol * std::max(rough, 1e-300);
        return integrate_adaptive(integrand, lo, hi, abs_tol);
    }

    const auto& pts = std::get<Polyline>(curve).points;
    // First pass: one Gauss panel per segment to size the error budget.
    double rough = 0.0;
    std::vector<double> seg_rough(pts.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point2 a = pts[i];
        const Vec2 d = pts[i + 1] - a;
        const double len = d.norm();
        auto integrand = [&](double u) {
            return detail::density_at(rho, {a.x + u * d.dx, a.y + u * d.dy}) * len;
        };
        seg_rough[i] = detail::gauss5(integrand, 0.0, 1.0);
        rough += seg_rough[i];
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point2 a = pts[i];
        const Vec2 d = pts[i + 1] - a;
        const double len = d.norm();
        auto integrand = [&](double u) {
            return detail::density_at(rho, {a.x + u * d.dx, a.y + u * d.dy}) * len;
        };
        const double abs_tol = rel_tol * std::max(std::abs(seg_rough[i]), 1e-3 * rough / static_cast<double>(pts.size()));
        total += detail::adaptive_gauss5(integrand, 0.0, 1.0, std::max(abs_tol, 1e-300), seg_rough[i],
                                         detail::kMaxAdaptiveDepth);
    }
    return total;
}

} // namespace calibgeo
