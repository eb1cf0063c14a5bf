#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "calibgeo/builder.hpp"
#include "calibgeo/calibration.hpp"
#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"

namespace calibgeo {

// A named calibration instance: the pair, a reference geodesic lying on a
// level curve of g, its endpoints, and (when available) the closed-form
// weighted length of the reference geodesic.
struct CatalogEntry {
    std::string name;
    CalibrationPair pair;
    Curve minimizer;
    std::pair<Point2, Point2> default_endpoints;
    std::optional<double> oracle_length;
    std::string notes;
};

namespace detail {

inline Domain box_domain(BBox b, double margin) {
    return make_domain(
        [b](Point2 p) {
            return p.x > b.xmin && p.x < b.xmax && p.y > b.ymin && p.y < b.ymax;
        },
        b, margin);
}

inline CatalogEntry make_astroid() {
    CatalogEntry e;
    e.name = "astroid";
    e.notes = "density sqrt(x^(2/3)+y^(2/3)) on the open quadrant; the unit "
              "astroid x^(2/3)+y^(2/3)=1 is the geodesic";
    e.pair.domain = box_domain({0.0, 1.5, 0.0, 1.5}, 2e-3);
    e.pair.f.value = [](Point2 p) {
        return 0.75 * (p.x * std::cbrt(p.x) - p.y * std::cbrt(p.y));
    };
    e.pair.f.gradient = [](Point2 p) -> Vec2 { return {std::cbrt(p.x), -std::cbrt(p.y)}; };
    e.pair.g.value = [](Point2 p) {
        const double cx = std::cbrt(p.x), cy = std::cbrt(p.y);
        return cx * cx + cy * cy;
    };
    e.pair.g.gradient = [](Point2 p) -> Vec2 {
        return {2.0 / (3.0 * std::cbrt(p.x)), 2.0 / (3.0 * std::cbrt(p.y))};
    };
    e.pair.rho.value = [](Point2 p) {
        const double cx = std::cbrt(p.x), cy = std::cbrt(p.y);
        return std::sqrt(cx * cx + cy * cy);
    };
    e.pair.rho.gradient = [](Point2 p) -> Vec2 {
        const double cx = std::cbrt(p.x), cy = std::cbrt(p.y);
        const double r = std::sqrt(cx * cx + cy * cy);
        return {1.0 / (3.0 * cx * r), 1.0 / (3.0 * cy * r)};
    };
    auto map = [](double t) -> Point2 {
        const double c = std::cos(t), s = std::sin(t);
        return {c * c * c, s * s * s};
    };
    e.minimizer = Parametric{map, M_PI / 6.0, M_PI / 3.0};
    e.default_endpoints = {map(M_PI / 6.0), map(M_PI / 3.0)};
    e.oracle_length = 0.75; // (3/2)(sin^2 t1 - sin^2 t0) on the unit astroid
    return e;
}

inline CatalogEntry make_power() {
    CatalogEntry e;
    e.name = "power";
    e.notes = "power-density family sqrt(x^2p + y^2q) with p=1, q=2; level "
              "curve of ln x - 1/y through (1,1)";
    e.pair = power_density_pair(1.0, 2.0, box_domain({0.1, 2.0, 0.1, 2.0}, 2e-3));
    auto map = [](double y) -> Point2 { return {std::exp(1.0 / y - 1.0), y}; };
    e.minimizer = Parametric{map, 0.8, 1.25};
    e.default_endpoints = {map(0.8), map(1.25)};
    // |delta f| with f = x^2/2 - y^3/3 on x = exp(1/y - 1).
    auto f_on_curve = [](double y) {
        const double x = std::exp(1.0 / y - 1.0);
        return x * x / 2.0 - y * y * y / 3.0;
    };
    e.oracle_length = std::abs(f_on_curve(1.25) - f_on_curve(0.8));
    return e;
}

inline CatalogEntry make_brachistochrone() {
    CatalogEntry e;
    e.name = "brachistochrone";
    e.notes = "density 1/sqrt(-y) in the strip -2 < y < 0; the unit cycloid "
              "(t - sin t, cos t - 1) is the geodesic";
    e.pair.domain = box_domain({-0.5, M_PI + 0.5, -2.0, 0.0}, 2e-3);
    e.pair.g.value = [](Point2 p) {
        const double w = std::max(-p.y * (2.0 + p.y), 0.0);
        return p.x - std::acos(std::clamp(1.0 + p.y, -1.0, 1.0)) + std::sqrt(w);
    };
    e.pair.g.gradient = [](Point2 p) -> Vec2 {
        return {1.0, std::sqrt(std::max(-p.y / (2.0 + p.y), 0.0))};
    };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    e.pair.f.value = [inv_sqrt2](Point2 p) {
        const double w = std::max(-p.y * (2.0 + p.y), 0.0);
        return inv_sqrt2 * (-p.x + std::asin(std::clamp(1.0 + p.y, -1.0, 1.0)) - std::sqrt(w));
    };
    e.pair.f.gradient = [inv_sqrt2](Point2 p) -> Vec2 {
        return {-inv_sqrt2, std::sqrt(std::max((2.0 + p.y) / (-2.0 * p.y), 0.0))};
    };
    e.pair.rho.value = [](Point2 p) { return 1.0 / std::sqrt(-p.y); };
    e.pair.rho.gradient = [](Point2 p) -> Vec2 {
        return {0.0, 0.5 * std::pow(-p.y, -1.5)};
    };
    auto map = [](double t) -> Point2 { return {t - std::sin(t), std::cos(t) - 1.0}; };
    e.minimizer = Parametric{map, 0.1, M_PI - 0.1};
    e.default_endpoints = {map(0.1), map(M_PI - 0.1)};
    e.oracle_length = std::sqrt(2.0) * (M_PI - 0.2); // integrand is constant sqrt(2) in t
    return e;
}

// Conic family: density sqrt(eps^2 + 1/y^2) in the upper half-plane. With
// k = 1 - eps^2 and u = sqrt(1 - k y^2):
//   g = k (x - x0) - u,   f = -x + u - (k > 0 ? atanh(u) : atanh(1/u)),
// the real antiderivative branch switching at eps = 1 (u >= 1 there).
inline CalibrationPair conic_pair(double eps, double x0, BBox bbox, double margin) {
    const double k = 1.0 - eps * eps;
    CalibrationPair pair;
    pair.domain = box_domain(bbox, margin);
    auto u_of = [k](double y) { return std::sqrt(std::max(1.0 - k * y * y, 0.0)); };
    pair.g.value = [k, x0, u_of](Point2 p) { return k * (p.x - x0) - u_of(p.y); };
    pair.g.gradient = [k, u_of](Point2 p) -> Vec2 {
        return {k, k * p.y / u_of(p.y)};
    };
    pair.f.value = [k, u_of](Point2 p) {
        const double u = u_of(p.y);
        const double anti = k > 0.0 ? std::atanh(u) : std::atanh(1.0 / u);
        return -p.x + u - anti;
    };
    pair.f.gradient = [u_of](Point2 p) -> Vec2 { return {-1.0, u_of(p.y) / p.y}; };
    pair.rho.value = [eps](Point2 p) { return std::sqrt(eps * eps + 1.0 / (p.y * p.y)); };
    pair.rho.gradient = [eps](Point2 p) -> Vec2 {
        const double r = std::sqrt(eps * eps + 1.0 / (p.y * p.y));
        return {0.0, -1.0 / (p.y * p.y * p.y * r)};
    };
    return pair;
}

inline CatalogEntry make_conic_eps0() {
    CatalogEntry e;
    e.name = "conic-eps-0";
    e.notes = "hyperbolic half-plane density 1/y; geodesics are circles "
              "centered on the x-axis (here the unit circle). Focus form of "
              "the family: 1 - eps*x = sqrt(x^2 + y^2), translated by "
              "eps/(1 - eps^2) for eps != 1";
    e.pair = conic_pair(0.0, 0.0, {-1.5, 1.5, 0.0, 1.0}, 3e-3);
    auto map = [](double t) -> Point2 { return {std::cos(t), std::sin(t)}; };
    e.minimizer = Parametric{map, M_PI / 6.0, M_PI / 3.0};
    e.default_endpoints = {map(M_PI / 6.0), map(M_PI / 3.0)};
    // Hyperbolic distance arccosh(1 + d^2 / (2 y1 y2)).
    const Point2 a = e.default_endpoints.first;
    const Point2 b = e.default_endpoints.second;
    e.oracle_length = std::acosh(1.0 + (b - a).norm_sq() / (2.0 * a.y * b.y));
    return e;
}

inline CatalogEntry make_conic_ellipse() {
    CatalogEntry e;
    const double eps = 0.5;
    const double k = 1.0 - eps * eps;
    e.name = "conic-ellipse";
    e.notes = "density sqrt(1/4 + 1/y^2); geodesic arc of the ellipse "
              "(9/16) x^2 + (3/4) y^2 = 1 in the strip 0 < y < 2/sqrt(3)";
    e.pair = conic_pair(eps, 0.0, {-0.5, 2.0, 0.0, 1.0 / std::sqrt(k)}, 3e-3);
    auto map = [k](double y) -> Point2 { return {std::sqrt(1.0 - k * y * y) / k, y}; };
    e.minimizer = Parametric{map, 0.3, 1.0};
    e.default_endpoints = {map(0.3), map(1.0)};
    auto f_on_curve = [k](double y) {
        const double u = std::sqrt(1.0 - k * y * y);
        return -u / k + u - std::atanh(u);
    };
    e.oracle_length = std::abs(f_on_curve(1.0) - f_on_curve(0.3));
    return e;
}

inline CatalogEntry make_conic_parabola() {
    CatalogEntry e;
    e.name = "conic-parabola";
    e.notes = "density sqrt(1 + 1/y^2); geodesic arc of the parabola "
              "x = -y^2/2 in the upper half-plane";
    e.pair.domain = box_domain({-2.5, 1.0, 0.0, 2.5}, 3e-3);
    e.pair.g.value = [](Point2 p) { return p.x + 0.5 * p.y * p.y; };
    e.pair.g.gradient = [](Point2 p) -> Vec2 { return {1.0, p.y}; };
    e.pair.f.value = [](Point2 p) { return -p.x + std::log(p.y); };
    e.pair.f.gradient = [](Point2 p) -> Vec2 { return {-1.0, 1.0 / p.y}; };
    e.pair.rho.value = [](Point2 p) { return std::sqrt(1.0 + 1.0 / (p.y * p.y)); };
    e.pair.rho.gradient = [](Point2 p) -> Vec2 {
        const double r = std::sqrt(1.0 + 1.0 / (p.y * p.y));
        return {0.0, -1.0 / (p.y * p.y * p.y * r)};
    };
    auto map = [](double y) -> Point2 { return {-0.5 * y * y, y}; };
    e.minimizer = Parametric{map, 0.5, 1.5};
    e.default_endpoints = {map(0.5), map(1.5)};
    // integral of (1 + y^2)/y dy = y^2/2 + ln y.
    e.oracle_length = (1.5 * 1.5 - 0.5 * 0.5) / 2.0 + std::log(3.0);
    return e;
}

inline CatalogEntry make_conic_hyperbola() {
    CatalogEntry e;
    const double eps = 2.0;
    e.name = "conic-hyperbola";
    e.notes = "density sqrt(4 + 1/y^2); geodesic on the branch x = "
              "-sqrt(1 + 3 y^2)/3 of the hyperbola 9 x^2 - 3 y^2 = 1";
    e.pair = conic_pair(eps, 0.0, {-2.5, 1.0, 0.0, 2.5}, 3e-3);
    auto map = [](double y) -> Point2 { return {-std::sqrt(1.0 + 3.0 * y * y) / 3.0, y}; };
    e.minimizer = Parametric{map, 0.3, 1.5};
    e.default_endpoints = {map(0.3), map(1.5)};
    auto f_on_curve = [](double y) {
        const double u = std::sqrt(1.0 + 3.0 * y * y);
        return (4.0 / 3.0) * u - std::atanh(1.0 / u);
    };
    e.oracle_length = std::abs(f_on_curve(1.5) - f_on_curve(0.3));
    return e;
}

inline CatalogEntry make_grim_reaper() {
    CatalogEntry e;
    e.name = "grim-reaper";
    e.notes = "density e^y; geodesic is the grim reaper y = -ln(cos x), the "
              "translating soliton of curve-shortening flow";
    e.pair.domain = box_domain({0.0, M_PI / 2.0, 0.0, 1.0}, 2e-3);
    e.pair.g.value = [](Point2 p) {
        return p.x - std::acos(std::clamp(std::exp(-p.y), -1.0, 1.0));
    };
    e.pair.g.gradient = [](Point2 p) -> Vec2 {
        return {1.0, -1.0 / std::sqrt(std::max(std::exp(2.0 * p.y) - 1.0, 1e-300))};
    };
    e.pair.f.value = [](Point2 p) {
        const double w = std::sqrt(std::max(std::exp(2.0 * p.y) - 1.0, 0.0));
        return p.x + w - std::acos(std::clamp(std::exp(-p.y), -1.0, 1.0));
    };
    e.pair.f.gradient = [](Point2 p) -> Vec2 {
        return {1.0, std::sqrt(std::max(std::exp(2.0 * p.y) - 1.0, 0.0))};
    };
    e.pair.rho.value = [](Point2 p) { return std::exp(p.y); };
    e.pair.rho.gradient = [](Point2 p) -> Vec2 { return {0.0, std::exp(p.y)}; };
    auto map = [](double t) -> Point2 { return {t, -std::log(std::cos(t))}; };
    e.minimizer = Parametric{map, 0.1, M_PI / 4.0};
    e.default_endpoints = {map(0.1), map(M_PI / 4.0)};
    e.oracle_length = 1.0 - std::tan(0.1); // integral of sec^2 x dx
    return e;
}

inline CatalogEntry make_log_spiral() {
    CatalogEntry e;
    e.name = "log-spiral";
    e.notes = "radial density 1/r from the holomorphic ln(r) + i theta "
              "rotated by alpha = pi/4; geodesic is the spiral r = e^{-theta}";
    HolomorphicSpec spec;
    spec.p.value = [](Point2 pt) { return 0.5 * std::log(pt.x * pt.x + pt.y * pt.y); };
    spec.p.gradient = [](Point2 pt) -> Vec2 {
        const double r2 = pt.x * pt.x + pt.y * pt.y;
        return {pt.x / r2, pt.y / r2};
    };
    spec.q.value = [](Point2 pt) { return std::atan2(pt.y, pt.x); };
    spec.q.gradient = [](Point2 pt) -> Vec2 {
        const double r2 = pt.x * pt.x + pt.y * pt.y;
        return {-pt.y / r2, pt.x / r2};
    };
    spec.alpha = M_PI / 4.0;
    // Annular sector keeping theta = atan2 single-valued away from the cut.
    Domain domain = make_domain(
        [](Point2 pt) {
            const double r = std::sqrt(pt.x * pt.x + pt.y * pt.y);
            return r > 0.2 && r < 5.0 && std::abs(std::atan2(pt.y, pt.x)) < M_PI - 0.2;
        },
        {-5.0, 5.0, -5.0, 5.0}, 2e-3);
    e.pair = build_harmonic_pair(spec, domain);
    // Declared density in closed form (the builder's |grad p| agrees).
    e.pair.rho.value = [](Point2 pt) { return 1.0 / std::sqrt(pt.x * pt.x + pt.y * pt.y); };
    e.pair.rho.gradient = [](Point2 pt) -> Vec2 {
        const double r = std::sqrt(pt.x * pt.x + pt.y * pt.y);
        return {-pt.x / (r * r * r), -pt.y / (r * r * r)};
    };
    auto map = [](double th) -> Point2 {
        const double r = std::exp(-th);
        return {r * std::cos(th), r * std::sin(th)};
    };
    e.minimizer = Parametric{map, -1.0, 1.0};
    e.default_endpoints = {map(-1.0), map(1.0)};
    e.oracle_length = 2.0 * std::sqrt(2.0); // sqrt(1 + lambda^2) * delta theta
    return e;
}

} // namespace detail

// All worked examples, in catalog order. Entries are immutable after first
// construction and safe to share across threads.
inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        v.push_back(detail::make_astroid());
        v.push_back(detail::make_power());
        v.push_back(detail::make_brachistochrone());
        v.push_back(detail::make_conic_eps0());
        v.push_back(detail::make_conic_ellipse());
        v.push_back(detail::make_conic_parabola());
        v.push_back(detail::make_conic_hyperbola());
        v.push_back(detail::make_grim_reaper());
        v.push_back(detail::make_log_spiral());
        return v;
    }();
    return entries;
}

inline std::string catalog_names_joined() {
    std::string names;
    for (const auto& e : catalog_entries()) {
        if (!names.empty()) names += ", ";
        names += e.name;
    }
    return names;
}

// Exact, case-sensitive lookup.
inline const CatalogEntry& entry_by_name(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return e;
    throw UnknownEntry("unknown catalog entry '" + name + "'; valid names: " + catalog_names_joined());
}

} // namespace calibgeo
