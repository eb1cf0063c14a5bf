#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "calibgeo/errors.hpp"

namespace calibgeo {

struct Vec2 {
    double dx = 0.0;
    double dy = 0.0;

    double norm() const { return std::sqrt(dx * dx + dy * dy); }
    double norm_sq() const { return dx * dx + dy * dy; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.dx + b.dx, a.dy + b.dy}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.dx - b.dx, a.dy - b.dy}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.dx, s * v.dy}; }
inline Vec2 operator*(Vec2 v, double s) { return s * v; }
inline double dot(Vec2 a, Vec2 b) { return a.dx * b.dx + a.dy * b.dy; }

// Rotation by +90 degrees.
inline Vec2 perp(Vec2 v) { return {-v.dy, v.dx}; }

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.dx, p.y + v.dy}; }
inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool finite(Vec2 v) { return std::isfinite(v.dx) && std::isfinite(v.dy); }

struct BBox {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diagonal() const { return std::sqrt(width() * width() + height() * height()); }
    bool contains(Point2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

// Open planar region given by a membership predicate plus a bounding box.
// `margin` is the boundary standoff: sampling, competitor generation and
// tracing only accept points whose axis-aligned `margin`-neighbours are
// still inside, which keeps every field evaluation away from singular
// boundaries (e.g. 1/sqrt(-y) at y -> 0).
struct Domain {
    std::function<bool(Point2)> contains;
    BBox bbox;
    double margin = 0.0;

    bool interior(Point2 p) const {
        if (!finite(p) || !contains(p)) return false;
        return contains({p.x - margin, p.y}) && contains({p.x + margin, p.y}) &&
               contains({p.x, p.y - margin}) && contains({p.x, p.y + margin});
    }
};

inline Domain make_domain(std::function<bool(Point2)> contains, BBox bbox, double margin = -1.0) {
    Domain d;
    d.contains = std::move(contains);
    d.bbox = bbox;
    d.margin = margin > 0.0 ? margin : 1e-6 * bbox.diagonal();
    return d;
}

// Evaluatable real function on the plane. The analytic gradient is optional;
// grad() falls back to central differences with a per-axis relative step.
struct ScalarField {
    std::function<double(Point2)> value;
    std::function<Vec2(Point2)> gradient; // may be empty
    double fd_step = 1e-5;

    double operator()(Point2 p) const { return value(p); }
};

inline Vec2 grad(const ScalarField& field, Point2 p) {
    if (field.gradient) {
        Vec2 g = field.gradient(p);
        if (!finite(g)) throw NonFiniteValue("analytic gradient is not finite");
        return g;
    }
    const double hx = field.fd_step * std::max(1.0, std::abs(p.x));
    const double hy = field.fd_step * std::max(1.0, std::abs(p.y));
    const double fxp = field.value({p.x + hx, p.y});
    const double fxm = field.value({p.x - hx, p.y});
    const double fyp = field.value({p.x, p.y + hy});
    const double fym = field.value({p.x, p.y - hy});
    if (!std::isfinite(fxp) || !std::isfinite(fxm) || !std::isfinite(fyp) || !std::isfinite(fym))
        throw NonFiniteValue("field not finite at finite-difference stencil");
    return {(fxp - fxm) / (2.0 * hx), (fyp - fym) / (2.0 * hy)};
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

struct Parametric {
    std::function<Point2(double)> map;
    double t0 = 0.0;
    double t1 = 1.0;
};

struct Polyline {
    std::vector<Point2> points;
};

using Curve = std::variant<Parametric, Polyline>;

inline Polyline make_polyline(std::vector<Point2> points) {
    if (points.size() < 2) throw DegenerateCurve("polyline needs at least 2 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!finite(points[i])) throw NonFiniteValue("polyline vertex is not finite");
        if (i > 0 && points[i].x == points[i - 1].x && points[i].y == points[i - 1].y)
            throw DegenerateCurve("polyline has two consecutive identical points");
    }
    return Polyline{std::move(points)};
}

inline Point2 curve_start(const Curve& c) {
    if (const auto* par = std::get_if<Parametric>(&c)) return par->map(par->t0);
    return std::get<Polyline>(c).points.front();
}

inline Point2 curve_end(const Curve& c) {
    if (const auto* par = std::get_if<Parametric>(&c)) return par->map(par->t1);
    return std::get<Polyline>(c).points.back();
}

// dX/dt by central differences, step (t1-t0)*1e-6, clamped into [t0,t1].
inline Vec2 parametric_velocity(const Parametric& par, double t) {
    const double h = (par.t1 - par.t0) * 1e-6;
    const double tf = std::min(t + h, std::max(par.t0, par.t1));
    const double tb = std::max(t - h, std::min(par.t0, par.t1));
    const Point2 pf = par.map(tf);
    const Point2 pb = par.map(tb);
    if (!finite(pf) || !finite(pb)) throw NonFiniteValue("parametric map not finite");
    const double denom = tf - tb;
    return {(pf.x - pb.x) / denom, (pf.y - pb.y) / denom};
}

// n points along the curve: uniform parameter for Parametric, vertices for
// Polyline (resampled uniformly by vertex index when counts differ).
inline std::vector<Point2> sample_curve(const Curve& c, int n) {
    if (n < 2) n = 2;
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(n));
    if (const auto* par = std::get_if<Parametric>(&c)) {
        for (int i = 0; i < n; ++i) {
            const double t = par->t0 + (par->t1 - par->t0) * static_cast<double>(i) / (n - 1);
            out.push_back(par->map(t));
        }
        return out;
    }
    const auto& pts = std::get<Polyline>(c).points;
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1) * static_cast<double>(pts.size() - 1);
        const auto k = static_cast<std::size_t>(std::min<double>(u, static_cast<double>(pts.size() - 2)));
        const double frac = u - static_cast<double>(k);
        const Point2 a = pts[k];
        const Point2 b = pts[k + 1];
        out.push_back({a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)});
    }
    return out;
}

// f(end) - f(start). Path independence of the increment is the whole point:
// the value only depends on the curve's endpoints.
inline double exact_increment(const ScalarField& f, const Curve& curve) {
    const double fa = f(curve_start(curve));
    const double fb = f(curve_end(curve));
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NonFiniteValue("field not finite at a curve endpoint");
    return fb - fa;
}

namespace detail {

// Fine chordal arc-length table of a curve; used for arc-length resampling.
inline std::pair<std::vector<Point2>, std::vector<double>> arclength_table(const Curve& c, int table_size) {
    std::vector<Point2> pts;
    if (const auto* poly = std::get_if<Polyline>(&c)) {
        pts = poly->points;
    } else {
        pts = sample_curve(c, table_size);
    }
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
    return {std::move(pts), std::move(cum)};
}

} // namespace detail

// n points approximately equally spaced in Euclidean arc length, preserving
// the curve's endpoints exactly.
inline Polyline resample_arclength(const Curve& curve, int n) {
    if (n < 2) throw DegenerateCurve("resample_arclength needs n >= 2");
    const int table_size = std::max(4096, 16 * n);
    auto [pts, cum] = detail::arclength_table(curve, table_size);
    const double total = cum.back();
    if (total <= 0.0) throw DegenerateCurve("curve has zero Euclidean length");

    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(n));
    out.push_back(pts.front());
    std::size_t k = 0;
    for (int i = 1; i < n - 1; ++i) {
        const double target = total * static_cast<double>(i) / (n - 1);
        while (k + 2 < cum.size() && cum[k + 1] < target) ++k;
        const double seg = cum[k + 1] - cum[k];
        const double frac = seg > 0.0 ? (target - cum[k]) / seg : 0.0;
        const Point2 a = pts[k];
        const Point2 b = pts[k + 1];
        out.push_back({a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)});
    }
    out.push_back(pts.back());
    return make_polyline(std::move(out));
}

// ---------------------------------------------------------------------------
// Distances between curves (test/diagnostic helpers)
// ---------------------------------------------------------------------------

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Vec2 ab = b - a;
    const double len_sq = ab.norm_sq();
    if (len_sq == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, {a.x + t * ab.dx, a.y + t * ab.dy});
}

inline double point_polyline_distance(Point2 p, const Polyline& poly) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < poly.points.size(); ++i)
        best = std::min(best, point_segment_distance(p, poly.points[i], poly.points[i + 1]));
    return best;
}

inline double hausdorff_distance(const Polyline& a, const Polyline& b) {
    double d = 0.0;
    for (const Point2& p : a.points) d = std::max(d, point_polyline_distance(p, b));
    for (const Point2& p : b.points) d = std::max(d, point_polyline_distance(p, a));
    return d;
}

} // namespace calibgeo
