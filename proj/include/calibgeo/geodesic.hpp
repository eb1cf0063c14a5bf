#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"

namespace calibgeo {

struct TraceConfig {
    double step = 1e-3;           // Euclidean arc-length predictor step
    int max_steps = 200000;
    double corrector_tol = 1e-10; // absolute tolerance on |g - g(start)|
    std::function<bool(Point2)> stop; // e.g. "left the domain"; may be empty
};

namespace detail {

// Newton projection back onto {g = target} along grad g, with 0.5 damping
// on overshoot. At most 20 iterations.
inline Point2 correct_to_level(const ScalarField& g, Point2 p, double target, double tol) {
    double res = g(p) - target;
    for (int iter = 0; iter < 20; ++iter) {
        if (std::isfinite(res) && std::abs(res) <= tol) return p;
        const Vec2 gr = grad(g, p);
        const double n2 = gr.norm_sq();
        if (!(n2 > 1e-24)) throw VanishingGradient("grad g vanished during level correction");
        Vec2 delta = (-res / n2) * gr;
        for (int damp = 0; damp < 8; ++damp) {
            const Point2 trial = p + delta;
            const double trial_res = g(trial) - target;
            if (std::isfinite(trial_res) && std::abs(trial_res) < std::abs(res)) {
                p = trial;
                res = trial_res;
                break;
            }
            delta = 0.5 * delta;
            if (damp == 7) throw NoConvergence("level corrector stalled");
        }
    }
    throw NoConvergence("level corrector did not reach tolerance in 20 iterations");
}

} // namespace detail

// Follows {g = g(start)} by unit tangent predictor steps (grad g rotated a
// quarter turn, sign chosen by direction_sign) and Newton correction.
// Terminates when cfg.stop fires or the corrected point stops improving;
// exceeding cfg.max_steps is an error.
inline Polyline trace_level(const ScalarField& g, Point2 start, int direction_sign,
                            const TraceConfig& cfg) {
    if (!(cfg.step > 0.0)) throw std::invalid_argument("trace step must be > 0");
    if (!(cfg.corrector_tol > 0.0)) throw std::invalid_argument("corrector_tol must be > 0");
    const double target = g(start);
    if (!std::isfinite(target)) throw NonFiniteValue("g not finite at the trace start");

    std::vector<Point2> pts{start};
    Point2 p = start;
    for (int step_count = 0;; ++step_count) {
        if (step_count >= cfg.max_steps)
            throw MaxStepsExceeded("trace did not terminate within max_steps");
        const Vec2 gr = grad(g, p);
        const double n = gr.norm();
        if (n < 1e-12) throw VanishingGradient("grad g vanished mid-trace");
        const Vec2 tangent = (static_cast<double>(direction_sign) / n) * perp(gr);
        const Point2 predicted = p + cfg.step * tangent;
        if (cfg.stop && cfg.stop(predicted)) break;
        const Point2 corrected = detail::correct_to_level(g, predicted, target, cfg.corrector_tol);
        if (cfg.stop && cfg.stop(corrected)) break;
        pts.push_back(corrected);
        p = corrected;
    }
    if (pts.size() < 2) throw DegenerateCurve("trace stopped before its first step");
    return make_polyline(std::move(pts));
}

enum class ShootStatus { Completed, DomainExit };

struct ShootResult {
    Polyline curve;
    ShootStatus status = ShootStatus::Completed;
};

namespace detail {

struct GeodesicState {
    double x, y, theta;
};

} // namespace detail

// Integrates the conformal geodesic system
//   dx/ds = cos theta,  dy/ds = sin theta,
//   dtheta/ds = d(ln rho)/dy cos theta - d(ln rho)/dx sin theta
// with the classical 4th-order one-step method, s = Euclidean arc length.
// Serves as an oracle independent of the calibration machinery. A domain may
// be supplied; leaving it (or hitting a bad density) returns the partial
// curve flagged DomainExit.
inline ShootResult shoot_geodesic(const ScalarField& rho, Point2 start, double theta0, double step,
                                  int n_steps, const Domain* domain = nullptr) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
    const double r0 = rho(start);
    if (!std::isfinite(r0) || r0 <= 0.0)
        throw SingularDensity("density not positive at the shooting start");

    auto rhs_ok = [&](const detail::GeodesicState& s, detail::GeodesicState& d) {
        const Point2 p{s.x, s.y};
        if (domain && !domain->contains(p)) return false;
        const double r = rho(p);
        if (!std::isfinite(r) || r <= 0.0) return false;
        const Vec2 gr = grad(rho, p);
        if (!finite(gr)) return false;
        const double ct = std::cos(s.theta);
        const double st = std::sin(s.theta);
        d = {ct, st, (gr.dy / r) * ct - (gr.dx / r) * st};
        return true;
    };

    ShootResult result;
    result.curve.points.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.curve.points.push_back(start);
    detail::GeodesicState s{start.x, start.y, theta0};
    for (int i = 0; i < n_steps; ++i) {
        detail::GeodesicState k1, k2, k3, k4;
        bool ok = rhs_ok(s, k1);
        ok = ok && rhs_ok({s.x + 0.5 * step * k1.x, s.y + 0.5 * step * k1.y, s.theta + 0.5 * step * k1.theta}, k2);
        ok = ok && rhs_ok({s.x + 0.5 * step * k2.x, s.y + 0.5 * step * k2.y, s.theta + 0.5 * step * k2.theta}, k3);
        ok = ok && rhs_ok({s.x + step * k3.x, s.y + step * k3.y, s.theta + step * k3.theta}, k4);
        if (!ok) {
            result.status = ShootStatus::DomainExit;
            return result;
        }
        s.x += step / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        s.y += step / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        s.theta += step / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
        const Point2 p{s.x, s.y};
        if ((domain && !domain->contains(p)) || !std::isfinite(rho(p))) {
            result.status = ShootStatus::DomainExit;
            return result;
        }
        result.curve.points.push_back(p);
    }
    return result;
}

// Max over curve samples of |(1/v(y)) dx/ds - c|: the conservation law of
// geodesics for densities 1/v(y). Zero (up to discretisation) exactly on
// geodesics.
inline double first_integral_residual(const std::function<double(double)>& v, const Curve& curve,
                                      double c, int n_nodes = 512) {
    double worst = 0.0;
    auto check = [&](double y, double dxds) {
        const double vy = v(y);
        if (!std::isfinite(vy) || vy <= 0.0)
            throw SingularDensity("v(y) not positive along the curve");
        worst = std::max(worst, std::abs(dxds / vy - c));
    };
    if (const auto* par = std::get_if<Parametric>(&curve)) {
        // Interior nodes only: central differences stay symmetric there.
        for (int i = 0; i < n_nodes; ++i) {
            const double t =
                par->t0 + (par->t1 - par->t0) * (static_cast<double>(i) + 0.5) / n_nodes;
            const Vec2 vel = parametric_velocity(*par, t);
            const double speed = vel.norm();
            if (speed == 0.0) throw DegenerateCurve("stationary point on parametric curve");
            check(par->map(t).y, vel.dx / speed);
        }
        return worst;
    }
    const auto& pts = std::get<Polyline>(curve).points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec2 d = pts[i + 1] - pts[i];
        check(0.5 * (pts[i].y + pts[i + 1].y), d.dx / d.norm());
    }
    return worst;
}

} // namespace calibgeo
