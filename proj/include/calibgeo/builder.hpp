#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "calibgeo/calibration.hpp"
#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"
#include "calibgeo/quadrature.hpp"
#include "calibgeo/sampling.hpp"

namespace calibgeo {

// Power-scale primitive: antiderivative of t^-lambda on t > 0.
inline double psi(double lambda, double t) {
    if (!(t > 0.0)) throw NonPositiveArgument("psi requires t > 0");
    if (lambda == 1.0) return std::log(t);
    return std::pow(t, 1.0 - lambda) / (1.0 - lambda);
}

// Calibration pair for the density sqrt(x^2p + y^2q) on the open quadrant:
//   g = psi_p(x) + psi_q(y),  f = psi_{-p}(x) - psi_{-q}(y).
inline CalibrationPair power_density_pair(double p, double q, const Domain& domain) {
    if (domain.bbox.xmin < 0.0 || domain.bbox.ymin < 0.0)
        throw DomainOutsideQuadrant("power density domain must lie in x > 0, y > 0");

    CalibrationPair pair;
    pair.domain = domain;
    pair.g.value = [p, q](Point2 pt) { return psi(p, pt.x) + psi(q, pt.y); };
    pair.g.gradient = [p, q](Point2 pt) -> Vec2 {
        return {std::pow(pt.x, -p), std::pow(pt.y, -q)};
    };
    pair.f.value = [p, q](Point2 pt) { return psi(-p, pt.x) - psi(-q, pt.y); };
    pair.f.gradient = [p, q](Point2 pt) -> Vec2 {
        return {std::pow(pt.x, p), -std::pow(pt.y, q)};
    };
    pair.rho.value = [p, q](Point2 pt) {
        return std::sqrt(std::pow(pt.x, 2.0 * p) + std::pow(pt.y, 2.0 * q));
    };
    pair.rho.gradient = [p, q](Point2 pt) -> Vec2 {
        const double r = std::sqrt(std::pow(pt.x, 2.0 * p) + std::pow(pt.y, 2.0 * q));
        return {p * std::pow(pt.x, 2.0 * p - 1.0) / r, q * std::pow(pt.y, 2.0 * q - 1.0) / r};
    };
    return pair;
}

namespace detail {

// Barycentric interpolation on Chebyshev-Lobatto nodes of [a, b].
class ChebyshevInterpolant {
public:
    ChebyshevInterpolant() = default;
    ChebyshevInterpolant(double a, double b, std::vector<double> node_values)
        : a_(a), b_(b), values_(std::move(node_values)) {}

    // Node j (ascending in y).
    static double node(double a, double b, int j, int n) {
        // cos runs 1 -> -1 as j*pi/n runs 0 -> pi; flip for ascending order.
        return 0.5 * (a + b) - 0.5 * (b - a) * std::cos(M_PI * static_cast<double>(j) / n);
    }

    double operator()(double x) const {
        const int n = static_cast<int>(values_.size()) - 1;
        double num = 0.0, den = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double xj = node(a_, b_, j, n);
            const double diff = x - xj;
            if (diff == 0.0) return values_[static_cast<std::size_t>(j)];
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == n) w *= 0.5;
            const double t = w / diff;
            num += t * values_[static_cast<std::size_t>(j)];
            den += t;
        }
        return num / den;
    }

    double lo() const { return a_; }
    double hi() const { return b_; }

private:
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> values_;
};

// Antiderivative A(y) = integral from y_ref to y of `fn`, tabulated at
// Chebyshev nodes of [a, b] and refined until barycentric interpolation
// reproduces direct quadrature at the panel midpoints to ~1e-10.
inline ChebyshevInterpolant build_antiderivative(const std::function<double(double)>& fn, double a,
                                                 double b, double y_ref, double target_err = 1e-10) {
    auto panel = [&](double lo, double hi) {
        const double est = gauss5(fn, lo, hi);
        return adaptive_gauss5(fn, lo, hi, 1e-13 * std::max(1.0, std::abs(est)), est,
                               kMaxAdaptiveDepth);
    };

    for (int n = 128; n <= 4096; n *= 2) {
        std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j)
            nodes[static_cast<std::size_t>(j)] = ChebyshevInterpolant::node(a, b, j, n);

        std::vector<double> cum(nodes.size(), 0.0);
        for (std::size_t j = 1; j < nodes.size(); ++j)
            cum[j] = cum[j - 1] + panel(nodes[j - 1], nodes[j]);

        // Shift so the anchor value at y_ref is exactly zero.
        double at_ref = 0.0;
        if (y_ref <= nodes.front()) {
            at_ref = -panel(y_ref, nodes.front());
        } else if (y_ref >= nodes.back()) {
            at_ref = cum.back() + panel(nodes.back(), y_ref);
        } else {
            std::size_t k = 0;
            while (k + 1 < nodes.size() && nodes[k + 1] < y_ref) ++k;
            at_ref = cum[k] + panel(nodes[k], y_ref);
        }
        for (double& v : cum) v -= at_ref;

        ChebyshevInterpolant interp(a, b, cum);
        bool ok = true;
        for (std::size_t j = 0; j + 1 < nodes.size() && ok; ++j) {
            const double mid = 0.5 * (nodes[j] + nodes[j + 1]);
            const double direct = cum[j] + panel(nodes[j], mid);
            if (std::abs(interp(mid) - direct) > target_err * (1.0 + std::abs(direct))) ok = false;
        }
        if (ok) return interp;
    }
    throw NoConvergence("antiderivative interpolation did not reach target accuracy");
}

} // namespace detail

// Density 1/v(y) with a y-only speed factor. The exact differential
// equations
//   dg = dx + c v / sqrt(1 - c^2 v^2) dy,   df = -c dx + sqrt(1 - c^2 v^2) / v dy
// are integrated from y_ref, so g(x, y) = x + G(y) and f(x, y) = -c x + F(y)
// with G(y_ref) = F(y_ref) = 0.
struct SymmetricDensitySpec {
    std::function<double(double)> v;
    double c = 0.0;
    double y_ref = 0.0;
    Domain domain;
};

inline CalibrationPair build_symmetric_pair(const SymmetricDensitySpec& spec) {
    const auto v = spec.v;
    const double c = spec.c;

    auto speed = [v](double y) {
        const double vy = v(y);
        if (!std::isfinite(vy) || vy <= 0.0) throw SingularDensity("v(y) must be positive");
        return vy;
    };
    auto validity = [v, c](double y) {
        const double vy = v(y);
        return std::isfinite(vy) && vy > 0.0 && 1.0 - c * c * vy * vy > 0.0;
    };
    if (!validity(spec.y_ref))
        throw ValidityViolated("1 - c^2 v(y)^2 <= 0 or v <= 0 at y_ref");

    // Validity strip around y_ref: coarse 1e-3 scan, then bisection of each
    // edge down to 1e-12.
    const double ymin = spec.domain.bbox.ymin;
    const double ymax = spec.domain.bbox.ymax;
    const double scan = 1e-3;
    auto bisect_edge = [&](double good, double bad) {
        for (int i = 0; i < 80 && std::abs(bad - good) > 1e-12; ++i) {
            const double mid = 0.5 * (good + bad);
            (validity(mid) ? good : bad) = mid;
        }
        return good;
    };
    double lo = spec.y_ref;
    while (lo - scan >= ymin && validity(lo - scan)) lo -= scan;
    if (lo - scan < ymin)
        lo = validity(ymin) ? ymin : bisect_edge(lo, ymin);
    else
        lo = bisect_edge(lo, lo - scan);
    double hi = spec.y_ref;
    while (hi + scan <= ymax && validity(hi + scan)) hi += scan;
    if (hi + scan > ymax)
        hi = validity(ymax) ? ymax : bisect_edge(hi, ymax);
    else
        hi = bisect_edge(hi, hi + scan);

    const double margin = spec.domain.margin;
    // Tabulate slightly past the shrunk strip so predictor overshoots during
    // tracing still evaluate smoothly.
    const double tab_lo = lo + 0.5 * margin;
    const double tab_hi = hi - 0.5 * margin;
    if (!(tab_hi > tab_lo)) throw ValidityViolated("validity strip narrower than the margin");

    auto g_slope = [speed, c](double y) {
        const double vy = speed(y);
        const double s = 1.0 - c * c * vy * vy;
        if (s <= 0.0) throw ValidityViolated("1 - c^2 v(y)^2 <= 0 inside the strip");
        return c * vy / std::sqrt(s);
    };
    auto f_slope = [speed, c](double y) {
        const double vy = speed(y);
        const double s = 1.0 - c * c * vy * vy;
        if (s <= 0.0) throw ValidityViolated("1 - c^2 v(y)^2 <= 0 inside the strip");
        return std::sqrt(s) / vy;
    };
    const auto G = detail::build_antiderivative(g_slope, tab_lo, tab_hi, spec.y_ref);
    const auto F = detail::build_antiderivative(f_slope, tab_lo, tab_hi, spec.y_ref);

    CalibrationPair pair;
    const double strip_lo = lo + margin;
    const double strip_hi = hi - margin;
    auto outer = spec.domain.contains;
    pair.domain = spec.domain;
    pair.domain.contains = [outer, strip_lo, strip_hi](Point2 p) {
        return p.y > strip_lo && p.y < strip_hi && outer(p);
    };
    pair.domain.bbox.ymin = std::max(ymin, strip_lo);
    pair.domain.bbox.ymax = std::min(ymax, strip_hi);

    pair.g.value = [G](Point2 p) { return p.x + G(p.y); };
    pair.g.gradient = [v, c](Point2 p) -> Vec2 {
        const double vy = v(p.y);
        const double s = std::max(1.0 - c * c * vy * vy, 1e-300);
        return {1.0, c * vy / std::sqrt(s)};
    };
    pair.f.value = [F, c](Point2 p) { return -c * p.x + F(p.y); };
    pair.f.gradient = [v, c](Point2 p) -> Vec2 {
        const double vy = v(p.y);
        const double s = std::max(1.0 - c * c * vy * vy, 0.0);
        return {-c, std::sqrt(s) / vy};
    };
    pair.rho.value = [v](Point2 p) { return 1.0 / v(p.y); };
    return pair;
}

// Real/imaginary parts of a holomorphic function plus a rotation angle.
struct HolomorphicSpec {
    ScalarField p;
    ScalarField q;
    double alpha = 0.0;
};

// f + i g = e^{i alpha} (p + i q); level curves of g are geodesics for the
// density |grad p|. Cauchy-Riemann is a hypothesis here, so it is checked on
// sampled interior points before the pair is returned.
inline CalibrationPair build_harmonic_pair(const HolomorphicSpec& spec, const Domain& domain) {
    const ScalarField p = spec.p;
    const ScalarField q = spec.q;
    for (const Point2& pt : sample_interior(domain, 200, 7)) {
        const Vec2 gp = grad(p, pt);
        const Vec2 gq = grad(q, pt);
        const double np = gp.norm();
        if (np < 1e-12) throw VanishingGradient("grad p vanishes at a sample point");
        if (std::abs(gp.dx - gq.dy) > 1e-8 * np || std::abs(gp.dy + gq.dx) > 1e-8 * np)
            throw CauchyRiemannViolated("p + iq fails the Cauchy-Riemann equations");
    }

    const double ca = std::cos(spec.alpha);
    const double sa = std::sin(spec.alpha);
    CalibrationPair pair;
    pair.domain = domain;
    pair.f.value = [p, q, ca, sa](Point2 pt) { return ca * p(pt) - sa * q(pt); };
    pair.g.value = [p, q, ca, sa](Point2 pt) { return sa * p(pt) + ca * q(pt); };
    if (p.gradient && q.gradient) {
        auto gp = p.gradient;
        auto gq = q.gradient;
        pair.f.gradient = [gp, gq, ca, sa](Point2 pt) { return ca * gp(pt) - sa * gq(pt); };
        pair.g.gradient = [gp, gq, ca, sa](Point2 pt) { return sa * gp(pt) + ca * gq(pt); };
        pair.rho.value = [gp](Point2 pt) { return gp(pt).norm(); };
    } else {
        pair.f.fd_step = pair.g.fd_step = std::min(p.fd_step, q.fd_step);
        pair.rho.value = [p](Point2 pt) { return grad(p, pt).norm(); };
    }
    return pair;
}

} // namespace calibgeo
