#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "calibgeo/catalog.hpp"
#include "calibgeo/geodesic.hpp"

using namespace calibgeo;

namespace {

TraceConfig domain_trace(const Domain& domain, double step, double corrector_tol = 1e-10) {
    TraceConfig cfg;
    cfg.step = step;
    cfg.corrector_tol = corrector_tol;
    cfg.stop = [&domain](Point2 p) { return !domain.interior(p); };
    return cfg;
}

Polyline fine_parametric(const Parametric& par, int n) {
    return resample_arclength(Curve{par}, n);
}

} // namespace

TEST_CASE("trace_level: linear field gives a horizontal polyline") {
    ScalarField g;
    g.value = [](Point2 p) { return p.y; };
    g.gradient = [](Point2) -> Vec2 { return {0.0, 1.0}; };
    TraceConfig cfg;
    cfg.step = 0.1;
    cfg.corrector_tol = 1e-12;
    int steps = 0;
    cfg.stop = [&steps](Point2) { return ++steps > 25; };
    const Polyline traced = trace_level(g, {0.0, 0.0}, -1, cfg);
    REQUIRE(traced.points.size() >= 10);
    for (const Point2& p : traced.points) CHECK(std::abs(p.y) <= 1e-12);
}

TEST_CASE("trace_level: conic-eps-0 level curve is the unit circle") {
    const auto& e = entry_by_name("conic-eps-0");
    const Point2 start{std::cos(M_PI / 3.0), std::sin(M_PI / 3.0)};
    for (int dir : {-1, +1}) {
        const Polyline traced =
            trace_level(e.pair.g, start, dir, domain_trace(e.pair.domain, 1e-3, 1e-11));
        REQUIRE(traced.points.size() > 50);
        for (const Point2& p : traced.points)
            CHECK(std::abs(p.x * p.x + p.y * p.y - 1.0) <= 1e-8);
    }
}

TEST_CASE("trace_level: every corrected point satisfies the level condition") {
    const auto& e = entry_by_name("grim-reaper");
    const Point2 start{0.5, -std::log(std::cos(0.5))};
    const double g0 = e.pair.g(start);
    const double tol = 1e-10;
    const Polyline traced = trace_level(e.pair.g, start, +1, domain_trace(e.pair.domain, 1e-3, tol));
    for (const Point2& p : traced.points) CHECK(std::abs(e.pair.g(p) - g0) <= tol);
}

TEST_CASE("trace_level: brachistochrone trace follows the parametric cycloid") {
    const auto& e = entry_by_name("brachistochrone");
    const double step = 2e-3;
    const Point2 start{1.0 - std::sin(1.0), std::cos(1.0) - 1.0};
    const Polyline fine =
        fine_parametric(Parametric{[](double t) -> Point2 {
                                       return {t - std::sin(t), std::cos(t) - 1.0};
                                   },
                                   0.1, M_PI - 0.1},
                        4000);
    for (int dir : {-1, +1}) {
        const Polyline traced = trace_level(e.pair.g, start, dir, domain_trace(e.pair.domain, step));
        double worst = 0.0;
        for (const Point2& p : traced.points) {
            // Compare only over the arc shared with the reference curve.
            if (p.x < fine.points.front().x || p.x > fine.points.back().x) continue;
            worst = std::max(worst, point_polyline_distance(p, fine));
        }
        CHECK(worst <= 2.0 * step * step);
    }
}

TEST_CASE("trace_level: step halving converges with order >= 1") {
    const auto& e = entry_by_name("conic-parabola");
    const Point2 start{-0.5, 1.0};
    auto trace_with = [&](double h) {
        return trace_level(e.pair.g, start, +1,
                           domain_trace(e.pair.domain, h, 1e-12));
    };
    const Polyline h1 = trace_with(4e-3);
    const Polyline h2 = trace_with(2e-3);
    const Polyline h4 = trace_with(1e-3);
    const double d12 = hausdorff_distance(h1, h2);
    const double d24 = hausdorff_distance(h2, h4);
    CHECK(d12 <= 4.0 * d24 + 1e-9);
}

TEST_CASE("trace_level: invalid configuration is rejected") {
    ScalarField g;
    g.value = [](Point2 p) { return p.y; };
    TraceConfig cfg;
    cfg.step = 0.0;
    CHECK_THROWS_AS(trace_level(g, {0.0, 0.0}, +1, cfg), std::invalid_argument);
    cfg.step = 0.1;
    cfg.corrector_tol = 0.0;
    CHECK_THROWS_AS(trace_level(g, {0.0, 0.0}, +1, cfg), std::invalid_argument);
}

TEST_CASE("trace_level: vanishing gradient raises") {
    ScalarField g;
    g.value = [](Point2 p) { return p.x * p.x + p.y * p.y; };
    g.gradient = [](Point2 p) -> Vec2 { return {2.0 * p.x, 2.0 * p.y}; };
    TraceConfig cfg;
    cfg.step = 0.1;
    CHECK_THROWS_AS(trace_level(g, {0.0, 0.0}, +1, cfg), VanishingGradient);
}

TEST_CASE("trace_level: exceeding max_steps raises") {
    ScalarField g;
    g.value = [](Point2 p) { return p.y; };
    g.gradient = [](Point2) -> Vec2 { return {0.0, 1.0}; };
    TraceConfig cfg;
    cfg.step = 0.1;
    cfg.max_steps = 10;
    CHECK_THROWS_AS(trace_level(g, {0.0, 0.0}, +1, cfg), MaxStepsExceeded);
}

TEST_CASE("shoot_geodesic: constant density shoots straight lines") {
    ScalarField one;
    one.value = [](Point2) { return 1.0; };
    one.gradient = [](Point2) -> Vec2 { return {0.0, 0.0}; };
    const double theta0 = 0.7;
    const auto result = shoot_geodesic(one, {0.0, 0.0}, theta0, 1e-2, 100);
    CHECK(result.status == ShootStatus::Completed);
    const Point2 end = result.curve.points.back();
    CHECK(end.x == Catch::Approx(std::cos(theta0)).epsilon(1e-10));
    CHECK(end.y == Catch::Approx(std::sin(theta0)).epsilon(1e-10));
}

TEST_CASE("shoot_geodesic: hyperbolic half-plane geodesic is the unit circle") {
    ScalarField rho;
    rho.value = [](Point2 p) { return 1.0 / p.y; };
    rho.gradient = [](Point2 p) -> Vec2 { return {0.0, -1.0 / (p.y * p.y)}; };
    const auto result = shoot_geodesic(rho, {0.0, 1.0}, 0.0, 1e-3, 1000);
    CHECK(result.status == ShootStatus::Completed);
    REQUIRE(result.curve.points.size() == 1001);
    for (const Point2& p : result.curve.points)
        CHECK(std::abs(p.x * p.x + p.y * p.y - 1.0) <= 1e-6);
}

TEST_CASE("shoot_geodesic: cycloid is a geodesic of 1/sqrt(-y)") {
    ScalarField rho;
    rho.value = [](Point2 p) { return 1.0 / std::sqrt(-p.y); };
    rho.gradient = [](Point2 p) -> Vec2 { return {0.0, 0.5 * std::pow(-p.y, -1.5)}; };
    // Start at cycloid(pi/2) with the cycloid's tangent angle theta = t/2 - pi/2.
    const double t0 = M_PI / 2.0;
    const Point2 start{t0 - std::sin(t0), std::cos(t0) - 1.0};
    const double theta0 = t0 / 2.0 - M_PI / 2.0;
    const auto result = shoot_geodesic(rho, start, theta0, 1e-3, 1000);
    CHECK(result.status == ShootStatus::Completed);
    const Polyline fine =
        fine_parametric(Parametric{[](double t) -> Point2 {
                                       return {t - std::sin(t), std::cos(t) - 1.0};
                                   },
                                   0.1, M_PI - 0.1},
                        8000);
    double worst = 0.0;
    for (const Point2& p : result.curve.points)
        worst = std::max(worst, point_polyline_distance(p, fine));
    CHECK(worst <= 1e-5);
}

TEST_CASE("shoot_geodesic: leaving the domain flags a partial curve") {
    ScalarField rho;
    rho.value = [](Point2 p) { return 1.0 / p.y; };
    rho.gradient = [](Point2 p) -> Vec2 { return {0.0, -1.0 / (p.y * p.y)}; };
    const Domain strip = make_domain(
        [](Point2 p) { return p.y > 0.8; }, {-2.0, 2.0, 0.8, 2.0}, 1e-6);
    const auto result = shoot_geodesic(rho, {0.0, 1.0}, 0.0, 1e-3, 5000, &strip);
    CHECK(result.status == ShootStatus::DomainExit);
    CHECK(result.curve.points.size() < 5001);
    CHECK(result.curve.points.size() > 100);
}

TEST_CASE("shoot_geodesic: singular start density raises") {
    ScalarField rho;
    rho.value = [](Point2 p) { return p.y; };
    CHECK_THROWS_AS(shoot_geodesic(rho, {0.0, -1.0}, 0.0, 1e-3, 10), SingularDensity);
}

TEST_CASE("shooting and tracing agree along catalog minimizers") {
    for (const char* name : {"conic-eps-0", "conic-parabola", "brachistochrone"}) {
        INFO(name);
        const auto& e = entry_by_name(name);
        const double step = 1e-3;
        const Polyline mini = resample_arclength(e.minimizer, 201);
        const std::size_t mid = mini.points.size() / 2;
        const Vec2 tangent = mini.points[mid + 1] - mini.points[mid - 1];
        const double theta0 = std::atan2(tangent.dy, tangent.dx);
        const double arc = 0.35 * (mini.points.size() - 1) *
                           distance(mini.points[0], mini.points[1]);
        const int n_steps = static_cast<int>(arc / step);
        const auto shot =
            shoot_geodesic(e.pair.rho, mini.points[mid], theta0, step, n_steps, &e.pair.domain);

        const Polyline traced = trace_level(e.pair.g, mini.points[mid], +1,
                                            domain_trace(e.pair.domain, step, 1e-11));
        const Polyline traced_back = trace_level(e.pair.g, mini.points[mid], -1,
                                                 domain_trace(e.pair.domain, step, 1e-11));
        double worst = 0.0;
        for (const Point2& p : shot.curve.points) {
            const double d = std::min(point_polyline_distance(p, traced),
                                      point_polyline_distance(p, traced_back));
            worst = std::max(worst, d);
        }
        CHECK(worst <= 10.0 * step);
    }
}

TEST_CASE("first_integral_residual: vertical segment with c=0 is exactly zero") {
    const Polyline vertical = make_polyline({{0.5, -1.5}, {0.5, -0.5}});
    auto v = [](double y) { return std::sqrt(-y); };
    CHECK(first_integral_residual(v, Curve{vertical}, 0.0) == 0.0);
}

TEST_CASE("first_integral_residual: cycloid conserves c = 1/sqrt(2)") {
    Parametric cycloid{[](double t) -> Point2 { return {t - std::sin(t), std::cos(t) - 1.0}; },
                       0.1, M_PI - 0.1};
    auto v = [](double y) { return std::sqrt(-y); };
    CHECK(first_integral_residual(v, Curve{cycloid}, 1.0 / std::sqrt(2.0)) <= 1e-6);
}

TEST_CASE("first_integral_residual: horizontal segment is not a geodesic") {
    const Polyline horizontal = make_polyline({{0.0, -1.0}, {1.0, -1.0}});
    auto v = [](double y) { return std::sqrt(-y); };
    CHECK(first_integral_residual(v, Curve{horizontal}, 1.0 / std::sqrt(2.0)) ==
          Catch::Approx(0.2928932188134525).epsilon(1e-12));
}

TEST_CASE("first_integral_residual: singular speed factor raises") {
    const Polyline seg = make_polyline({{0.0, 1.0}, {1.0, 1.0}}); // v = sqrt(-y) undefined
    auto v = [](double y) { return std::sqrt(-y); };
    CHECK_THROWS_AS(first_integral_residual(v, Curve{seg}, 0.0), SingularDensity);
}
