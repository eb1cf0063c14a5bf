#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "calibgeo/calibration.hpp"
#include "calibgeo/catalog.hpp"
#include "calibgeo/sampling.hpp"

using namespace calibgeo;

TEST_CASE("catalog: exactly nine entries with the contracted names") {
    const auto& entries = catalog_entries();
    REQUIRE(entries.size() == 9);
    const std::vector<std::string> expected = {
        "astroid",       "power",          "brachistochrone",
        "conic-eps-0",   "conic-ellipse",  "conic-parabola",
        "conic-hyperbola", "grim-reaper",  "log-spiral"};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(entries[i].name == expected[i]);
}

TEST_CASE("catalog: lookup is exact and case-sensitive") {
    CHECK(entry_by_name("astroid").name == "astroid");
    CHECK(entry_by_name("conic-eps-0").name == "conic-eps-0");
    CHECK_THROWS_AS(entry_by_name("ASTROID"), UnknownEntry);
    try {
        entry_by_name("no-such-entry");
        FAIL("expected UnknownEntry");
    } catch (const UnknownEntry& e) {
        // The message must list the valid names.
        CHECK(std::string(e.what()).find("brachistochrone") != std::string::npos);
    }
}

TEST_CASE("catalog: minimizer endpoints equal the default endpoints") {
    for (const auto& e : catalog_entries()) {
        INFO(e.name);
        CHECK(distance(curve_start(e.minimizer), e.default_endpoints.first) <= 1e-12);
        CHECK(distance(curve_end(e.minimizer), e.default_endpoints.second) <= 1e-12);
        CHECK(e.pair.domain.interior(e.default_endpoints.first));
        CHECK(e.pair.domain.interior(e.default_endpoints.second));
    }
}

TEST_CASE("catalog: minimizers lie on a level curve of g") {
    for (const auto& e : catalog_entries()) {
        INFO(e.name);
        const double g0 = e.pair.g(curve_start(e.minimizer));
        const double tol = 1e-8 * (1.0 + std::abs(g0));
        for (const Point2& p : sample_curve(e.minimizer, 200))
            CHECK(std::abs(e.pair.g(p) - g0) <= tol);
    }
}

TEST_CASE("catalog: closed-form oracle lengths match quadrature to 1e-8") {
    for (const auto& e : catalog_entries()) {
        INFO(e.name);
        REQUIRE(e.oracle_length.has_value());
        const double len = weighted_length(e.minimizer, e.pair.rho);
        CHECK(len == Catch::Approx(*e.oracle_length).epsilon(1e-8));
    }
}

TEST_CASE("catalog: hypothesis checks pass at 500 samples per entry") {
    for (const auto& e : catalog_entries()) {
        INFO(e.name);
        CHECK(check_orthogonality(e.pair, 500, 42) <= 1e-9);
        CHECK(check_density(e.pair, 500, 42) <= 1e-8);
    }
}

TEST_CASE("catalog: analytic gradients agree with finite differences") {
    for (const auto& e : catalog_entries()) {
        INFO(e.name);
        for (const ScalarField* field : {&e.pair.f, &e.pair.g, &e.pair.rho}) {
            if (!field->gradient) continue;
            ScalarField fd = *field;
            fd.gradient = nullptr;
            fd.fd_step = 1e-5;
            for (const Point2& p : sample_interior(e.pair.domain, 200, 42)) {
                const Vec2 ga = grad(*field, p);
                const Vec2 gn = grad(fd, p);
                CHECK((ga - gn).norm() <= 1e-5 * ga.norm());
            }
        }
    }
}

TEST_CASE("catalog: brachistochrone g vanishes along the cycloid") {
    const auto& e = entry_by_name("brachistochrone");
    for (double t : {0.5, 1.0, 2.0}) {
        const Point2 p{t - std::sin(t), std::cos(t) - 1.0};
        CHECK(std::abs(e.pair.g(p)) <= 1e-9);
    }
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = 0.1 + (M_PI - 0.2) * i / 400.0;
        const Point2 p{t - std::sin(t), std::cos(t) - 1.0};
        worst = std::max(worst, std::abs(e.pair.g(p)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("catalog: quarter circle weighted length matches the arccosh oracle") {
    const auto& e = entry_by_name("conic-eps-0");
    const Point2 p1{std::cos(M_PI / 6.0), std::sin(M_PI / 6.0)};
    const Point2 p2{std::cos(M_PI / 3.0), std::sin(M_PI / 3.0)};
    Parametric arc{[](double t) -> Point2 { return {std::cos(t), std::sin(t)}; }, M_PI / 6.0,
                   M_PI / 3.0};
    const double oracle = std::acosh(1.0 + (p2 - p1).norm_sq() / (2.0 * p1.y * p2.y));
    CHECK(weighted_length(Curve{arc}, e.pair.rho) == Catch::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("catalog: conic density is monotone in eps and converges to the parabola") {
    // |rho_eps - rho_1| = |eps^2-1| / (rho_eps + rho_1) <= |eps^2-1| / (2 min(rho_eps, rho_1)).
    const auto& parabola = entry_by_name("conic-parabola");
    auto rho_eps = [](double eps, Point2 p) {
        return std::sqrt(eps * eps + 1.0 / (p.y * p.y));
    };
    const auto points = sample_interior(parabola.pair.domain, 50, 42);
    double prev_gap = -1.0;
    for (double eps : {0.9, 0.99}) {
        double max_gap = 0.0;
        for (const Point2& p : points) {
            const double re = rho_eps(eps, p);
            const double r1 = parabola.pair.rho(p);
            const double gap = std::abs(re - r1);
            max_gap = std::max(max_gap, gap);
            CHECK(re < r1); // monotone in eps at fixed y
            CHECK(gap <= std::abs(eps * eps - 1.0) / (2.0 * std::min(re, r1)) * (1.0 + 1e-6));
            // Exact identity: gap * (re + r1) = |eps^2 - 1|.
            CHECK(gap * (re + r1) == Catch::Approx(std::abs(eps * eps - 1.0)).epsilon(1e-10));
        }
        if (prev_gap >= 0.0) CHECK(max_gap < prev_gap);
        prev_gap = max_gap;
    }
}

TEST_CASE("catalog: every entry passes the full verification with 20 competitors") {
    for (const auto& e : catalog_entries()) {
        INFO(e.name);
        const auto competitors =
            generate_competitors(e.default_endpoints.first, e.default_endpoints.second,
                                 e.pair.domain, 42, 20);
        const auto report = verify_minimizer(e.pair, e.minimizer, competitors, {}, e.name, 42);
        CHECK(report.passed);
        CHECK(report.minimizer_length == Catch::Approx(report.bound).epsilon(1e-6));
        for (double m : report.competitor_margins) CHECK(m >= -1e-7 * report.bound);
    }
}
