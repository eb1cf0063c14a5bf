#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"
#include "calibgeo/parallel.hpp"
#include "calibgeo/quadrature.hpp"
#include "calibgeo/sampling.hpp"

namespace calibgeo {

// The pair (f, g) with orthogonal non-vanishing gradients on `domain`.
// `rho` is the declared density; the verifier checks it against the induced
// density |grad f| rather than trusting it.
struct CalibrationPair {
    ScalarField f;
    ScalarField g;
    Domain domain;
    ScalarField rho;
};

struct Tolerances {
    double tol_orth = 1e-9;
    double tol_rho = 1e-8;
    double tol_len = 1e-6;
    // <= 0 means auto: 1e-8 * (1 + |g(start)|).
    double tol_level = -1.0;
    int n_samples = 500;
};

// Max over quasi-random interior samples of |grad f . grad g| normalized by
// the gradient norms. Deterministic given the seed.
inline double check_orthogonality(const CalibrationPair& pair, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    double worst = 0.0;
    for (const Point2& p : sample_interior(pair.domain, n_samples, seed)) {
        const Vec2 gf = grad(pair.f, p);
        const Vec2 gg = grad(pair.g, p);
        const double nf = gf.norm();
        const double ng = gg.norm();
        if (nf < 1e-12 || ng < 1e-12)
            throw VanishingGradient("gradient vanishes at a sample point");
        worst = std::max(worst, std::abs(dot(gf, gg)) / (nf * ng));
    }
    return worst;
}

// Max over samples of | |grad f| - rho | / rho.
inline double check_density(const CalibrationPair& pair, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    double worst = 0.0;
    for (const Point2& p : sample_interior(pair.domain, n_samples, seed)) {
        const double r = pair.rho(p);
        if (!std::isfinite(r) || r <= 0.0)
            throw SingularDensity("declared density not positive at a sample point");
        worst = std::max(worst, std::abs(grad(pair.f, p).norm() - r) / r);
    }
    return worst;
}

// |f(p2) - f(p1)|: the universal lower bound for the weighted length of any
// curve connecting p1 to p2 inside the domain.
inline double calibrated_bound(const CalibrationPair& pair, Point2 p1, Point2 p2) {
    const double f1 = pair.f(p1);
    const double f2 = pair.f(p2);
    if (!std::isfinite(f1) || !std::isfinite(f2))
        throw NonFiniteValue("f not finite at a bound endpoint");
    return std::abs(f2 - f1);
}

namespace detail {

inline double uniform_pm1(std::mt19937_64& rng) {
    // Portable uniform in [-1, 1): avoids distribution-implementation drift.
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

} // namespace detail

// Polyline from p1 to p2: straight chord plus seeded random sine-mode
// displacements normal to the chord, scaled by amplitude * |p2 - p1|.
// Resamples with halved amplitude (fresh coefficients) until every vertex
// clears the domain's margin standoff.
inline Polyline generate_competitor(Point2 p1, Point2 p2, const Domain& domain,
                                    std::uint64_t seed, int n_modes, double amplitude,
                                    int n_vertices = 129) {
    if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
    if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be > 0");
    if (n_vertices < 2) throw std::invalid_argument("n_vertices must be >= 2");
    const Vec2 chord = p2 - p1;
    const double chord_len = chord.norm();
    if (chord_len == 0.0) throw DegenerateCurve("competitor endpoints coincide");
    const Vec2 normal = (1.0 / chord_len) * perp(chord);

    std::mt19937_64 rng(seed);
    double amp = amplitude * chord_len;
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> coeff(static_cast<std::size_t>(n_modes));
        for (double& c : coeff) c = detail::uniform_pm1(rng);

        std::vector<Point2> pts;
        pts.reserve(static_cast<std::size_t>(n_vertices));
        bool ok = true;
        for (int i = 0; i < n_vertices; ++i) {
            const double u = static_cast<double>(i) / (n_vertices - 1);
            double disp = 0.0;
            for (int k = 0; k < n_modes; ++k)
                disp += coeff[static_cast<std::size_t>(k)] * std::sin((k + 1) * M_PI * u);
            const Point2 p{p1.x + u * chord.dx + amp * disp * normal.dx,
                           p1.y + u * chord.dy + amp * disp * normal.dy};
            if (!domain.interior(p)) {
                ok = false;
                break;
            }
            pts.push_back(p);
        }
        if (ok) return make_polyline(std::move(pts));
        amp *= 0.5;
    }
    throw CannotFitInDomain("no competitor fits the domain after 100 attempts");
}

// Machine-readable certificate of one verification run.
struct VerificationReport {
    std::string entry_name;
    double orthogonality_max_residual = 0.0;
    double density_max_rel_error = 0.0;
    double bound = 0.0;
    double minimizer_length = 0.0;
    std::vector<double> competitor_margins; // competitor length - bound, by index
    bool passed = false;
    std::int64_t seed = 0;
    int n_samples = 0;
    int n_competitors = 0;

    // JSON with keys in sorted order and reals printed with 15 significant
    // digits, so identical runs emit byte-identical reports.
    std::string to_json() const;
};

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.14e", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace detail

inline std::string VerificationReport::to_json() const {
    std::string out = "{\n";
    out += "  \"bound\": " + detail::format_real(bound) + ",\n";
    out += "  \"competitor_margins\": [";
    for (std::size_t i = 0; i < competitor_margins.size(); ++i) {
        if (i > 0) out += ", ";
        out += detail::format_real(competitor_margins[i]);
    }
    out += "],\n";
    out += "  \"density_max_rel_error\": " + detail::format_real(density_max_rel_error) + ",\n";
    out += "  \"entry_name\": \"" + detail::json_escape(entry_name) + "\",\n";
    out += "  \"minimizer_length\": " + detail::format_real(minimizer_length) + ",\n";
    out += "  \"n_competitors\": " + std::to_string(n_competitors) + ",\n";
    out += "  \"n_samples\": " + std::to_string(n_samples) + ",\n";
    out += "  \"orthogonality_max_residual\": " + detail::format_real(orthogonality_max_residual) + ",\n";
    out += "  \"passed\": " + std::string(passed ? "true" : "false") + ",\n";
    out += "  \"seed\": " + std::to_string(seed) + "\n";
    out += "}\n";
    return out;
}

// Runs the full certificate: hypothesis checks, calibrated lower bound,
// equality on the minimizer, and the inequality against every competitor.
// Preconditions checked here: all curves share the minimizer's endpoints to
// 1e-9 and the minimizer stays on its g-level set within tol_level.
inline VerificationReport verify_minimizer(const CalibrationPair& pair, const Curve& minimizer,
                                           const std::vector<Curve>& competitors,
                                           const Tolerances& tol = {},
                                           const std::string& entry_name = "",
                                           std::int64_t seed = 42, unsigned threads = 0) {
    const Point2 p1 = curve_start(minimizer);
    const Point2 p2 = curve_end(minimizer);
    for (const Curve& c : competitors) {
        if (distance(curve_start(c), p1) > 1e-9 || distance(curve_end(c), p2) > 1e-9)
            throw EndpointMismatch("competitor endpoints differ from the minimizer's");
    }

    const double g0 = pair.g(p1);
    const double tol_level = tol.tol_level > 0.0 ? tol.tol_level : 1e-8 * (1.0 + std::abs(g0));
    for (const Point2& p : sample_curve(minimizer, 200)) {
        if (std::abs(pair.g(p) - g0) > tol_level)
            throw NotOnLevelCurve("minimizer drifts off its g level set");
    }

    VerificationReport report;
    report.entry_name = entry_name;
    report.seed = seed;
    report.n_samples = tol.n_samples;
    report.n_competitors = static_cast<int>(competitors.size());
    report.orthogonality_max_residual =
        check_orthogonality(pair, tol.n_samples, static_cast<std::uint64_t>(seed));
    report.density_max_rel_error = check_density(pair, tol.n_samples, static_cast<std::uint64_t>(seed));
    report.bound = calibrated_bound(pair, p1, p2);
    report.minimizer_length = weighted_length(minimizer, pair.rho);

    report.competitor_margins.resize(competitors.size());
    parallel_for(
        competitors.size(),
        [&](std::size_t i) {
            report.competitor_margins[i] = weighted_length(competitors[i], pair.rho) - report.bound;
        },
        threads);

    bool ok = report.orthogonality_max_residual <= tol.tol_orth &&
              report.density_max_rel_error <= tol.tol_rho &&
              std::abs(report.minimizer_length - report.bound) <= tol.tol_len * report.bound;
    for (double m : report.competitor_margins)
        if (m < -tol.tol_len * report.bound) ok = false;
    report.passed = ok;
    return report;
}

// Seeded batch of competitors sharing the given endpoints. Competitor i uses
// seed + i, so each curve is reproducible independently of batch size.
inline std::vector<Curve> generate_competitors(Point2 p1, Point2 p2, const Domain& domain,
                                               std::uint64_t seed, int count, int n_modes = 4,
                                               double amplitude = 0.1) {
    std::vector<Curve> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.emplace_back(generate_competitor(p1, p2, domain, seed + static_cast<std::uint64_t>(i),
                                             n_modes, amplitude));
    return out;
}

} // namespace calibgeo
