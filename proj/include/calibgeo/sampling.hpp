#pragma once

#include <cstdint>
#include <vector>

#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"

namespace calibgeo {

// Radical-inverse (van der Corput) value of `index` in the given base.
inline double halton(std::uint64_t index, unsigned base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

// Deterministic low-discrepancy interior points: Halton (2,3) pairs mapped
// into the margin-shrunk bbox and filtered through Domain::interior. The
// seed offsets the Halton index, so distinct seeds give distinct point sets
// while identical seeds reproduce exactly.
inline std::vector<Point2> sample_interior(const Domain& domain, int n, std::uint64_t seed) {
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(n));
    const double x0 = domain.bbox.xmin + domain.margin;
    const double x1 = domain.bbox.xmax - domain.margin;
    const double y0 = domain.bbox.ymin + domain.margin;
    const double y1 = domain.bbox.ymax - domain.margin;
    std::uint64_t index = seed + 1;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 10000ull * static_cast<std::uint64_t>(n) + 100000ull;
    while (out.size() < static_cast<std::size_t>(n)) {
        if (++attempts > max_attempts)
            throw NoConvergence("interior sampling rejected too many points");
        const Point2 p{x0 + (x1 - x0) * halton(index, 2), y0 + (y1 - y0) * halton(index, 3)};
        ++index;
        if (domain.interior(p)) out.push_back(p);
    }
    return out;
}

} // namespace calibgeo
