#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "calibgeo/errors.hpp"
#include "calibgeo/geometry.hpp"

namespace calibgeo {

// Polyline file format: header "x,y", one point per row, start to end.
// 15 significant digits per coordinate.
inline std::string polyline_to_csv(const Polyline& poly) {
    std::string out = "x,y\n";
    char buf[96];
    for (const Point2& p : poly.points) {
        std::snprintf(buf, sizeof(buf), "%.14e,%.14e\n", p.x, p.y);
        out += buf;
    }
    return out;
}

inline void write_polyline_csv(const std::string& path, const Polyline& poly) {
    std::ofstream file(path);
    if (!file) throw Error("IoError", "cannot open '" + path + "' for writing");
    file << polyline_to_csv(poly);
}

inline Polyline parse_polyline_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("CsvFormat", "empty polyline file");
    // Tolerate an optional UTF-8 BOM and surrounding whitespace on the header.
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line != "x,y") throw Error("CsvFormat", "expected header 'x,y', got '" + line + "'");

    std::vector<Point2> pts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double x = 0.0, y = 0.0;
        char trailing = 0;
        const int got = std::sscanf(line.c_str(), " %lf , %lf %c", &x, &y, &trailing);
        if (got != 2)
            throw Error("CsvFormat", "malformed row at line " + std::to_string(lineno));
        pts.push_back({x, y});
    }
    return make_polyline(std::move(pts));
}

inline Polyline read_polyline_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error("IoError", "cannot open '" + path + "' for reading");
    return parse_polyline_csv(file);
}

} // namespace calibgeo
