#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "calibgeo/geometry.hpp"

namespace calibgeo {
namespace detail {

class SvgCanvas {
public:
    SvgCanvas(BBox world, int width, int height) : world_(world), width_(width), height_(height) {
        // 5% padding around the domain box.
        const double pad_x = 0.05 * world_.width();
        const double pad_y = 0.05 * world_.height();
        world_.xmin -= pad_x;
        world_.xmax += pad_x;
        world_.ymin -= pad_y;
        world_.ymax += pad_y;
    }

    std::string header() const {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                      "viewBox=\"0 0 %d %d\">\n",
                      width_, height_, width_, height_);
        return std::string(buf) +
               "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    std::string rect(BBox b, const char* stroke) const {
        const auto [x0, y0] = to_px({b.xmin, b.ymax});
        const auto [x1, y1] = to_px({b.xmax, b.ymin});
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
                      "stroke=\"%s\" stroke-width=\"1\"/>\n",
                      x0, y0, x1 - x0, y1 - y0, stroke);
        return buf;
    }

    std::string polyline(const std::vector<Point2>& pts, const char* stroke, double width) const {
        std::string out = "<polyline fill=\"none\" stroke=\"";
        out += stroke;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "\" stroke-width=\"%.2f\" points=\"", width);
        out += buf;
        for (const Point2& p : pts) {
            const auto [px, py] = to_px(p);
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px, py);
            out += buf;
        }
        out += "\"/>\n";
        return out;
    }

private:
    std::pair<double, double> to_px(Point2 p) const {
        const double px = (p.x - world_.xmin) / world_.width() * width_;
        const double py = (world_.ymax - p.y) / world_.height() * height_; // y flips
        return {px, py};
    }

    BBox world_;
    int width_;
    int height_;
};

} // namespace detail

// Domain box plus the minimizer (bold) and any competitor curves (thin).
inline std::string render_svg(BBox domain_box, const std::vector<Point2>& minimizer,
                              const std::vector<std::vector<Point2>>& competitors,
                              int width = 800, int height = 600) {
    detail::SvgCanvas canvas(domain_box, width, height);
    std::string out = canvas.header();
    out += canvas.rect(domain_box, "#888888");
    for (const auto& c : competitors) out += canvas.polyline(c, "#7aa6d6", 0.8);
    out += canvas.polyline(minimizer, "#c62828", 2.0);
    out += "</svg>\n";
    return out;
}

} // namespace calibgeo
