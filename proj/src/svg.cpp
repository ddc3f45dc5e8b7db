#include "preeb/svg.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace preeb {

namespace {

constexpr double kCanvas = 640.0;

struct Mapper2D {
    double bound;
    double to_px(double v) const { return (v + bound) / (2.0 * bound) * kCanvas; }
    double to_py(double v) const { return kCanvas - (v + bound) / (2.0 * bound) * kCanvas; }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Zero-crossing position between two grid corners by linear interpolation.
double cross(double a, double b) { return a / (a - b); }

}  // namespace

std::string render_svg(const AlgebraicDomain& dom, const ReebGraph* graph, int grid) {
    if (dom.k != 2) throw DimensionError("render_svg: planar domains only");
    if (grid < 8) throw ConfigError("render_svg: grid too coarse");
    const double R = dom.bound;
    Mapper2D m{R};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas
        << "\" height=\"" << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas
        << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double h = 2.0 * R / grid;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    for (size_t pj = 0; pj < dom.boundary_polys.size(); ++pj) {
        const Polynomial& f = dom.boundary_polys[pj];
        const char* color = palette[pj % 6];
        out << "  <g stroke=\"" << color << "\" stroke-width=\"1.5\" fill=\"none\">\n";

        // Cache one row of values at a time.
        std::vector<double> row0(grid + 1), row1(grid + 1);
        for (int i = 0; i <= grid; ++i) row0[i] = f.eval({-R + i * h, -R});
        for (int j = 0; j < grid; ++j) {
            double y0 = -R + j * h, y1 = y0 + h;
            for (int i = 0; i <= grid; ++i) row1[i] = f.eval({-R + i * h, y1});
            for (int i = 0; i < grid; ++i) {
                double x0 = -R + i * h, x1 = x0 + h;
                double v00 = row0[i], v10 = row0[i + 1];
                double v01 = row1[i], v11 = row1[i + 1];
                int c = (v00 > 0 ? 1 : 0) | (v10 > 0 ? 2 : 0) | (v11 > 0 ? 4 : 0) |
                        (v01 > 0 ? 8 : 0);
                if (c == 0 || c == 15) continue;

                // Edge midpoints where the sign flips.
                std::array<std::array<double, 2>, 4> pt{};
                std::array<bool, 4> on{};
                if ((c & 1) != (c >> 1 & 1)) {  // bottom
                    pt[0] = {x0 + h * cross(v00, v10), y0};
                    on[0] = true;
                }
                if ((c >> 1 & 1) != (c >> 2 & 1)) {  // right
                    pt[1] = {x1, y0 + h * cross(v10, v11)};
                    on[1] = true;
                }
                if ((c >> 3 & 1) != (c >> 2 & 1)) {  // top
                    pt[2] = {x0 + h * cross(v01, v11), y1};
                    on[2] = true;
                }
                if ((c & 1) != (c >> 3 & 1)) {  // left
                    pt[3] = {x0, y0 + h * cross(v00, v01)};
                    on[3] = true;
                }
                std::vector<std::array<double, 2>> pts;
                for (int e = 0; e < 4; ++e)
                    if (on[e]) pts.push_back(pt[e]);
                // Generic cells yield 2 crossings; saddles yield 4, drawn as
                // two chords (pairing is cosmetic at this resolution).
                for (size_t e = 0; e + 1 < pts.size(); e += 2) {
                    out << "    <line x1=\"" << fmt(m.to_px(pts[e][0])) << "\" y1=\""
                        << fmt(m.to_py(pts[e][1])) << "\" x2=\""
                        << fmt(m.to_px(pts[e + 1][0])) << "\" y2=\""
                        << fmt(m.to_py(pts[e + 1][1])) << "\"/>\n";
                }
            }
            std::swap(row0, row1);
        }
        out << "  </g>\n";
    }

    if (graph) {
        ReebGraph c = graph->canonical_order();
        out << "  <g stroke=\"#111111\" stroke-width=\"2\" fill=\"none\">\n";
        for (const auto& e : c.edges()) {
            const auto& va = c.vertices()[e.a];
            const auto& vb = c.vertices()[e.b];
            if (e.polyline.size() >= 2) {
                out << "    <polyline points=\"";
                for (size_t q = 0; q < e.polyline.size(); ++q) {
                    if (q) out << ' ';
                    out << fmt(m.to_px(e.polyline[q][0])) << ','
                        << fmt(m.to_py(e.polyline[q][1]));
                }
                out << "\"/>\n";
            } else if (va.embed && vb.embed) {
                out << "    <line x1=\"" << fmt(m.to_px((*va.embed)[0])) << "\" y1=\""
                    << fmt(m.to_py((*va.embed)[1])) << "\" x2=\""
                    << fmt(m.to_px((*vb.embed)[0])) << "\" y2=\""
                    << fmt(m.to_py((*vb.embed)[1])) << "\"/>\n";
            }
        }
        out << "  </g>\n";
        out << "  <g fill=\"#111111\">\n";
        for (const auto& v : c.vertices()) {
            if (!v.embed) continue;
            out << "    <circle cx=\"" << fmt(m.to_px((*v.embed)[0])) << "\" cy=\""
                << fmt(m.to_py((*v.embed)[1])) << "\" r=\"4\"/>\n";
        }
        out << "  </g>\n";
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace preeb
