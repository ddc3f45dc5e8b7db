#include "preeb/generators.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace preeb {

namespace {

// R^2 - x1^2 - x2^2: positive inside the circle of radius R about the origin.
Polynomial outer_circle(double R) {
    return Polynomial(2, {{{0, 0}, R * R}, {{2, 0}, -1.0}, {{0, 2}, -1.0}});
}

// (x1-cx)^2 + (x2-cy)^2 - r^2 expanded: positive outside the hole.
Polynomial hole_circle(double cx, double cy, double r) {
    return Polynomial(2, {{{2, 0}, 1.0},
                          {{0, 2}, 1.0},
                          {{1, 0}, -2.0 * cx},
                          {{0, 1}, -2.0 * cy},
                          {{0, 0}, cx * cx + cy * cy - r * r}});
}

}  // namespace

AlgebraicDomain make_chain(int l, double r_outer, double r_hole, double gap) {
    if (l < 1) throw GeometryError("make_chain: l must be >= 1");
    if (r_hole <= 0.0) throw GeometryError("make_chain: hole radius must be > 0");
    if (gap <= 0.0) throw GeometryError("make_chain: gap must be > 0");

    const int holes = l - 1;
    std::vector<Polynomial> polys;
    double R = r_outer;
    if (holes == 0) {
        if (R <= 0.0) R = 1.0;
        polys.push_back(outer_circle(R));
        return AlgebraicDomain(2, polys, R + 0.5);
    }

    const double span = holes * 2.0 * r_hole + (holes - 1) * gap;
    const double r_auto = span / 2.0 + r_hole + 0.5;
    if (R <= 0.0) R = r_auto;
    if (span / 2.0 + r_hole >= R)
        throw GeometryError("make_chain: holes do not fit inside the outer circle");

    polys.push_back(outer_circle(R));
    for (int i = 0; i < holes; ++i) {
        double cx = -span / 2.0 + r_hole + i * (2.0 * r_hole + gap);
        polys.push_back(hole_circle(cx, 0.0, r_hole));
    }
    return AlgebraicDomain(2, polys, R + 0.5);
}

AlgebraicDomain make_stack(int l, double r_outer, double r_hole, double gap,
                           double stagger) {
    if (l < 1) throw GeometryError("make_stack: l must be >= 1");
    if (r_hole <= 0.0) throw GeometryError("make_stack: hole radius must be > 0");
    if (gap <= 0.0) throw GeometryError("make_stack: gap must be > 0");
    if (stagger < 0.0) throw GeometryError("make_stack: stagger must be >= 0");

    const int holes = l - 1;
    std::vector<Polynomial> polys;
    double R = r_outer;
    if (holes == 0) {
        if (R <= 0.0) R = 1.0;
        polys.push_back(outer_circle(R));
        return AlgebraicDomain(2, polys, R + 0.5);
    }
    if (holes >= 2 && stagger == 0.0)
        throw GeometryError("make_stack: distinct hole radii require stagger > 0 "
                            "when more than one hole is present");

    std::vector<double> radii(holes);
    for (int i = 0; i < holes; ++i) radii[i] = r_hole + i * stagger;

    // Centers along the x2-axis, consecutive holes separated by gap.
    std::vector<double> centers(holes, 0.0);
    for (int i = 1; i < holes; ++i)
        centers[i] = centers[i - 1] + radii[i - 1] + radii[i] + gap;
    const double lo = centers.front() - radii.front();
    const double hi = centers.back() + radii.back();
    const double shift = -(lo + hi) / 2.0;
    for (double& c : centers) c += shift;

    double extent = 0.0;
    for (int i = 0; i < holes; ++i)
        extent = std::max(extent, std::fabs(centers[i]) + radii[i]);
    const double r_auto = extent + 0.5;
    if (R <= 0.0) R = r_auto;
    if (extent >= R)
        throw GeometryError("make_stack: holes do not fit inside the outer circle");

    polys.push_back(outer_circle(R));
    for (int i = 0; i < holes; ++i) polys.push_back(hole_circle(0.0, centers[i], radii[i]));
    return AlgebraicDomain(2, polys, R + 0.5);
}

}  // namespace preeb
