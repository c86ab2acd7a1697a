#pragma once
// Steiner symmetrization of a polygon with respect to the line through the
// origin perpendicular to v. Exact piecewise-linear construction: one output
// vertex pair per distinct projection value of the input vertices.

#include <map>

#include "chord.hpp"
#include "geom.hpp"

namespace randvol {

namespace detail {
// Chord extent [t0,t1] of P along v at abscissa s on the axis w = perp(v).
// At the extreme abscissae the chord may degenerate to a point or an edge.
inline bool extent_at(const Poly& P, V2 w, V2 v, double s, double& t0, double& t1) {
    // Work directly from the vertices: max/min of <x,v> over points with <x,w> = s
    // on the boundary. Evaluate by clipping each edge against the vertical line.
    bool any = false;
    t0 = 1e308;
    t1 = -1e308;
    size_t n = P.size();
    double scale = coord_scale(P);
    for (size_t i = 0; i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n];
        double sa = dot(a, w), sb = dot(b, w);
        if (std::abs(sa - s) <= 1e-12 * scale) {
            t0 = std::min(t0, dot(a, v));
            t1 = std::max(t1, dot(a, v));
            any = true;
        }
        if ((sa < s && sb > s) || (sa > s && sb < s)) {
            double f = (s - sa) / (sb - sa);
            double t = dot(a + f * (b - a), v);
            t0 = std::min(t0, t);
            t1 = std::max(t1, t);
            any = true;
        }
    }
    return any;
}
}  // namespace detail

inline Poly steiner_symmetral(const Poly& P, V2 vdir) {
    V2 v = normalized(vdir);
    V2 w = perp(v);
    std::vector<double> ss;
    for (const V2& p : P) ss.push_back(dot(p, w));
    std::sort(ss.begin(), ss.end());
    double scale = detail::coord_scale(P);
    ss.erase(std::unique(ss.begin(), ss.end(),
                         [&](double a, double b) { return std::abs(a - b) <= 1e-12 * scale; }),
             ss.end());
    Poly up, down;
    for (double s : ss) {
        double t0, t1;
        if (!detail::extent_at(P, w, v, s, t0, t1)) continue;
        double L = t1 - t0;
        up.push_back(s * w + (0.5 * L) * v);
        down.push_back(s * w - (0.5 * L) * v);
    }
    Poly out = up;
    for (size_t i = down.size(); i-- > 0;) out.push_back(down[i]);
    return canonical_polygon(out);
}

inline Polygon2D steiner_symmetral(const Polygon2D& P, V2 v) {
    return Polygon2D{steiner_symmetral(P.v, v)};
}

}  // namespace randvol
