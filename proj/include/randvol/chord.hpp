#pragma once
// Secants of a polygon parallel to a direction: endpoints, midpoint M(x) and
// the signed midpoint offset m(x).

#include "body.hpp"
#include "geom.hpp"

namespace randvol {

enum class ChordStatus { ok, miss, tangent };

struct Chord {
    V2 x;        // base point on the reference line
    V2 v;        // unit direction
    V2 a, b;     // endpoints, b - a a nonnegative multiple of v
    V2 mid;      // (a+b)/2
    double m;    // <mid - x, v>
    ChordStatus status = ChordStatus::ok;
};

namespace detail {
// Intersection parameters of the line x + t v with the polygon boundary.
// Returns false when the line misses the polygon entirely.
inline bool chord_line(const Poly& P, V2 x, V2 v, double& t0, double& t1) {
    double lo = -1e308, hi = 1e308;
    // clip the line against each edge half-plane (P is convex CCW)
    for (size_t i = 0, n = P.size(); i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n];
        V2 e = b - a;
        // inside: cross(e, p - a) >= 0
        double f0 = cross(e, x - a);
        double fd = cross(e, v);
        if (std::abs(fd) < 1e-14 * (norm(e) * (1.0 + norm(v)))) {
            if (f0 < 0) return false;  // parallel and outside
            continue;
        }
        double t = -f0 / fd;
        if (fd > 0) lo = std::max(lo, t);
        else hi = std::min(hi, t);
    }
    if (lo > hi) return false;
    t0 = lo;
    t1 = hi;
    return true;
}
}  // namespace detail

inline Chord chord(const Poly& P, V2 x, V2 v) {
    Chord c;
    c.x = x;
    c.v = normalized(v);
    double t0, t1;
    if (!detail::chord_line(P, x, c.v, t0, t1)) {
        c.status = ChordStatus::miss;
        return c;
    }
    double scale = detail::coord_scale(P);
    if (t1 - t0 <= 1e-12 * scale) {
        c.status = ChordStatus::tangent;  // grazes a vertex or an edge endpoint
        return c;
    }
    c.a = x + t0 * c.v;
    c.b = x + t1 * c.v;
    c.mid = 0.5 * (c.a + c.b);
    c.m = dot(c.mid - x, c.v);
    return c;
}

inline Chord chord(const Polygon2D& P, V2 x, V2 v) { return chord(P.v, x, v); }

}  // namespace randvol
