#pragma once
// Planar vectors, exact polygon measures, hulls and the d-dim simplex volume kernel.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace randvol {

struct V2 {
    double x = 0, y = 0;
};

inline V2 operator+(V2 a, V2 b) { return {a.x + b.x, a.y + b.y}; }
inline V2 operator-(V2 a, V2 b) { return {a.x - b.x, a.y - b.y}; }
inline V2 operator*(double s, V2 a) { return {s * a.x, s * a.y}; }
inline V2 operator*(V2 a, double s) { return {s * a.x, s * a.y}; }
inline V2 operator/(V2 a, double s) { return {a.x / s, a.y / s}; }
inline V2& operator+=(V2& a, V2 b) { a.x += b.x; a.y += b.y; return a; }
inline V2& operator-=(V2& a, V2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(V2 a, V2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(V2 a, V2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(V2 a) { return dot(a, a); }
inline double norm(V2 a) { return std::sqrt(norm2(a)); }
inline V2 perp(V2 a) { return {-a.y, a.x}; }  // +90 degrees
inline V2 normalized(V2 a) { double n = norm(a); return {a.x / n, a.y / n}; }

// 2x2 symmetric-friendly matrix helpers used by inertia / ellipses.
struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;  // [[a,b],[c,d]]
};
inline V2 mul(const Mat2& m, V2 v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
inline Mat2 mul(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}
inline double det(const Mat2& m) { return m.a * m.d - m.b * m.c; }
inline Mat2 inverse(const Mat2& m) {
    double dd = det(m);
    return {m.d / dd, -m.b / dd, -m.c / dd, m.a / dd};
}
inline Mat2 transpose(const Mat2& m) { return {m.a, m.c, m.b, m.d}; }

using Poly = std::vector<V2>;

inline double polygon_area(const Poly& P) {
    double s = 0;
    for (size_t i = 0, n = P.size(); i < n; ++i) {
        const V2& p = P[i];
        const V2& q = P[(i + 1) % n];
        s += cross(p, q);
    }
    return 0.5 * s;
}

inline V2 polygon_centroid(const Poly& P) {
    double a6 = 0;
    V2 c{0, 0};
    for (size_t i = 0, n = P.size(); i < n; ++i) {
        const V2& p = P[i];
        const V2& q = P[(i + 1) % n];
        double w = cross(p, q);
        a6 += w;
        c += w * (p + q);
    }
    return c / (3.0 * a6);
}

// Second moments about the centroid: M_ij = integral over P of x_i x_j dA
// in coordinates centered at the centroid.
inline Mat2 polygon_inertia(const Poly& P) {
    double ixx = 0, iyy = 0, ixy = 0, a2 = 0;
    for (size_t i = 0, n = P.size(); i < n; ++i) {
        const V2& p = P[i];
        const V2& q = P[(i + 1) % n];
        double w = cross(p, q);
        a2 += w;
        ixx += w * (p.x * p.x + p.x * q.x + q.x * q.x);
        iyy += w * (p.y * p.y + p.y * q.y + q.y * q.y);
        ixy += w * (p.x * q.y + 2 * p.x * p.y + 2 * q.x * q.y + q.x * p.y);
    }
    double A = 0.5 * a2;
    V2 g = polygon_centroid(P);
    ixx = ixx / 12 - A * g.x * g.x;
    iyy = iyy / 12 - A * g.y * g.y;
    ixy = ixy / 24 - A * g.x * g.y;
    return {ixx, ixy, ixy, iyy};
}

namespace detail {
inline double coord_scale(const Poly& P) {
    double m = 1.0;
    for (const V2& v : P) m = std::max({m, std::abs(v.x), std::abs(v.y)});
    return m;
}
}  // namespace detail

// Monotone-chain hull; collinear points dropped. Result CCW starting at the
// lexicographically smallest vertex.
inline Poly convex_hull(Poly pts) {
    std::sort(pts.begin(), pts.end(), [](V2 a, V2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(), [](V2 a, V2 b) {
                  return a.x == b.x && a.y == b.y;
              }),
              pts.end());
    size_t n = pts.size();
    if (n < 3) return pts;
    // exact strict-turn chain first: popping with a tolerance here can discard
    // a true corner when rounding noise promotes a boundary point to the
    // lexicographic minimum
    std::vector<V2> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    // then thin near-collinear vertices on the convex ring, where removal is
    // safe: each dropped vertex sits in an eps-sliver of its neighbours' chord
    double eps = 1e-12 * detail::coord_scale(pts) * detail::coord_scale(pts);
    bool again = true;
    while (again && h.size() > 2) {
        again = false;
        size_t m = h.size();
        for (size_t i = 0; i < m; ++i) {
            V2 a = h[(i + m - 1) % m], b = h[i], c = h[(i + 1) % m];
            if (cross(b - a, c - b) <= eps) {
                h.erase(h.begin() + i);
                again = true;
                break;
            }
        }
    }
    if (h.size() > 2)
        std::rotate(h.begin(),
                    std::min_element(h.begin(), h.end(),
                                     [](V2 a, V2 b) {
                                         return a.x < b.x || (a.x == b.x && a.y < b.y);
                                     }),
                    h.end());
    return h;
}

// CCW order, strictly convex (collinear removed), first vertex lexicographically
// smallest. Throws on degenerate input.
inline Poly canonical_polygon(const Poly& pts) {
    Poly h = convex_hull(pts);
    if (h.size() < 3) throw std::invalid_argument("degenerate polygon: hull has fewer than 3 vertices");
    return h;
}

inline bool is_strictly_convex_ccw(const Poly& P) {
    size_t n = P.size();
    if (n < 3) return false;
    double eps = 1e-12 * detail::coord_scale(P) * detail::coord_scale(P);
    for (size_t i = 0; i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n], c = P[(i + 2) % n];
        if (cross(b - a, c - b) <= eps) return false;
    }
    return true;
}

// Signed distance sense: >0 strictly inside for CCW polygons; tol in absolute units.
inline bool point_in_convex(const Poly& P, V2 x, double tol = 1e-12) {
    for (size_t i = 0, n = P.size(); i < n; ++i) {
        if (cross(P[(i + 1) % n] - P[i], x - P[i]) < -tol) return false;
    }
    return true;
}

inline double support(const Poly& P, V2 u) {
    double h = dot(P[0], u);
    for (const V2& v : P) h = std::max(h, dot(v, u));
    return h;
}

inline double width(const Poly& P, V2 u) { return support(P, u) + support(P, {-u.x, -u.y}); }

// Radial function about the origin (origin must be interior).
inline double radial(const Poly& P, V2 u) {
    if (!point_in_convex(P, {0, 0})) throw std::invalid_argument("radial: origin not inside polygon");
    double best = 0;
    for (size_t i = 0, n = P.size(); i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n];
        double den = cross(u, b - a);
        if (std::abs(den) < 1e-300) continue;
        double t = cross(a, b - a) / den;
        if (t <= 0) continue;
        V2 p = t * u;
        double s = dot(p - a, b - a) / norm2(b - a);
        if (s >= -1e-9 && s <= 1 + 1e-9) best = std::max(best, t);
    }
    return best;
}

// Clip a convex polygon by the half-plane dot(x,u) <= c (Sutherland-Hodgman, one plane).
inline Poly clip_halfplane(const Poly& P, V2 u, double c) {
    Poly out;
    size_t n = P.size();
    for (size_t i = 0; i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n];
        double da = dot(a, u) - c, db = dot(b, u) - c;
        if (da <= 0) out.push_back(a);
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
            double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

// |det| of a d x d matrix given as column vectors, via partial-pivot elimination.
inline double abs_det(std::vector<std::array<double, 16>>& cols, int d) {
    double det = 1.0;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int r = k + 1; r < d; ++r)
            if (std::abs(cols[k][r]) > std::abs(cols[k][piv])) piv = r;
        if (cols[k][piv] == 0.0) return 0.0;
        if (piv != k)
            for (int j = k; j < d; ++j) std::swap(cols[j][k], cols[j][piv]);
        det *= cols[k][k];
        for (int r = k + 1; r < d; ++r) {
            double f = cols[k][r] / cols[k][k];
            for (int j = k + 1; j < d; ++j) cols[j][r] -= f * cols[j][k];
        }
    }
    return std::abs(det);
}

}  // namespace randvol
