#pragma once
// Bodies derived from a polygon: the centroid body (support-sampled, exact per
// direction), the projection body (exact difference-body rotation at d=2), the
// polar/projection Petty product, the intersection body area, and the planar
// case of the chord-decomposition volume formula. Quadrature grids carry event
// refinement wherever a chord or a splitting line passes through a vertex.

#include "polar.hpp"
#include "geom.hpp"
#include "body.hpp"

namespace randvol {

namespace detail {

// Sorted angle grid on [0, 2pi): n uniform points plus the event angles,
// deduplicated. Integration is trapezoidal segment-by-segment with wraparound.
inline std::vector<double> angle_grid(int n, const std::vector<double>& events) {
    std::vector<double> g;
    g.reserve(n + events.size());
    for (int k = 0; k < n; ++k) g.push_back(2 * M_PI * k / n);
    for (double e : events) {
        double a = std::fmod(e, 2 * M_PI);
        if (a < 0) a += 2 * M_PI;
        g.push_back(a);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end(),
                        [](double a, double b) { return b - a <= 1e-12; }),
            g.end());
    if (!g.empty() && g.front() <= 1e-12 && 2 * M_PI - g.back() <= 1e-12) g.pop_back();
    return g;
}

inline double integrate_circle(const std::vector<double>& grid,
                               const std::vector<double>& f) {
    double s = 0;
    size_t n = grid.size();
    for (size_t k = 0; k < n; ++k) {
        size_t j = (k + 1) % n;
        double dt = (j == 0 ? grid[0] + 2 * M_PI : grid[j]) - grid[k];
        s += 0.5 * dt * (f[k] + f[j]);
    }
    return s;
}

// Event angles at which a line through the origin in direction phi passes
// through a vertex of P (both orientations).
inline std::vector<double> vertex_angles(const Poly& P, double shift) {
    std::vector<double> ev;
    for (const V2& p : P) {
        double a = std::atan2(p.y, p.x) + shift;
        ev.push_back(a);
        ev.push_back(a + M_PI);
    }
    return ev;
}

}  // namespace detail

struct SupportSampledBody {
    std::vector<V2> dirs;
    std::vector<double> h;
    Poly body;          // intersection of the supporting half-planes
    double area = 0;
    double area_error = 0;  // half-resolution consistency gap
};

namespace detail {
inline Poly halfplane_body(const std::vector<V2>& dirs, const std::vector<double>& h,
                           double radius) {
    Poly box{{-radius, -radius}, {radius, -radius}, {radius, radius}, {-radius, radius}};
    for (size_t k = 0; k < dirs.size(); ++k) {
        box = clip_halfplane(box, dirs[k], h[k]);
        if (box.size() < 3) throw std::runtime_error("support body collapsed");
    }
    return canonical_polygon(box);
}
}  // namespace detail

// Centroid body of a polygon with centroid at the origin: support function
// h(u) = (1/A) * integral over P of |<u,x>|, evaluated exactly per direction
// by clipping P along the line u-perp through o (the integral over the
// positive part doubles, since the full first moment vanishes).
inline SupportSampledBody centroid_body(const Polygon2D& P, int n_dirs = 512) {
    if (n_dirs < 64) throw std::invalid_argument("centroid_body: n_dirs >= 64");
    const Poly& Q = P.v;
    double A = polygon_area(Q);
    double scale = detail::coord_scale(Q);
    V2 g = polygon_centroid(Q);
    if (norm(g) > 1e-9 * scale)
        throw std::invalid_argument("centroid_body: centroid must be at the origin");
    auto eval = [&](int n) {
        SupportSampledBody S;
        std::vector<double> grid = detail::angle_grid(n, detail::vertex_angles(Q, M_PI / 2));
        double rmax = 0;
        for (const V2& p : Q) rmax = std::max(rmax, norm(p));
        for (double a : grid) {
            V2 u{std::cos(a), std::sin(a)};
            // positive part P ∩ {<u,x> >= 0}
            Poly pos = clip_halfplane(Q, {-u.x, -u.y}, 0.0);
            double hu = 0;
            if (pos.size() >= 3) {
                double ap = polygon_area(pos);
                if (ap > 1e-300) {
                    V2 gp = polygon_centroid(pos);
                    hu = 2.0 / A * ap * dot(u, gp);
                }
            }
            if (hu <= 0) throw std::runtime_error("centroid_body: nonpositive support value");
            S.dirs.push_back(u);
            S.h.push_back(hu);
        }
        S.body = detail::halfplane_body(S.dirs, S.h, 4 * rmax + 1);
        S.area = polygon_area(S.body);
        return S;
    };
    SupportSampledBody S = eval(n_dirs);
    SupportSampledBody S2 = eval(n_dirs / 2);
    S.area_error = std::abs(S.area - S2.area) + 1e-12 * S.area;
    return S;
}

// Minkowski sum of two convex CCW polygons by merging edge sequences in angle
// order, starting both at the bottom-most (then left-most) vertex.
inline Poly minkowski_sum(Poly A, Poly B) {
    auto reorder = [](Poly& P) {
        size_t lo = 0;
        for (size_t i = 1; i < P.size(); ++i)
            if (P[i].y < P[lo].y || (P[i].y == P[lo].y && P[i].x < P[lo].x)) lo = i;
        std::rotate(P.begin(), P.begin() + lo, P.end());
    };
    reorder(A);
    reorder(B);
    auto ang = [](V2 e) {
        double a = std::atan2(e.y, e.x);
        if (a < -1e-15) a += 2 * M_PI;
        return a;
    };
    size_t na = A.size(), nb = B.size(), ia = 0, ib = 0;
    Poly out;
    V2 cur = A[0] + B[0];
    out.push_back(cur);
    while (ia < na || ib < nb) {
        V2 ea = ia < na ? A[(ia + 1) % na] - A[ia] : V2{0, 0};
        V2 eb = ib < nb ? B[(ib + 1) % nb] - B[ib] : V2{0, 0};
        V2 step;
        if (ib >= nb || (ia < na && ang(ea) <= ang(eb))) {
            step = ea;
            ++ia;
        } else {
            step = eb;
            ++ib;
        }
        cur = cur + step;
        out.push_back(cur);
    }
    return canonical_polygon(out);
}

// Projection body at d=2: support in direction u is the width of P in the
// direction perpendicular to u, so the body is the 90-degree rotation of the
// difference body P + (-P). Exact polygon arithmetic.
inline Polygon2D projection_body(const Polygon2D& P) {
    Poly neg;
    for (const V2& p : P.v) neg.push_back({-p.x, -p.y});
    neg = canonical_polygon(neg);
    Poly D = minkowski_sum(P.v, neg);
    for (V2& p : D) p = {-p.y, p.x};
    return Polygon2D{canonical_polygon(D)};
}

// V(P)^{d-1} V((Pi P)^*) at d=2; maximal (pi^2/4) exactly for discs.
inline double petty_product(const Polygon2D& P) {
    Polygon2D PiP = projection_body(P);
    Poly dual = polar_dual(PiP.v);
    return polygon_area(P.v) * polygon_area(dual);
}

// Area of the intersection body: radial function = chord length of P through
// the origin, area = (1/2) integral of rho^2 over the circle. Trapezoid rule
// on a vertex-refined grid; optional half-resolution consistency gap.
inline double intersection_body_area(const Polygon2D& P, int n_dirs = 1024,
                                     double* error_out = nullptr) {
    if (n_dirs < 128) throw std::invalid_argument("intersection_body_area: n_dirs >= 128");
    const Poly& Q = P.v;
    if (!point_in_convex(Q, {0, 0}, -1e-12 * detail::coord_scale(Q)))
        throw std::invalid_argument("intersection_body_area: origin must be interior");
    auto eval = [&](int n) {
        std::vector<double> grid = detail::angle_grid(n, detail::vertex_angles(Q, 0.0));
        std::vector<double> f(grid.size());
        for (size_t k = 0; k < grid.size(); ++k) {
            V2 d{std::cos(grid[k]), std::sin(grid[k])};
            double rho = radial(Q, d) + radial(Q, {-d.x, -d.y});
            f[k] = 0.5 * rho * rho;
        }
        return detail::integrate_circle(grid, f);
    };
    double a = eval(n_dirs);
    if (error_out) *error_out = std::abs(a - eval(n_dirs / 2)) + 1e-12 * a;
    return a;
}

// Planar case of the chord-decomposition identity: for a polygon with centroid
// at the origin, (1/2) * integral over directions of (chord length)^2 times
// the one-dimensional pinned moment of the chord equals the area. For a chord
// split by o into lengths a and b the 1-D moment is (a^2+b^2)/(2(a+b)^2).
// Returns (right side) - area; |residual| is pure quadrature error.
inline double busemann_formula_residual(const Polygon2D& P, int n_dirs = 1024,
                                        double* error_out = nullptr) {
    if (n_dirs < 128) throw std::invalid_argument("busemann_formula_residual: n_dirs >= 128");
    const Poly& Q = P.v;
    double scale = detail::coord_scale(Q);
    if (norm(polygon_centroid(Q)) > 1e-9 * scale)
        throw std::invalid_argument("busemann_formula_residual: centroid must be at the origin");
    auto eval = [&](int n) {
        std::vector<double> grid = detail::angle_grid(n, detail::vertex_angles(Q, 0.0));
        std::vector<double> f(grid.size());
        for (size_t k = 0; k < grid.size(); ++k) {
            V2 d{std::cos(grid[k]), std::sin(grid[k])};
            double a = radial(Q, d), b = radial(Q, {-d.x, -d.y});
            double L = a + b;
            double e1 = (a * a + b * b) / (2 * L * L);
            f[k] = L * L * e1;
        }
        return 0.5 * detail::integrate_circle(grid, f);
    };
    double rhs = eval(n_dirs);
    if (error_out) *error_out = std::abs(rhs - eval(n_dirs / 2)) + 1e-12 * rhs;
    return rhs - polygon_area(Q);
}

}  // namespace randvol
