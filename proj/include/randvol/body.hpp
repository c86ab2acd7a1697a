#pragma once
// The Body variant: exact 2-D polygons plus d-dimensional balls, ellipsoids and
// simplices, with measures, affine maps and support/radial functionals.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>

#include "geom.hpp"

namespace randvol {

using VecD = std::vector<double>;
using MatD = std::vector<VecD>;  // row-major

struct Polygon2D {
    Poly v;  // strictly convex, CCW, lexicographically smallest vertex first
};

struct Ball {
    int d = 2;
    double r = 1.0;
    VecD c;  // size d
};

// Point set {c + F u : |u| <= 1}. F is a general nonsingular frame so that
// sampling composes exactly under affine maps; shape() gives the SPD matrix F F^T.
struct Ellipsoid {
    int d = 2;
    MatD F;
    VecD c;
};

struct Simplex {
    int d = 2;
    std::vector<VecD> v;  // d+1 vertices
};

using Body = std::variant<Polygon2D, Ball, Ellipsoid, Simplex>;

inline int dim(const Body& K) {
    if (std::holds_alternative<Polygon2D>(K)) return 2;
    if (auto* b = std::get_if<Ball>(&K)) return b->d;
    if (auto* e = std::get_if<Ellipsoid>(&K)) return e->d;
    return std::get<Simplex>(K).d;
}

inline MatD identityM(int d) {
    MatD m(d, VecD(d, 0.0));
    for (int i = 0; i < d; ++i) m[i][i] = 1.0;
    return m;
}

inline MatD matmul(const MatD& A, const MatD& B) {
    int n = (int)A.size(), m = (int)B[0].size(), k = (int)B.size();
    MatD C(n, VecD(m, 0.0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l)
            for (int j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    return C;
}

inline VecD matvec(const MatD& A, const VecD& x) {
    VecD y(A.size(), 0.0);
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

inline double mat_det(MatD A) {
    int d = (int)A.size();
    double det = 1.0;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int r = k + 1; r < d; ++r)
            if (std::abs(A[r][k]) > std::abs(A[piv][k])) piv = r;
        if (A[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(A[piv], A[k]);
            det = -det;
        }
        det *= A[k][k];
        for (int r = k + 1; r < d; ++r) {
            double f = A[r][k] / A[k][k];
            for (int j = k; j < d; ++j) A[r][j] -= f * A[k][j];
        }
    }
    return det;
}

inline double gamma_half_ln(double x) { return std::lgamma(x); }

// kappa_d = V(B^d) = pi^{d/2} / Gamma(d/2 + 1)
inline double kappa(int d) {
    return std::exp(0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d + 1.0));
}

inline double volume(const Body& K) {
    if (auto* p = std::get_if<Polygon2D>(&K)) return polygon_area(p->v);
    if (auto* b = std::get_if<Ball>(&K)) return kappa(b->d) * std::pow(b->r, b->d);
    if (auto* e = std::get_if<Ellipsoid>(&K)) return kappa(e->d) * std::abs(mat_det(e->F));
    const Simplex& s = std::get<Simplex>(K);
    MatD m(s.d, VecD(s.d));
    for (int j = 0; j < s.d; ++j)
        for (int i = 0; i < s.d; ++i) m[i][j] = s.v[j + 1][i] - s.v[0][i];
    double f = 1.0;
    for (int i = 2; i <= s.d; ++i) f *= i;
    return std::abs(mat_det(m)) / f;
}

// Exact volume barycenter.
inline VecD centroid_of(const Body& K) {
    if (auto* p = std::get_if<Polygon2D>(&K)) {
        V2 g = polygon_centroid(p->v);
        return {g.x, g.y};
    }
    if (auto* b = std::get_if<Ball>(&K)) return b->c;
    if (auto* e = std::get_if<Ellipsoid>(&K)) return e->c;
    const Simplex& s = std::get<Simplex>(K);
    VecD g(s.d, 0.0);
    for (const VecD& v : s.v)
        for (int i = 0; i < s.d; ++i) g[i] += v[i] / (s.d + 1);
    return g;
}

inline Body make_polygon(const Poly& pts) {
    if (pts.size() < 3) throw std::invalid_argument("make_polygon: need at least 3 points");
    return Polygon2D{canonical_polygon(pts)};
}

inline Body make_polygon(const std::vector<std::pair<double, double>>& pts) {
    Poly p;
    for (auto& q : pts) p.push_back({q.first, q.second});
    return make_polygon(p);
}

// kind: "ball" (unit ball B^d), "simplex" (conv{0,e_1..e_d}), "square" ([-1,1]^2),
// "regular_polygon" (n-gon inscribed in the unit circle, edge midpoints on the axes).
inline Body standard_body(const std::string& kind, int arg) {
    if (kind == "ball") {
        if (arg < 1) throw std::invalid_argument("ball dimension must be >= 1");
        return Ball{arg, 1.0, VecD(arg, 0.0)};
    }
    if (kind == "simplex") {
        if (arg < 1) throw std::invalid_argument("simplex dimension must be >= 1");
        Simplex s;
        s.d = arg;
        s.v.assign(arg + 1, VecD(arg, 0.0));
        for (int i = 0; i < arg; ++i) s.v[i + 1][i] = 1.0;
        return s;
    }
    if (kind == "square") {
        return make_polygon(Poly{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    }
    if (kind == "regular_polygon") {
        if (arg < 3) throw std::invalid_argument("regular polygon needs >= 3 vertices");
        Poly p;
        for (int k = 0; k < arg; ++k) {
            double a = M_PI / arg + 2.0 * M_PI * k / arg;
            p.push_back({std::cos(a), std::sin(a)});
        }
        return make_polygon(p);
    }
    throw std::invalid_argument("unknown standard body kind: " + kind);
}

struct PolygonMeasures {
    double area;
    V2 centroid;
    Mat2 inertia;  // about the centroid
};

inline PolygonMeasures polygon_measures(const Polygon2D& P) {
    return {polygon_area(P.v), polygon_centroid(P.v), polygon_inertia(P.v)};
}

inline Body affine_apply(const MatD& A, const VecD& b, const Body& K) {
    int d = dim(K);
    if ((int)A.size() != d || (int)b.size() != d) throw std::invalid_argument("affine_apply: dimension mismatch");
    double dA = mat_det(A);
    if (std::abs(dA) < 1e-300) throw std::invalid_argument("affine_apply: singular matrix");
    if (auto* p = std::get_if<Polygon2D>(&K)) {
        Poly out;
        for (const V2& v : p->v) {
            VecD y = matvec(A, {v.x, v.y});
            out.push_back({y[0] + b[0], y[1] + b[1]});
        }
        return Polygon2D{canonical_polygon(out)};  // re-orients CCW after reflections
    }
    if (auto* bl = std::get_if<Ball>(&K)) {
        MatD F(d, VecD(d, 0.0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) F[i][j] = A[i][j] * bl->r;
        VecD c = matvec(A, bl->c);
        for (int i = 0; i < d; ++i) c[i] += b[i];
        return Ellipsoid{d, F, c};
    }
    if (auto* e = std::get_if<Ellipsoid>(&K)) {
        VecD c = matvec(A, e->c);
        for (int i = 0; i < d; ++i) c[i] += b[i];
        return Ellipsoid{d, matmul(A, e->F), c};
    }
    const Simplex& s = std::get<Simplex>(K);
    Simplex out{s.d, {}};
    for (const VecD& v : s.v) {
        VecD y = matvec(A, v);
        for (int i = 0; i < d; ++i) y[i] += b[i];
        out.v.push_back(y);
    }
    return out;
}

inline MatD ellipsoid_shape(const Ellipsoid& e) {
    MatD Ft(e.d, VecD(e.d));
    for (int i = 0; i < e.d; ++i)
        for (int j = 0; j < e.d; ++j) Ft[i][j] = e.F[j][i];
    return matmul(e.F, Ft);
}

struct DirectionalFunctionals {
    double support;
    double radial;
};

// Support h_K(u) always; radial about the origin (requires o interior).
inline DirectionalFunctionals directional_functionals(const Body& K, V2 u) {
    if (auto* p = std::get_if<Polygon2D>(&K)) {
        return {support(p->v, u), radial(p->v, u)};
    }
    if (auto* b = std::get_if<Ball>(&K)) {
        if (b->d != 2) throw std::invalid_argument("directional_functionals: d=2 only");
        V2 c{b->c[0], b->c[1]};
        double h = dot(c, u) + b->r;
        double cc = norm2(c);
        if (cc >= b->r * b->r) throw std::invalid_argument("radial: origin not inside body");
        // solve |c + t u| = r backwards: |t u - (-c)| = r
        double tb = dot(c, u), disc = tb * tb + (b->r * b->r - cc);
        return {h, tb + std::sqrt(disc)};
    }
    throw std::invalid_argument("directional_functionals: polygon or 2-D ball only");
}

}  // namespace randvol
