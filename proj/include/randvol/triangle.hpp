#pragma once
// Maximum-area inscribed triangle over polygon vertex triples, the outer
// triangle whose side midpoints are its vertices, and the area ratio.

#include <array>

#include "body.hpp"
#include "geom.hpp"

namespace randvol {

struct InscribedTriangle {
    std::array<V2, 3> T;       // vertices of T_K (subset of P's vertices)
    std::array<int, 3> index;  // their indices in P
    std::array<V2, 3> outer;   // T-tilde: side midpoints are the T_K vertices
    double area;               // A(T_K)
    double rho;                // A(P) / A(T_K), in [1, 4)
};

inline InscribedTriangle max_inscribed_triangle(const Poly& P) {
    int n = (int)P.size();
    double best = -1.0;
    std::array<int, 3> bi{0, 1, 2};
    // O(n^3) exhaustive with an early inner maximization: for fixed (i,j) the
    // area is linear in the third vertex along the hull, but n stays small
    // enough here that the plain scan is fine; keep it branch-light.
    for (int i = 0; i < n - 2; ++i)
        for (int j = i + 1; j < n - 1; ++j) {
            V2 e = P[j] - P[i];
            for (int k = j + 1; k < n; ++k) {
                double a = std::abs(cross(e, P[k] - P[i]));
                if (a > best) {
                    best = a;
                    bi = {i, j, k};
                }
            }
        }
    InscribedTriangle R;
    R.index = bi;
    R.T = {P[bi[0]], P[bi[1]], P[bi[2]]};
    R.area = 0.5 * best;
    // outer triangle: q_i = p_j + p_k - p_i
    for (int i = 0; i < 3; ++i)
        R.outer[i] = R.T[(i + 1) % 3] + R.T[(i + 2) % 3] - R.T[i];
    R.rho = polygon_area(P) / R.area;
    return R;
}

inline InscribedTriangle max_inscribed_triangle(const Polygon2D& P) {
    return max_inscribed_triangle(P.v);
}

}  // namespace randvol
