#pragma once
// Polar dual of a polygon with the origin strictly interior: one polar vertex
// per input edge (outward normal over support value).

#include "geom.hpp"

namespace randvol {

inline Poly polar_dual(const Poly& P) {
    size_t n = P.size();
    Poly out;
    out.reserve(n);
    double scale = detail::coord_scale(P);
    for (size_t i = 0; i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n];
        V2 e = b - a;
        V2 nrm = {e.y, -e.x};  // outward for CCW
        double h = dot(a, nrm);
        if (h <= 1e-12 * scale * norm(nrm))
            throw std::invalid_argument("polar_dual: origin not strictly interior");
        out.push_back(nrm / h);
    }
    return canonical_polygon(out);
}

}  // namespace randvol
