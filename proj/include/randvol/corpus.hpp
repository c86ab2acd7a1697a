#pragma once
// The standard body corpus used by `verify` and the test suite: named
// reference polygons, a polygonal disc, random convex polygons, and members of
// the two sweep families. Generation is deterministic in the seed.

#include "io.hpp"
#include "philox.hpp"
#include "shadow.hpp"

namespace randvol {

struct CorpusEntry {
    std::string name;
    Body body;
};

// Random strictly convex polygon: n directions sorted around the circle with
// radii in [0.6, 1.4], then the hull (which may drop a few points).
inline Polygon2D random_polygon(int n, uint64_t seed) {
    Poly pts;
    for (int k = 0; k < n; ++k) {
        double a = 2 * M_PI * u01(seed, 2 * k);
        double r = 0.6 + 0.8 * u01(seed, 2 * k + 1);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    Poly h = canonical_polygon(convex_hull(pts));
    if (h.size() < 3) return random_polygon(n, seed + 1);
    return Polygon2D{h};
}

inline std::vector<CorpusEntry> standard_corpus(uint64_t seed = 2207) {
    std::vector<CorpusEntry> C;
    C.push_back({"triangle", Polygon2D{canonical_polygon({{0, 0}, {1, 0}, {0, 1}})}});
    C.push_back({"square", standard_body("square", 2)});
    C.push_back({"regular_5", standard_body("regular_polygon", 5)});
    C.push_back({"regular_6", standard_body("regular_polygon", 6)});
    C.push_back({"regular_8", standard_body("regular_polygon", 8)});
    C.push_back({"disc_512", family_generator("spindle", 0.0, 512)});
    for (int n = 4; n <= 12; ++n) {
        char name[32];
        std::snprintf(name, sizeof name, "random_%02d", n);
        C.push_back({name, random_polygon(n, seed * 1000 + n)});
    }
    C.push_back({"spindle_010", family_generator("spindle", 0.10)});
    C.push_back({"spindle_030", family_generator("spindle", 0.30)});
    C.push_back({"truncated_010", family_generator("truncated_triangle", 0.10)});
    C.push_back({"truncated_030", family_generator("truncated_triangle", 0.30)});
    return C;
}

inline void write_corpus(const std::string& dir, uint64_t seed = 2207) {
    for (const CorpusEntry& e : standard_corpus(seed))
        save_body(dir + "/" + e.name + ".json", e.body);
}

}  // namespace randvol
