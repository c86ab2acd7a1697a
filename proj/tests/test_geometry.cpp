#include <catch2/catch_amalgamated.hpp>

#include <randvol/geom.hpp>

using namespace randvol;
using Catch::Approx;

static Poly unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }
static Poly right_triangle() { return {{0, 0}, {1, 0}, {0, 1}}; }

TEST_CASE("planar vector algebra") {
    V2 a{1, 2}, b{3, -1};
    CHECK((a + b).x == 4);
    CHECK((a - b).y == 3);
    CHECK(dot(a, b) == 1);
    CHECK(cross(a, b) == -7);
    CHECK(norm(V2{3, 4}) == Approx(5));
    V2 p = perp(a);
    CHECK(dot(p, a) == 0);
    CHECK(cross(a, p) > 0);  // +90 degrees
    V2 u = normalized(V2{3, 4});
    CHECK(norm(u) == Approx(1).epsilon(1e-15));
}

TEST_CASE("2x2 matrix helpers") {
    Mat2 m{2, 1, 0, 3};
    CHECK(det(m) == 6);
    V2 v = mul(m, V2{1, 1});
    CHECK(v.x == 3);
    CHECK(v.y == 3);
    Mat2 id = mul(m, inverse(m));
    CHECK(id.a == Approx(1).margin(1e-14));
    CHECK(id.b == Approx(0).margin(1e-14));
    CHECK(id.c == Approx(0).margin(1e-14));
    CHECK(id.d == Approx(1).margin(1e-14));
    Mat2 t = transpose(m);
    CHECK(t.b == m.c);
    CHECK(t.c == m.b);
}

TEST_CASE("polygon area, centroid, inertia: unit square") {
    Poly P = unit_square();
    CHECK(polygon_area(P) == Approx(1).epsilon(1e-15));
    V2 g = polygon_centroid(P);
    CHECK(g.x == Approx(0.5).epsilon(1e-15));
    CHECK(g.y == Approx(0.5).epsilon(1e-15));
    Mat2 M = polygon_inertia(P);
    CHECK(M.a == Approx(1.0 / 12).epsilon(1e-13));
    CHECK(M.d == Approx(1.0 / 12).epsilon(1e-13));
    CHECK(M.b == Approx(0).margin(1e-14));
    CHECK(M.c == M.b);
}

TEST_CASE("polygon area, centroid, inertia: right triangle") {
    Poly P = right_triangle();
    CHECK(polygon_area(P) == Approx(0.5).epsilon(1e-15));
    V2 g = polygon_centroid(P);
    CHECK(g.x == Approx(1.0 / 3).epsilon(1e-14));
    CHECK(g.y == Approx(1.0 / 3).epsilon(1e-14));
    // centered second moments of the leg-1 right triangle
    Mat2 M = polygon_inertia(P);
    CHECK(M.a == Approx(1.0 / 36).epsilon(1e-12));
    CHECK(M.d == Approx(1.0 / 36).epsilon(1e-12));
    CHECK(M.b == Approx(-1.0 / 72).epsilon(1e-12));
}

TEST_CASE("area is orientation-signed, translation-invariant modulo sign") {
    Poly P = right_triangle();
    Poly R(P.rbegin(), P.rend());
    CHECK(polygon_area(R) == Approx(-0.5).epsilon(1e-15));
    Poly T;
    for (V2 v : P) T.push_back(v + V2{17, -5});
    CHECK(polygon_area(T) == Approx(0.5).epsilon(1e-12));
    V2 g = polygon_centroid(T);
    CHECK(g.x == Approx(1.0 / 3 + 17).epsilon(1e-13));
}

TEST_CASE("convex hull drops interior, duplicate and collinear points") {
    Poly pts = unit_square();
    pts.push_back({0.5, 0.5});
    pts.push_back({0.25, 0.5});
    pts.push_back({0.5, 0.0});  // on an edge
    pts.push_back({1, 1});      // duplicate
    Poly h = convex_hull(pts);
    REQUIRE(h.size() == 4);
    // CCW starting at the lexicographically smallest vertex
    CHECK(h[0].x == 0);
    CHECK(h[0].y == 0);
    CHECK(h[1].x == 1);
    CHECK(h[1].y == 0);
    CHECK(h[2].x == 1);
    CHECK(h[2].y == 1);
    CHECK(h[3].x == 0);
    CHECK(h[3].y == 1);
    CHECK(polygon_area(h) == Approx(1));
}

TEST_CASE("canonical polygon rejects degenerate input") {
    CHECK_THROWS_AS(canonical_polygon({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(canonical_polygon({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(canonical_polygon({{2, 2}, {2, 2}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("canonical polygon normalizes orientation and start") {
    Poly cw{{0, 1}, {1, 1}, {1, 0}, {0, 0}};  // clockwise
    Poly h = canonical_polygon(cw);
    REQUIRE(h.size() == 4);
    CHECK(polygon_area(h) > 0);
    CHECK(h[0].x == 0);
    CHECK(h[0].y == 0);
    CHECK(is_strictly_convex_ccw(h));
}

TEST_CASE("strict convexity predicate") {
    CHECK(is_strictly_convex_ccw(unit_square()));
    Poly withFlat{{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK_FALSE(is_strictly_convex_ccw(withFlat));
    Poly cw{{0, 1}, {1, 1}, {1, 0}, {0, 0}};
    CHECK_FALSE(is_strictly_convex_ccw(cw));
}

TEST_CASE("point-in-convex with boundary tolerance") {
    Poly P = unit_square();
    CHECK(point_in_convex(P, {0.5, 0.5}));
    CHECK(point_in_convex(P, {0, 0}));        // vertex counts as inside
    CHECK(point_in_convex(P, {0.5, 0}));      // edge counts as inside
    CHECK_FALSE(point_in_convex(P, {1.5, 0.5}));
    CHECK_FALSE(point_in_convex(P, {0.5, -1e-6}));
    // negative tol demands strict interior
    CHECK_FALSE(point_in_convex(P, {0.5, 0.0}, -1e-9));
    CHECK(point_in_convex(P, {0.5, 1e-6}, -1e-9));
}

TEST_CASE("support, width and radial of the centered square") {
    Poly P{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    CHECK(support(P, {1, 0}) == 1);
    CHECK(support(P, {0, -1}) == 1);
    CHECK(support(P, normalized({1, 1})) == Approx(std::sqrt(2)).epsilon(1e-14));
    CHECK(width(P, {1, 0}) == 2);
    CHECK(width(P, normalized({1, 1})) == Approx(2 * std::sqrt(2)).epsilon(1e-14));
    CHECK(radial(P, {1, 0}) == Approx(1).epsilon(1e-13));
    CHECK(radial(P, normalized({1, 1})) == Approx(std::sqrt(2)).epsilon(1e-13));
    CHECK(radial(P, normalized({-2, 1})) == Approx(std::sqrt(5) / 2).epsilon(1e-13));
}

TEST_CASE("radial requires an interior origin") {
    Poly off{{1, 1}, {2, 1}, {2, 2}, {1, 2}};
    CHECK_THROWS_AS(radial(off, {1, 0}), std::invalid_argument);
}

TEST_CASE("half-plane clipping") {
    Poly P{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    Poly left = clip_halfplane(P, {1, 0}, 0.0);  // x <= 0
    CHECK(polygon_area(left) == Approx(2).epsilon(1e-13));
    CHECK(support(left, {1, 0}) == Approx(0).margin(1e-14));
    CHECK(support(left, {-1, 0}) == Approx(1).margin(1e-14));
    // cutting entirely outside keeps the polygon
    Poly all = clip_halfplane(P, {1, 0}, 5.0);
    CHECK(polygon_area(all) == Approx(4).epsilon(1e-13));
    // cutting everything leaves nothing
    Poly none = clip_halfplane(P, {1, 0}, -5.0);
    CHECK(none.empty());
}

TEST_CASE("abs_det on small systems") {
    std::vector<std::array<double, 16>> cols(2);
    cols[0] = {};
    cols[1] = {};
    cols[0][0] = 3;
    cols[0][1] = 1;
    cols[1][0] = 1;
    cols[1][1] = 2;
    CHECK(abs_det(cols, 2) == Approx(5).epsilon(1e-14));

    std::vector<std::array<double, 16>> c3(3);
    for (auto& c : c3) c = {};
    // columns of [[2,0,0],[0,3,0],[0,0,4]] permuted, det = 24
    c3[0][1] = 3;
    c3[1][2] = 4;
    c3[2][0] = 2;
    CHECK(abs_det(c3, 3) == Approx(24).epsilon(1e-13));

    std::vector<std::array<double, 16>> sing(2);
    for (auto& c : sing) c = {};
    sing[0][0] = 1;
    sing[0][1] = 2;
    sing[1][0] = 2;
    sing[1][1] = 4;
    CHECK(abs_det(sing, 2) == Approx(0).margin(1e-14));
}
