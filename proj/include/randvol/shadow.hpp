#pragma once
// Linear shadow systems on polygons: vertices move at constant speeds along a
// common direction, speeds constant along chords parallel to that direction.
// Covers the Steiner interpolation system, basic systems at a vertex, coupled
// convexity profiles, the greedy polygon-to-triangle reduction, the
// Banach-Mazur bracket from the largest inscribed triangle, and the two
// one-parameter families used by the stability sweeps.

#include "moments.hpp"
#include "steiner.hpp"
#include "triangle.hpp"

namespace randvol {

struct ShadowSystem {
    Poly base;                  // CCW, may contain collinear vertices (speed breakpoints)
    V2 v{0, 1};                 // unit motion direction
    std::vector<double> speeds; // aligned with base
    double tmin = -1, tmax = 1;
    bool recentered = false;    // subtract the centroid after each eval
};

inline Polygon2D shadow_eval(const ShadowSystem& S, double t) {
    double tol = 1e-9 * (std::abs(S.tmin) + std::abs(S.tmax) + 1.0);
    if (t < S.tmin - tol || t > S.tmax + tol)
        throw std::out_of_range("shadow_eval: t outside the system range");
    Poly moved(S.base.size());
    for (size_t i = 0; i < S.base.size(); ++i) moved[i] = S.base[i] + (t * S.speeds[i]) * S.v;
    Poly out = canonical_polygon(moved);
    if (S.recentered) {
        V2 g = polygon_centroid(out);
        for (V2& p : out) p = p - g;
    }
    return Polygon2D{out};
}

// The interpolation system between a polygon and its reflection: K_1 = P,
// K_{-1} = reflection of P through the line through o perpendicular to v,
// K_0 = the Steiner symmetral. Base is the symmetral with chord-midpoint
// speeds; collinear chain vertices are kept because they carry speed breaks.
inline ShadowSystem steiner_shadow(const Poly& P, V2 vdir) {
    V2 v = normalized(vdir);
    V2 w = perp(v);
    double scale = detail::coord_scale(P);
    std::vector<double> ss;
    for (const V2& p : P) ss.push_back(dot(p, w));
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end(),
                         [&](double a, double b) { return std::abs(a - b) <= 1e-12 * scale; }),
             ss.end());
    std::vector<V2> pts;
    std::vector<double> spd;
    auto push = [&](V2 q, double m) {
        if (!pts.empty() && norm(q - pts.back()) <= 1e-12 * scale) return;
        if (pts.size() >= 2 && norm(q - pts.front()) <= 1e-12 * scale) return;
        pts.push_back(q);
        spd.push_back(m);
    };
    // bottom chain left to right, then top chain right to left
    std::vector<std::array<double, 3>> cols;  // s, half-length, midpoint
    for (double s : ss) {
        double t0, t1;
        if (!detail::extent_at(P, w, v, s, t0, t1)) continue;
        cols.push_back({s, 0.5 * (t1 - t0), 0.5 * (t0 + t1)});
    }
    for (const auto& c : cols) push(c[0] * w - c[1] * v, c[2]);
    for (size_t i = cols.size(); i-- > 0;) push(cols[i][0] * w + cols[i][1] * v, cols[i][2]);
    // fix orientation to CCW in world coordinates
    double a2 = 0;
    for (size_t i = 0; i < pts.size(); ++i) a2 += cross(pts[i], pts[(i + 1) % pts.size()]);
    if (a2 < 0) {
        std::reverse(pts.begin(), pts.end());
        std::reverse(spd.begin(), spd.end());
    }
    // rotate so the lexicographic minimum comes first (stable representation)
    size_t lo = 0;
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x < pts[lo].x || (pts[i].x == pts[lo].x && pts[i].y < pts[lo].y)) lo = i;
    std::rotate(pts.begin(), pts.begin() + lo, pts.end());
    std::rotate(spd.begin(), spd.begin() + lo, spd.end());
    if (pts.size() < 3) throw std::invalid_argument("steiner_shadow: degenerate polygon");
    ShadowSystem S;
    S.base = std::move(pts);
    S.v = v;
    S.speeds = std::move(spd);
    S.tmin = -1;
    S.tmax = 1;
    return S;
}

inline ShadowSystem steiner_shadow(const Polygon2D& P, V2 v) { return steiner_shadow(P.v, v); }

struct BasicSystem {
    ShadowSystem sys;       // base = P, only the chosen vertex moves
    int vertex = 0;
    V2 q_prime, q_second;   // endpoint positions of the moving vertex
    double alpha = 0, beta = 0;  // endpoint parameters, alpha + beta = 1
    Polygon2D prime, second;     // polygons at t = alpha and t = -beta
    bool capped_prime = false, capped_second = false;
};

// Move vertex i along the direction of the chord joining its neighbors until
// it is absorbed into one of the second-neighbor edges on either side. The
// parallel (unbounded) case cannot occur for strictly convex input, but is
// kept capped-and-flagged for robustness.
inline BasicSystem basic_system(const Polygon2D& P, int i) {
    const Poly& Q = P.v;
    int n = (int)Q.size();
    if (n < 4) throw std::invalid_argument("basic_system: need at least 4 vertices");
    if (i < 0 || i >= n) throw std::invalid_argument("basic_system: vertex index out of range");
    double scale = detail::coord_scale(Q);
    V2 q1 = Q[i];
    V2 q2 = Q[(i + 1) % n], q3 = Q[(i + 2) % n];
    V2 qk = Q[(i - 1 + n) % n], qk1 = Q[(i - 2 + n) % n];
    V2 u = normalized(q2 - qk);
    double maxdisp = 10.0 * scale;
    // line through (a,b) hit from q1 along u: s = cross(a - q1, b - a)/cross(u, b - a)
    auto hit = [&](V2 a, V2 b, bool& capped) {
        double den = cross(u, b - a);
        if (std::abs(den) <= 1e-12 * scale) {
            capped = true;
            return maxdisp;
        }
        return cross(a - q1, b - a) / den;
    };
    bool capP = false, capS = false;
    double s_second = hit(q2, q3, capS);   // absorbs q2 side
    double s_prime = hit(qk1, qk, capP);   // absorbs qk side
    if (capS) s_second = (s_prime > 0 ? -1 : 1) * maxdisp;
    if (capP) s_prime = (s_second > 0 ? -1 : 1) * maxdisp;
    BasicSystem B;
    B.vertex = i;
    B.capped_prime = capP;
    B.capped_second = capS;
    B.q_prime = q1 + s_prime * u;
    B.q_second = q1 + s_second * u;
    double lp = std::abs(s_prime), ls = std::abs(s_second);
    B.alpha = lp / (lp + ls);
    B.beta = ls / (lp + ls);
    ShadowSystem& S = B.sys;
    S.base = Q;
    S.v = normalized(B.q_prime - q1);
    S.speeds.assign(n, 0.0);
    S.speeds[i] = lp + ls;
    S.tmin = -B.beta;
    S.tmax = B.alpha;
    B.prime = shadow_eval(S, B.alpha);
    B.second = shadow_eval(S, -B.beta);
    return B;
}

struct ConvexityProfile {
    std::vector<double> ts;
    std::vector<MomentEstimate> est;
    // centered second differences est[i-1] - 2 est[i] + est[i+1] for interior
    // grid points, with the stderr of the coupled per-trial combination
    std::vector<std::pair<double, double>> second_diff;
    // paired difference stat(t_i) - stat(t_0) with stderr
    std::vector<std::pair<double, double>> paired_vs_first;
};

// Estimates t -> E^p(K_t) on a grid with common random numbers: one shared
// sample stream drives every grid point, so second differences are measured
// on paired trials rather than independent runs.
inline ConvexityProfile convexity_profile(const ShadowSystem& S, const FunctionalSpec& spec,
                                          const std::vector<double>& grid, uint64_t samples,
                                          uint64_t seed, int threads = 0) {
    if (grid.size() < 2) throw std::invalid_argument("convexity_profile: need >= 2 grid points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("convexity_profile: grid must be strictly increasing");
    std::vector<Body> bodies;
    for (double t : grid) bodies.push_back(shadow_eval(S, t));
    std::vector<FamilyCombo> combos;
    for (size_t i = 1; i + 1 < grid.size(); ++i)
        combos.push_back({{{(int)i - 1, 0, 1.0}, {(int)i, 0, -2.0}, {(int)i + 1, 0, 1.0}}});
    FamilyResult F = estimate_family(bodies, {spec}, samples, seed, combos, threads);
    ConvexityProfile R;
    R.ts = grid;
    for (size_t i = 0; i < grid.size(); ++i) R.est.push_back(F.est[i][0]);
    R.second_diff = F.combos;
    for (size_t i = 0; i < grid.size(); ++i) R.paired_vs_first.push_back(F.paired[i][0]);
    return R;
}

struct ReductionStep {
    int vertex;        // vertex whose basic system was applied
    bool took_prime;   // endpoint chosen
    Polygon2D poly;    // polygon after the step
    MomentEstimate est;
    double gain;       // paired estimate difference vs the previous polygon
    double gain_se;
};

struct ReductionTrace {
    Polygon2D input;
    MomentEstimate input_est;
    std::vector<ReductionStep> steps;
    const Polygon2D& final_poly() const { return steps.empty() ? input : steps.back().poly; }
    const MomentEstimate& final_est() const { return steps.empty() ? input_est : steps.back().est; }
};

// Repeatedly applies the basic system at the vertex whose better endpoint has
// the largest coupled estimate, moving to that endpoint, until a triangle
// remains. Each round evaluates all candidate endpoints against the current
// polygon on one shared stream.
inline ReductionTrace reduce_to_triangle(const Polygon2D& P, const FunctionalSpec& spec,
                                         uint64_t samples, uint64_t seed, int threads = 0) {
    if (spec.kind == Kind::full && spec.n != 3)
        throw std::invalid_argument("reduce_to_triangle: full(3) or centroid only");
    if (spec.kind == Kind::fixed_point)
        throw std::invalid_argument("reduce_to_triangle: full(3) or centroid only");
    ReductionTrace T;
    T.input = P;
    T.input_est = estimate_moment(P, spec, samples, seed, threads);
    Polygon2D cur = P;
    int round = 0;
    while ((int)cur.v.size() > 3) {
        int n = (int)cur.v.size();
        std::vector<Body> bodies{cur};
        std::vector<std::pair<int, bool>> tag;  // (vertex, is_prime) per candidate body
        for (int i = 0; i < n; ++i) {
            BasicSystem B = basic_system(cur, i);
            if (B.capped_prime || B.capped_second) continue;
            bodies.push_back(B.prime);
            tag.push_back({i, true});
            bodies.push_back(B.second);
            tag.push_back({i, false});
        }
        uint64_t round_seed = seed ^ (0x9E3779B97F4A7C15ull * (round + 1));
        FamilyResult F = estimate_family(bodies, {spec}, samples, round_seed, {}, threads);
        // strict > keeps the lowest vertex index on ties (enumeration order)
        int best = -1;
        double bestv = -1e300;
        for (size_t c = 0; c < tag.size(); ++c) {
            double v = F.est[c + 1][0].value;
            if (v > bestv) {
                best = (int)c;
                bestv = v;
            }
        }
        if (best < 0) throw std::runtime_error("reduce_to_triangle: no usable basic system");
        ReductionStep step;
        step.vertex = tag[best].first;
        step.took_prime = tag[best].second;
        step.poly = std::get<Polygon2D>(bodies[best + 1]);
        step.est = F.est[best + 1][0];
        step.gain = F.paired[best + 1][0].first;
        step.gain_se = F.paired[best + 1][0].second;
        cur = step.poly;
        T.steps.push_back(std::move(step));
        ++round;
        if (round > 64) throw std::runtime_error("reduce_to_triangle: failed to terminate");
    }
    return T;
}

struct BMBracket {
    double lower = 1, upper = 1;
    bool lower_open = false, upper_open = false;
    std::string lower_method, upper_method;
};

// Banach-Mazur distance to the triangle, bracketed through the area ratio
// rho = A(P)/A(T_max) of the largest inscribed triangle: the distance lies in
// (sqrt(rho), rho], with [1,1] exactly for triangles.
inline BMBracket bm_triangle_bracket(const Polygon2D& P) {
    InscribedTriangle best = max_inscribed_triangle(P);
    double rho = best.rho;
    BMBracket B;
    if (P.v.size() == 3) {
        B.lower = B.upper = 1.0;
        B.lower_method = B.upper_method = "triangle";
        return B;
    }
    B.lower = std::sqrt(rho);
    B.upper = rho;
    B.lower_open = true;
    B.lower_method = "sqrt-area-ratio";
    B.upper_method = "area-ratio";
    return B;
}

// One-parameter polygon families for the stability sweeps.
//  - spindle(eps): hull of the regular `resolution`-gon inscribed in the unit
//    circle (vertex at +e1) and the two points +-(1+eps) e1; centrally
//    symmetric, between B^2 and (1+eps) B^2.
//  - truncated_triangle(delta): the right triangle (0,0),(1,0),(0,1) with the
//    delta-scaled corner at the origin cut off.
inline Polygon2D family_generator(const std::string& kind, double param, int resolution = 512) {
    if (kind == "spindle") {
        double eps = param;
        if (eps < 0 || eps >= 1) throw std::invalid_argument("spindle: eps in [0,1)");
        Poly pts;
        for (int k = 0; k < resolution; ++k) {
            double a = 2 * M_PI * k / resolution;
            pts.push_back({std::cos(a), std::sin(a)});
        }
        pts.push_back({1 + eps, 0});
        pts.push_back({-(1 + eps), 0});
        return Polygon2D{canonical_polygon(convex_hull(pts))};
    }
    if (kind == "truncated_triangle") {
        double d = param;
        if (d < 0 || d >= 1) throw std::invalid_argument("truncated_triangle: delta in [0,1)");
        Poly pts{{d, 0}, {1, 0}, {0, 1}, {0, d}};
        return Polygon2D{canonical_polygon(pts)};
    }
    throw std::invalid_argument("family_generator: unknown kind " + kind);
}

}  // namespace randvol
