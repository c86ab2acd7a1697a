#pragma once
// Uniform sampling from bodies. Every point is a pure function of
// (body, seed, point index); parallel consumption reproduces serial streams.

#include <array>
#include <cstdint>

#include "body.hpp"
#include "philox.hpp"

namespace randvol {

constexpr int kMaxDim = 12;

using PointD = std::array<double, kMaxDim>;

// Fan sampler over a polygon: triangle picked by cumulative-area inverse lookup
// (binary search), then a 2-uniform transport inside the fan triangle — edge
// point at the area-linear parameter, radius sqrt(u). The transport is
// continuous in the geometry, which keeps common-random-number pairings tight.
struct FanSampler {
    V2 anchor;
    std::vector<V2> p, q;      // triangle (anchor, p[i], q[i])
    std::vector<double> cumn;  // normalized cumulative areas

    V2 map(double u0, double u1) const {
        size_t idx = std::upper_bound(cumn.begin(), cumn.end() - 1, u0) - cumn.begin();
        double lo = idx ? cumn[idx - 1] : 0.0;
        double t = (u0 - lo) / (cumn[idx] - lo);
        V2 e = p[idx] + t * (q[idx] - p[idx]);
        return anchor + std::sqrt(u1) * (e - anchor);
    }
};

// Fan from vertex 0 (the sampler contract for sample()).
inline FanSampler fan_from_vertex0(const Poly& P) {
    FanSampler f;
    f.anchor = P[0];
    double acc = 0;
    for (size_t i = 1; i + 1 < P.size(); ++i) {
        f.p.push_back(P[i]);
        f.q.push_back(P[i + 1]);
        acc += std::abs(cross(P[i] - P[0], P[i + 1] - P[0])) * 0.5;
        f.cumn.push_back(acc);
    }
    for (double& c : f.cumn) c /= acc;
    f.cumn.back() = 1.0;
    return f;
}

// Fan from the centroid; used by the joint family estimator, where an interior
// anchor makes the cross-body coupling much tighter.
inline FanSampler fan_from_centroid(const Poly& P) {
    FanSampler f;
    f.anchor = polygon_centroid(P);
    double acc = 0;
    for (size_t i = 0; i < P.size(); ++i) {
        V2 a = P[i], b = P[(i + 1) % P.size()];
        f.p.push_back(a);
        f.q.push_back(b);
        acc += std::abs(cross(a - f.anchor, b - f.anchor)) * 0.5;
        f.cumn.push_back(acc);
    }
    for (double& c : f.cumn) c /= acc;
    f.cumn.back() = 1.0;
    return f;
}

// Counter slots consumed per point for each body variant.
inline int slot_stride(const Body& K) {
    if (std::holds_alternative<Polygon2D>(K)) return 2;
    if (auto* b = std::get_if<Ball>(&K)) return 2 * ((b->d + 1) / 2) + 1;
    if (auto* e = std::get_if<Ellipsoid>(&K)) return 2 * ((e->d + 1) / 2) + 1;
    return dim(K) + 1;  // simplex: d+1 exponential spacings
}

namespace detail {

inline void ball_unit_point(int d, uint64_t seed, uint64_t base, double* out) {
    double g[kMaxDim + 1];
    int pairs = (d + 1) / 2;
    for (int i = 0; i < pairs; ++i) gauss_pair(seed, base + 2 * i, g[2 * i], g[2 * i + 1]);
    double n2 = 0;
    for (int i = 0; i < d; ++i) n2 += g[i] * g[i];
    double inv = 1.0 / std::sqrt(n2);
    double r = std::pow(u01(seed, base + 2 * pairs), 1.0 / d);
    for (int i = 0; i < d; ++i) out[i] = r * g[i] * inv;
}

}  // namespace detail

// The i-th point of the (K, seed) stream. Pure function; thread-safe.
inline PointD sample_point(const Body& K, const FanSampler& fan, uint64_t seed, uint64_t i) {
    PointD x{};
    uint64_t base = i * (uint64_t)slot_stride(K);
    if (std::holds_alternative<Polygon2D>(K)) {
        V2 v = fan.map(u01(seed, base), u01(seed, base + 1));
        x[0] = v.x;
        x[1] = v.y;
        return x;
    }
    if (auto* b = std::get_if<Ball>(&K)) {
        detail::ball_unit_point(b->d, seed, base, x.data());
        for (int k = 0; k < b->d; ++k) x[k] = b->c[k] + b->r * x[k];
        return x;
    }
    if (auto* e = std::get_if<Ellipsoid>(&K)) {
        double u[kMaxDim];
        detail::ball_unit_point(e->d, seed, base, u);
        for (int r = 0; r < e->d; ++r) {
            double s = e->c[r];
            for (int c = 0; c < e->d; ++c) s += e->F[r][c] * u[c];
            x[r] = s;
        }
        return x;
    }
    const Simplex& s = std::get<Simplex>(K);
    double w[kMaxDim + 1], tot = 0;
    for (int k = 0; k <= s.d; ++k) {
        w[k] = -std::log(u01(seed, base + k));
        tot += w[k];
    }
    for (int k = 0; k <= s.d; ++k) w[k] /= tot;
    for (int r = 0; r < s.d; ++r) {
        double acc = 0;
        for (int k = 0; k <= s.d; ++k) acc += w[k] * s.v[k][r];
        x[r] = acc;
    }
    return x;
}

struct SampleStream {
    const Body* body;
    uint64_t seed;
    FanSampler fan;  // valid when the body is a polygon

    explicit SampleStream(const Body& K, uint64_t s) : body(&K), seed(s) {
        if (auto* p = std::get_if<Polygon2D>(&K)) fan = fan_from_vertex0(p->v);
    }
    PointD point(uint64_t i) const { return sample_point(*body, fan, seed, i); }
};

inline std::vector<PointD> sample(const Body& K, size_t n, uint64_t seed) {
    SampleStream st(K, seed);
    std::vector<PointD> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = st.point(i);
    return out;
}

// |det(x2-x1, ..., x_{d+1}-x1)| / d! for d+1 points of dimension d.
inline double simplex_volume(const std::vector<PointD>& v, int d) {
    std::vector<std::array<double, 16>> cols(d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) cols[j][i] = v[j + 1][i] - v[0][i];
    double f = 1.0;
    for (int i = 2; i <= d; ++i) f *= i;
    return abs_det(cols, d) / f;
}

inline double simplex_volume(const std::vector<VecD>& v) {
    int d = (int)v[0].size();
    std::vector<std::array<double, 16>> cols(d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) cols[j][i] = v[j + 1][i] - v[0][i];
    double f = 1.0;
    for (int i = 2; i <= d; ++i) f *= i;
    return abs_det(cols, d) / f;
}

}  // namespace randvol
