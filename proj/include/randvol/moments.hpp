#pragma once
// Closed-form reference values (ball formulas, Reed's triangle formula) and the
// Monte Carlo estimators for E^p_n, E^p_x, E^p_* with deterministic chunked
// reduction, shared-stream multi-functional estimates, and the coupled
// multi-body family estimator used by sweeps and shadow profiles.

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <thread>

#include "body.hpp"
#include "sampling.hpp"

namespace randvol {

// kappa with a real index (kappa_d for integer d agrees with volume of B^d).
inline double kappa_real(double x) {
    return std::exp(0.5 * x * std::log(M_PI) - std::lgamma(0.5 * x + 1.0));
}

inline double log_kappa(double x) { return 0.5 * x * std::log(M_PI) - std::lgamma(0.5 * x + 1.0); }

enum class BallMomentKind { centroid, full_simplex };

namespace detail {
inline double ball_moment_core(int d, double p, bool full) {
    // log of: binom(d+p,d)^{-1} kappa_d^{-d-p} kappa_{d+p}^d prod_i kappa_i/kappa_{p+i}
    double lg = -(std::lgamma(d + p + 1) - std::lgamma(p + 1) - std::lgamma(d + 1.0));
    lg += -(d + p + (full ? 1 : 0)) * log_kappa(d);
    lg += (d + (full ? 1 : 0)) * log_kappa(d + p);
    for (int i = 1; i <= d; ++i) lg += log_kappa(i) - log_kappa(p + i);
    if (full) {
        double m = double(d) * d + double(d) * p + d;
        lg += log_kappa(m) - log_kappa(m + p);
        lg += -p * (std::lgamma(d + 1.0));  // (d!)^{-p}
    }
    return std::exp(lg);
}
}  // namespace detail

// The printed centroid formula without the reconciliation factor; kept only so
// the validation test can reject it against the Monte Carlo oracle.
inline double ball_moment_printed_centroid(int d, double p) {
    return detail::ball_moment_core(d, p, false);
}

// Closed-form moments of the unit ball. The centroid variant carries the
// (d!)^{-p} factor that the direct d=2 integrals and the MC oracle require.
inline double ball_moment(int d, double p, BallMomentKind kind) {
    if (d < 1 || p < 1) throw std::invalid_argument("ball_moment: need d >= 1, p >= 1");
    if (kind == BallMomentKind::full_simplex) return detail::ball_moment_core(d, p, true);
    return std::exp(-p * std::lgamma(d + 1.0)) * detail::ball_moment_core(d, p, false);
}

struct Rational {
    long long num = 0, den = 1;
};

namespace detail {
inline long long igcd(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}
inline Rational rat_norm(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw std::overflow_error("rational overflow");
    return {(long long)n, (long long)d};
}
inline Rational rat_add(Rational x, Rational y) {
    return rat_norm((__int128)x.num * y.den + (__int128)y.num * x.den, (__int128)x.den * y.den);
}
inline Rational rat_mul(Rational x, Rational y) {
    return rat_norm((__int128)x.num * y.num, (__int128)x.den * y.den);
}
}  // namespace detail

struct ReedValue {
    Rational exact;
    double value;
};

// E^p_3 of a triangle for integer p: the classical closed form, evaluated in
// exact rational arithmetic.
inline ReedValue reed_moment(int p) {
    if (p < 1) throw std::invalid_argument("reed_moment: integer p >= 1 required");
    if (p > 16) throw std::invalid_argument("reed_moment: p too large for exact evaluation");
    // sum_{i=0}^p binom(p,i)^{-2}
    Rational S{0, 1};
    long long binom = 1;
    for (int i = 0; i <= p; ++i) {
        S = detail::rat_add(S, detail::rat_norm(1, (__int128)binom * binom));
        binom = binom * (p - i) / (i + 1);
    }
    Rational bracket = detail::rat_add(
        detail::rat_norm((__int128)6 * (p + 1) * (p + 1), 1),
        detail::rat_mul(detail::rat_norm((__int128)(p + 2) * (p + 2), 1), S));
    __int128 den = 1;
    den *= (__int128)(p + 1) * (p + 1) * (p + 1);
    den *= (__int128)(p + 2) * (p + 2) * (p + 2);
    den *= (p + 3);
    den *= (2 * p + 5);
    Rational r = detail::rat_mul(detail::rat_norm(12, den), bracket);
    return {r, double(r.num) / double(r.den)};
}

enum class Kind { full, fixed_point, centroid };

struct FunctionalSpec {
    Kind kind = Kind::full;
    int n = 3;      // number of free vertices for full(n)
    double p = 1.0;
    VecD x;         // pin location for fixed_point

    static FunctionalSpec full_n(int n, double p) { return {Kind::full, n, p, {}}; }
    static FunctionalSpec centroid_k(double p) { return {Kind::centroid, 0, p, {}}; }
    static FunctionalSpec fixed(VecD x, double p) { return {Kind::fixed_point, 0, p, std::move(x)}; }

    int free_points(int d) const { return kind == Kind::full ? n : d; }
};

struct MomentEstimate {
    double value = 0;
    double stderr_ = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    FunctionalSpec spec;
    double seconds = 0;
};

namespace detail {

// Hull area of a small planar point set (monotone chain on the stack).
inline double small_hull_area(V2* pts, int n) {
    std::sort(pts, pts + n, [](V2 a, V2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    V2 h[34];
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    int lo = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lo && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    double s = 0;
    for (int i = 0; i < k - 1; ++i) s += cross(h[i], h[(i + 1) % (k - 1)]);
    return 0.5 * std::abs(s);
}

struct BodyCtx {
    const Body* K;
    FanSampler fan;
    int d;
    int stride;
    double vol;
    PointD pin;      // centroid or fixed x (when pinned)
    V2 pin2;         // 2-D fast path
    bool polygon;

    BodyCtx(const Body& body, const FunctionalSpec& spec, bool centroid_anchor)
        : K(&body), d(dim(body)), stride(slot_stride(body)), vol(volume(body)) {
        polygon = std::holds_alternative<Polygon2D>(body);
        if (polygon) {
            const Poly& P = std::get<Polygon2D>(body).v;
            fan = centroid_anchor ? fan_from_centroid(P) : fan_from_vertex0(P);
        }
        pin.fill(0.0);
        if (spec.kind == Kind::centroid) {
            VecD g = centroid_of(body);
            for (int i = 0; i < d; ++i) pin[i] = g[i];
        } else if (spec.kind == Kind::fixed_point) {
            if ((int)spec.x.size() != d) throw std::invalid_argument("fixed point dimension mismatch");
            for (int i = 0; i < d; ++i) pin[i] = spec.x[i];
        }
        pin2 = {pin[0], pin[1]};
    }
};

// Per-trial normalized statistic (V(hull)/V(K))^p. `pts` is scratch of size
// >= free points; point j of trial i uses stream index i*points_per_trial + j.
inline double trial_stat(const BodyCtx& c, const FunctionalSpec& spec, uint64_t seed,
                         uint64_t trial, int points_per_trial) {
    int m = spec.free_points(c.d);
    uint64_t b0 = trial * (uint64_t)points_per_trial;
    double vol;
    if (c.d == 2) {
        V2 pts[34];
        int np = 0;
        if (spec.kind != Kind::full) pts[np++] = c.pin2;
        if (c.polygon) {
            for (int j = 0; j < m; ++j) {
                uint64_t base = (b0 + j) * (uint64_t)c.stride;
                pts[np++] = c.fan.map(u01(seed, base), u01(seed, base + 1));
            }
        } else {
            for (int j = 0; j < m; ++j) {
                PointD q = sample_point(*c.K, c.fan, seed, b0 + j);
                pts[np++] = {q[0], q[1]};
            }
        }
        if (np == 3) {
            vol = 0.5 * std::abs(cross(pts[1] - pts[0], pts[2] - pts[0]));
        } else {
            vol = small_hull_area(pts, np);
        }
    } else {
        // d >= 3: simplex only (n = d+1 free points or pinned + d points)
        std::array<double, 16> cols[kMaxDim];
        PointD first;
        if (spec.kind != Kind::full) {
            first = c.pin;
        } else {
            first = sample_point(*c.K, c.fan, seed, b0);
        }
        int offset = spec.kind == Kind::full ? 1 : 0;
        int ncols = c.d;
        for (int j = 0; j < ncols; ++j) {
            PointD q = sample_point(*c.K, c.fan, seed, b0 + j + offset);
            for (int i = 0; i < c.d; ++i) cols[j][i] = q[i] - first[i];
        }
        std::vector<std::array<double, 16>> cv(cols, cols + ncols);
        double f = 1.0;
        for (int i = 2; i <= c.d; ++i) f *= i;
        vol = abs_det(cv, c.d) / f;
    }
    double s = vol / c.vol;
    if (spec.p == 1.0) return s;
    if (spec.p == 2.0) return s * s;
    return std::pow(s, spec.p);
}

constexpr uint64_t kChunk = 1 << 16;

struct Partial {
    double sum = 0, sum2 = 0;
};

// Runs fn(chunk_index, trial_begin, trial_end) over all chunks using the given
// thread count; chunk results must be written into per-chunk slots so the
// ordered reduction is independent of the thread count.
inline void run_chunks(uint64_t samples, int threads,
                       const std::function<void(uint64_t, uint64_t, uint64_t)>& fn) {
    uint64_t nchunks = (samples + kChunk - 1) / kChunk;
    if (threads <= 1) {
        for (uint64_t c = 0; c < nchunks; ++c)
            fn(c, c * kChunk, std::min(samples, (c + 1) * kChunk));
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (uint64_t c = w; c < nchunks; c += threads)
                fn(c, c * kChunk, std::min(samples, (c + 1) * kChunk));
        });
    }
    for (auto& t : pool) t.join();
}

inline std::pair<double, double> reduce_mean_se(const std::vector<Partial>& parts,
                                                uint64_t samples) {
    // ordered Kahan reduction over chunks
    double s = 0, cs = 0, s2 = 0, cs2 = 0;
    for (const Partial& p : parts) {
        double y = p.sum - cs;
        double t = s + y;
        cs = (t - s) - y;
        s = t;
        y = p.sum2 - cs2;
        t = s2 + y;
        cs2 = (t - s2) - y;
        s2 = t;
    }
    double mean = s / samples;
    double var = std::max(0.0, (s2 - samples * mean * mean) / (double(samples) - 1));
    return {mean, std::sqrt(var / samples)};
}

}  // namespace detail

inline int default_threads() {
    if (const char* e = std::getenv("RANDVOL_THREADS")) {
        int t = std::atoi(e);
        if (t >= 1) return t;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? (int)h : 1;
}

inline MomentEstimate estimate_moment(const Body& K, const FunctionalSpec& spec, uint64_t samples,
                                      uint64_t seed, int threads = 0) {
    if (samples < 1000) throw std::invalid_argument("estimate_moment: need >= 1000 samples");
    int d = dim(K);
    if (spec.kind == Kind::full) {
        if (spec.n < d + 1) throw std::invalid_argument("full(n): n >= d+1 required");
        if (d > 2 && spec.n != d + 1)
            throw std::invalid_argument("full(n) with n > d+1 is implemented for d=2 only");
    }
    if (threads <= 0) threads = default_threads();
    detail::BodyCtx ctx(K, spec, false);
    int ppt = spec.free_points(d);
    uint64_t nchunks = (samples + detail::kChunk - 1) / detail::kChunk;
    std::vector<detail::Partial> parts(nchunks);
    detail::run_chunks(samples, threads, [&](uint64_t c, uint64_t b, uint64_t e) {
        double s = 0, s2 = 0;
        for (uint64_t i = b; i < e; ++i) {
            double v = detail::trial_stat(ctx, spec, seed, i, ppt);
            s += v;
            s2 += v * v;
        }
        parts[c] = {s, s2};
    });
    auto [mean, se] = detail::reduce_mean_se(parts, samples);
    MomentEstimate E;
    E.value = mean;
    E.stderr_ = se;
    E.samples = samples;
    E.seed = seed;
    E.spec = spec;
    return E;
}

// Several functionals on one body with shared sample streams; returns the
// estimates plus the covariance matrix of the means (for delta-method slacks).
struct ManyResult {
    std::vector<MomentEstimate> est;
    std::vector<std::vector<double>> cov;  // covariance of the means
};

inline ManyResult estimate_many(const Body& K, const std::vector<FunctionalSpec>& specs,
                                uint64_t samples, uint64_t seed, int threads = 0) {
    if (threads <= 0) threads = default_threads();
    int d = dim(K);
    int m = (int)specs.size();
    int ppt = 0;
    for (const auto& s : specs) ppt = std::max(ppt, s.free_points(d));
    std::vector<detail::BodyCtx> ctx;
    ctx.reserve(m);
    for (const auto& s : specs) ctx.emplace_back(K, s, false);
    uint64_t nchunks = (samples + detail::kChunk - 1) / detail::kChunk;
    // per chunk: m sums, m sums of squares, m(m-1)/2 cross sums
    int nc = m + m + m * (m - 1) / 2;
    std::vector<std::vector<double>> parts(nchunks, std::vector<double>(nc, 0.0));
    detail::run_chunks(samples, threads, [&](uint64_t c, uint64_t b, uint64_t e) {
        std::vector<double> acc(nc, 0.0), v(m);
        for (uint64_t i = b; i < e; ++i) {
            for (int j = 0; j < m; ++j) v[j] = detail::trial_stat(ctx[j], specs[j], seed, i, ppt);
            int idx = 2 * m;
            for (int j = 0; j < m; ++j) {
                acc[j] += v[j];
                acc[m + j] += v[j] * v[j];
            }
            for (int j = 0; j < m; ++j)
                for (int k = j + 1; k < m; ++k) acc[idx++] += v[j] * v[k];
        }
        parts[c] = std::move(acc);
    });
    std::vector<double> tot(nc, 0.0), comp(nc, 0.0);
    for (const auto& pc : parts)
        for (int j = 0; j < nc; ++j) {
            double y = pc[j] - comp[j];
            double t = tot[j] + y;
            comp[j] = (t - tot[j]) - y;
            tot[j] = t;
        }
    ManyResult R;
    R.cov.assign(m, std::vector<double>(m, 0.0));
    double N = double(samples);
    for (int j = 0; j < m; ++j) {
        MomentEstimate E;
        E.value = tot[j] / N;
        double var = std::max(0.0, (tot[m + j] - N * E.value * E.value) / (N - 1));
        E.stderr_ = std::sqrt(var / N);
        E.samples = samples;
        E.seed = seed;
        E.spec = specs[j];
        R.est.push_back(E);
        R.cov[j][j] = var / N;
    }
    int idx = 2 * m;
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            double cjk = (tot[idx++] - N * R.est[j].value * R.est[k].value) / (N - 1);
            R.cov[j][k] = R.cov[k][j] = cjk / N;
        }
    return R;
}

// Coupled estimator across a family of polygons: the same uniforms drive every
// body through centroid-anchored fans, so differences between nearby bodies
// carry far less variance than independent runs. Combos are linear
// combinations sum coef * stat(body,spec) accumulated per trial.
struct FamilyCombo {
    struct Term {
        int body;
        int spec;
        double coef;
    };
    std::vector<Term> terms;
};

struct FamilyResult {
    // [body][spec]
    std::vector<std::vector<MomentEstimate>> est;
    // paired difference vs body 0: mean and stderr of stat(b) - stat(0)
    std::vector<std::vector<std::pair<double, double>>> paired;
    // per combo: mean and stderr
    std::vector<std::pair<double, double>> combos;
};

inline FamilyResult estimate_family(const std::vector<Body>& bodies,
                                    const std::vector<FunctionalSpec>& specs, uint64_t samples,
                                    uint64_t seed, const std::vector<FamilyCombo>& combos = {},
                                    int threads = 0) {
    if (threads <= 0) threads = default_threads();
    int nb = (int)bodies.size(), m = (int)specs.size();
    int d = 2;
    for (const Body& K : bodies)
        if (!std::holds_alternative<Polygon2D>(K))
            throw std::invalid_argument("estimate_family: polygon families only");
    int ppt = 0;
    for (const auto& s : specs) ppt = std::max(ppt, s.free_points(d));
    std::vector<std::vector<detail::BodyCtx>> ctx(nb);
    for (int b = 0; b < nb; ++b)
        for (int j = 0; j < m; ++j) ctx[b].emplace_back(bodies[b], specs[j], true);
    int nstat = nb * m;
    int ncombo = (int)combos.size();
    // layout: sums[nstat], sums2[nstat], diff sums[(nb-1)*m], diff sums2, combo sums, combo sums2
    int nd = (nb - 1) * m;
    int nc = 2 * nstat + 2 * nd + 2 * ncombo;
    uint64_t nchunks = (samples + detail::kChunk - 1) / detail::kChunk;
    std::vector<std::vector<double>> parts(nchunks, std::vector<double>(nc, 0.0));
    detail::run_chunks(samples, threads, [&](uint64_t c, uint64_t b0, uint64_t e0) {
        std::vector<double> acc(nc, 0.0);
        std::vector<double> v(nstat);
        for (uint64_t i = b0; i < e0; ++i) {
            for (int b = 0; b < nb; ++b)
                for (int j = 0; j < m; ++j)
                    v[b * m + j] = detail::trial_stat(ctx[b][j], specs[j], seed, i, ppt);
            for (int s = 0; s < nstat; ++s) {
                acc[s] += v[s];
                acc[nstat + s] += v[s] * v[s];
            }
            for (int b = 1; b < nb; ++b)
                for (int j = 0; j < m; ++j) {
                    double dd = v[b * m + j] - v[j];
                    int at = 2 * nstat + (b - 1) * m + j;
                    acc[at] += dd;
                    acc[at + nd] += dd * dd;
                }
            for (int q = 0; q < ncombo; ++q) {
                double cv = 0;
                for (const auto& t : combos[q].terms) cv += t.coef * v[t.body * m + t.spec];
                acc[2 * nstat + 2 * nd + q] += cv;
                acc[2 * nstat + 2 * nd + ncombo + q] += cv * cv;
            }
        }
        parts[c] = std::move(acc);
    });
    std::vector<double> tot(nc, 0.0), comp(nc, 0.0);
    for (const auto& pc : parts)
        for (int j = 0; j < nc; ++j) {
            double y = pc[j] - comp[j];
            double t = tot[j] + y;
            comp[j] = (t - tot[j]) - y;
            tot[j] = t;
        }
    double N = double(samples);
    auto mean_se = [&](double s, double s2) {
        double mu = s / N;
        double var = std::max(0.0, (s2 - N * mu * mu) / (N - 1));
        return std::pair<double, double>(mu, std::sqrt(var / N));
    };
    FamilyResult R;
    R.est.assign(nb, std::vector<MomentEstimate>(m));
    for (int b = 0; b < nb; ++b)
        for (int j = 0; j < m; ++j) {
            auto [mu, se] = mean_se(tot[b * m + j], tot[nstat + b * m + j]);
            MomentEstimate E;
            E.value = mu;
            E.stderr_ = se;
            E.samples = samples;
            E.seed = seed;
            E.spec = specs[j];
            R.est[b][j] = E;
        }
    R.paired.assign(nb, std::vector<std::pair<double, double>>(m, {0, 0}));
    for (int b = 1; b < nb; ++b)
        for (int j = 0; j < m; ++j) {
            int at = 2 * nstat + (b - 1) * m + j;
            R.paired[b][j] = mean_se(tot[at], tot[at + nd]);
        }
    for (int q = 0; q < ncombo; ++q)
        R.combos.push_back(
            mean_se(tot[2 * nstat + 2 * nd + q], tot[2 * nstat + 2 * nd + ncombo + q]));
    return R;
}

struct IsotropyResult {
    double L = 0;
    double stderr_ = 0;
    bool exact = false;
};

// L_K: exact inertia route for polygons, MC route (d! E^2_*)^{1/2d} otherwise.
inline IsotropyResult isotropy_constant(const Body& K, uint64_t samples, uint64_t seed) {
    if (auto* P = std::get_if<Polygon2D>(&K)) {
        PolygonMeasures M = polygon_measures(*P);
        double L = std::pow(det(M.inertia), 0.25) / M.area;  // d=2 of (det M)^{1/2d} V^{-(d+2)/2d}
        return {L, 0.0, true};
    }
    int d = dim(K);
    MomentEstimate E = estimate_moment(K, FunctionalSpec::centroid_k(2.0), samples, seed);
    double fact = std::tgamma(d + 1.0);
    double L = std::pow(fact * E.value, 1.0 / (2.0 * d));
    double se = L * E.stderr_ / (2.0 * d * E.value);
    return {L, se, false};
}

struct Slack {
    std::string name;
    double value;
    double stderr_;
};

struct IdentityReport {
    std::vector<MomentEstimate> est;  // E^p_*, E^p_{d+1}, E^q_*
    std::vector<Slack> slacks;
};

// Sandwich (both sides), the p=2 identity, and Holder monotonicity, with
// shared streams and delta-method standard errors.
inline IdentityReport identity_report(const Body& K, double p, double q, uint64_t samples,
                                      uint64_t seed, int threads = 0) {
    if (!(1 <= p && p < q)) throw std::invalid_argument("identity_report: need 1 <= p < q");
    int d = dim(K);
    std::vector<FunctionalSpec> specs{FunctionalSpec::centroid_k(p),
                                      FunctionalSpec::full_n(d + 1, p),
                                      FunctionalSpec::centroid_k(q)};
    ManyResult M = estimate_many(K, specs, samples, seed, threads);
    double m1 = M.est[0].value, m2 = M.est[1].value, m3 = M.est[2].value;
    auto propagate = [&](std::array<double, 3> g) {
        double v = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v += g[i] * g[j] * M.cov[i][j];
        return std::sqrt(std::max(0.0, v));
    };
    IdentityReport R;
    R.est = M.est;
    double r1 = std::pow(m1, 1 / p), r2 = std::pow(m2, 1 / p);
    // (E^p_{d+1})^{1/p} - (E^p_*)^{1/p} >= 0
    R.slacks.push_back({"sandwich_lower", r2 - r1,
                        propagate({-r1 / (p * m1), r2 / (p * m2), 0})});
    // (d+1)(E^p_*)^{1/p} - (E^p_{d+1})^{1/p} >= 0
    R.slacks.push_back({"sandwich_upper", (d + 1) * r1 - r2,
                        propagate({(d + 1) * r1 / (p * m1), -r2 / (p * m2), 0})});
    if (p == 2.0) {
        R.slacks.push_back({"identity_2*", (d + 1) * m1 - m2,
                            propagate({double(d + 1), -1.0, 0})});
    }
    double h1 = std::pow(m1, 1 / p), h3 = std::pow(m3, 1 / q);
    // (E^q_*)^{1/q} - (E^p_*)^{1/p} >= 0
    R.slacks.push_back({"holder", h3 - h1,
                        propagate({-h1 / (p * m1), 0, h3 / (q * m3)})});
    return R;
}

inline double simplex_second_moment_bound(int d) {
    return std::exp(-std::lgamma(d + 1.0));
}

}  // namespace randvol
