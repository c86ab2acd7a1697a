#pragma once
// Maximum-area inscribed ellipse of a convex polygon (log-det barrier with
// damped Newton steps) plus the disc Banach-Mazur upper bound it induces.

#include <array>

#include "body.hpp"
#include "geom.hpp"

namespace randvol {

struct JohnResult {
    V2 center;
    Mat2 B;              // SPD; ellipse = {center + B u : |u| <= 1}
    double bm_disc_upper;  // smallest lambda with image of P inside lambda B^2 after John normalization
    bool converged;
    double gap;          // final duality-gap bound m/t
    int iterations;
};

namespace detail {

struct JohnProblem {
    std::vector<V2> a;       // unit outward edge normals
    std::vector<double> beta;  // support values
};

// Parameters: th = (cx, cy, b11, b12, b22) with B = [[b11,b12],[b12,b22]].
inline bool john_feasible(const JohnProblem& pr, const std::array<double, 5>& th,
                          std::vector<double>& slack) {
    double b11 = th[2], b12 = th[3], b22 = th[4];
    if (b11 <= 0 || b22 <= 0 || b11 * b22 - b12 * b12 <= 0) return false;
    slack.resize(pr.a.size());
    for (size_t i = 0; i < pr.a.size(); ++i) {
        V2 u = pr.a[i];
        double px = b11 * u.x + b12 * u.y, py = b12 * u.x + b22 * u.y;
        double nb = std::sqrt(px * px + py * py);
        slack[i] = pr.beta[i] - (u.x * th[0] + u.y * th[1]) - nb;
        if (slack[i] <= 0) return false;
    }
    return true;
}

// phi_t = -t log det B - sum log slack_i ; returns +inf if infeasible.
inline double john_phi(const JohnProblem& pr, const std::array<double, 5>& th, double t) {
    std::vector<double> s;
    if (!john_feasible(pr, th, s)) return 1e308;
    double b11 = th[2], b12 = th[3], b22 = th[4];
    double v = -t * std::log(b11 * b22 - b12 * b12);
    for (double x : s) v -= std::log(x);
    return v;
}

inline std::array<double, 5> john_grad(const JohnProblem& pr, const std::array<double, 5>& th,
                                       double t) {
    double b11 = th[2], b12 = th[3], b22 = th[4];
    double dt = b11 * b22 - b12 * b12;
    // d(-t log det)/d(b11,b12,b22) = -t/det * (b22, -2 b12, b11)
    std::array<double, 5> g{0, 0, -t * b22 / dt, 2 * t * b12 / dt, -t * b11 / dt};
    for (size_t i = 0; i < pr.a.size(); ++i) {
        V2 u = pr.a[i];
        double px = b11 * u.x + b12 * u.y, py = b12 * u.x + b22 * u.y;
        double nb = std::sqrt(px * px + py * py);
        double slack = pr.beta[i] - (u.x * th[0] + u.y * th[1]) - nb;
        double inv = 1.0 / slack;
        // d slack / d c = -u ; d nb / d b11 = px ux / nb, d/d b12 = (px uy + py ux)/nb, d/d b22 = py uy / nb
        g[0] += inv * u.x;
        g[1] += inv * u.y;
        g[2] += inv * (px * u.x / nb);
        g[3] += inv * (px * u.y + py * u.x) / nb;
        g[4] += inv * (py * u.y / nb);
    }
    return g;
}

inline bool solve5(std::array<std::array<double, 5>, 5> A, std::array<double, 5> b,
                   std::array<double, 5>& x) {
    for (int k = 0; k < 5; ++k) {
        int piv = k;
        for (int r = k + 1; r < 5; ++r)
            if (std::abs(A[r][k]) > std::abs(A[piv][k])) piv = r;
        if (std::abs(A[piv][k]) < 1e-300) return false;
        std::swap(A[piv], A[k]);
        std::swap(b[piv], b[k]);
        for (int r = k + 1; r < 5; ++r) {
            double f = A[r][k] / A[k][k];
            for (int j = k; j < 5; ++j) A[r][j] -= f * A[k][j];
            b[r] -= f * b[k];
        }
    }
    for (int k = 4; k >= 0; --k) {
        double s = b[k];
        for (int j = k + 1; j < 5; ++j) s -= A[k][j] * x[j];
        x[k] = s / A[k][k];
    }
    return true;
}

}  // namespace detail

inline JohnResult john_ellipse(const Poly& P, int budget = 200) {
    detail::JohnProblem pr;
    size_t n = P.size();
    for (size_t i = 0; i < n; ++i) {
        V2 a = P[i], b = P[(i + 1) % n];
        V2 e = b - a;
        V2 nrm = normalized(V2{e.y, -e.x});
        pr.a.push_back(nrm);
        pr.beta.push_back(dot(a, nrm));
    }
    V2 g = polygon_centroid(P);
    double r0 = 1e308;
    for (size_t i = 0; i < n; ++i) r0 = std::min(r0, pr.beta[i] - dot(pr.a[i], g));
    std::array<double, 5> th{g.x, g.y, 0.9 * r0, 0.0, 0.9 * r0};

    double t = 1.0;
    int iters = 0;
    bool converged = false;
    double m = double(n);
    while (iters < budget) {
        // inner Newton loop at fixed t
        for (int inner = 0; inner < 50 && iters < budget; ++inner, ++iters) {
            auto grad = detail::john_grad(pr, th, t);
            // Hessian by symmetric finite differences of the gradient
            std::array<std::array<double, 5>, 5> H{};
            for (int j = 0; j < 5; ++j) {
                double h = 1e-6 * (std::abs(th[j]) + 1e-3);
                auto tp = th, tm = th;
                tp[j] += h;
                tm[j] -= h;
                auto gp = detail::john_grad(pr, tp, t);
                auto gm = detail::john_grad(pr, tm, t);
                for (int i = 0; i < 5; ++i) H[i][j] = (gp[i] - gm[i]) / (2 * h);
            }
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) {
                    double s = 0.5 * (H[i][j] + H[j][i]);
                    H[i][j] = H[j][i] = s;
                }
            std::array<double, 5> step{};
            std::array<double, 5> rhs;
            for (int i = 0; i < 5; ++i) rhs[i] = -grad[i];
            if (!detail::solve5(H, rhs, step)) break;
            double lambda2 = 0;
            for (int i = 0; i < 5; ++i) lambda2 += -grad[i] * step[i];
            double f0 = detail::john_phi(pr, th, t);
            double alpha = 1.0;
            std::array<double, 5> cand;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                for (int i = 0; i < 5; ++i) cand[i] = th[i] + alpha * step[i];
                double f1 = detail::john_phi(pr, cand, t);
                if (f1 < f0 - 1e-12 * std::abs(f0)) {
                    th = cand;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved || lambda2 < 1e-18) break;
        }
        if (m / t <= 1e-8) {
            converged = true;
            break;
        }
        t *= 20.0;
    }

    JohnResult R;
    R.center = {th[0], th[1]};
    R.B = {th[2], th[3], th[3], th[4]};
    R.converged = converged;
    R.gap = m / t;
    R.iterations = iters;
    Mat2 Binv = inverse(R.B);
    double lam = 0;
    for (const V2& v : P) lam = std::max(lam, norm(mul(Binv, v - R.center)));
    R.bm_disc_upper = lam;
    return R;
}

inline JohnResult john_ellipse(const Polygon2D& P, int budget = 200) {
    return john_ellipse(P.v, budget);
}

}  // namespace randvol
