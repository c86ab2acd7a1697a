#pragma once
// Weighted least-squares fits for the sweep reports: a plain log-log power-law
// fit and a curvature-corrected variant log g = a + b log x + c x that removes
// the leading finite-size bend of the gap curves before reading off the
// exponent b.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace randvol {

struct PowerFit {
    double slope = 0;
    double slope_se = 0;
    double intercept = 0;      // log-space intercept a
    double curvature = 0;      // c term of the corrected fit, 0 for the plain fit
    double chi2 = 0;
    int dof = 0;
};

namespace detail {

// Solve the weighted normal equations for columns X (k basis columns), target
// y, weights w; fills beta and the covariance (X^T W X)^{-1}.
inline void wls(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                const std::vector<double>& w, std::vector<double>& beta,
                std::vector<std::vector<double>>& cov) {
    int k = (int)X.size();
    int n = (int)y.size();
    std::vector<std::vector<double>> A(k, std::vector<double>(k, 0.0));
    std::vector<double> b(k, 0.0);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < k; ++r) {
            b[r] += w[i] * X[r][i] * y[i];
            for (int c = 0; c < k; ++c) A[r][c] += w[i] * X[r][i] * X[c][i];
        }
    // invert A by Gauss-Jordan (k <= 3)
    std::vector<std::vector<double>> M(k, std::vector<double>(2 * k, 0.0));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) M[r][c] = A[r][c];
        M[r][k + r] = 1.0;
    }
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (M[piv][col] == 0.0) throw std::runtime_error("singular design matrix");
        std::swap(M[piv], M[col]);
        double d = M[col][col];
        for (int c = 0; c < 2 * k; ++c) M[col][c] /= d;
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = M[r][col];
            for (int c = 0; c < 2 * k; ++c) M[r][c] -= f * M[col][c];
        }
    }
    cov.assign(k, std::vector<double>(k, 0.0));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) cov[r][c] = M[r][k + c];
    beta.assign(k, 0.0);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) beta[r] += cov[r][c] * b[c];
}

inline PowerFit power_fit_impl(const std::vector<double>& x, const std::vector<double>& g,
                               const std::vector<double>& g_se, bool corrected) {
    int n = (int)x.size();
    int k = corrected ? 3 : 2;
    if (n < k + 1) throw std::invalid_argument("power fit: grid too sparse to fit");
    std::vector<double> ly(n), w(n);
    std::vector<std::vector<double>> X(k, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        if (!(x[i] > 0) || !(g[i] > 0))
            throw std::invalid_argument("power fit: needs positive abscissae and gaps");
        ly[i] = std::log(g[i]);
        double se_log = g_se[i] > 0 ? g_se[i] / g[i] : 1e-6;
        w[i] = 1.0 / (se_log * se_log);
        X[0][i] = 1.0;
        X[1][i] = std::log(x[i]);
        if (corrected) X[2][i] = x[i];
    }
    std::vector<double> beta;
    std::vector<std::vector<double>> cov;
    wls(X, ly, w, beta, cov);
    PowerFit F;
    F.intercept = beta[0];
    F.slope = beta[1];
    F.slope_se = std::sqrt(std::max(0.0, cov[1][1]));
    if (corrected) F.curvature = beta[2];
    F.dof = n - k;
    for (int i = 0; i < n; ++i) {
        double fit = beta[0] + beta[1] * X[1][i] + (corrected ? beta[2] * X[2][i] : 0.0);
        F.chi2 += w[i] * (ly[i] - fit) * (ly[i] - fit);
    }
    return F;
}

}  // namespace detail

// Plain weighted OLS of log(gap) on log(x), weights from stderrs.
inline PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& gap,
                              const std::vector<double>& gap_se) {
    return detail::power_fit_impl(x, gap, gap_se, false);
}

// Adds a linear-in-x curvature term so the exponent is read at the x -> 0 end.
inline PowerFit fit_power_law_corrected(const std::vector<double>& x,
                                        const std::vector<double>& gap,
                                        const std::vector<double>& gap_se) {
    return detail::power_fit_impl(x, gap, gap_se, true);
}

}  // namespace randvol
