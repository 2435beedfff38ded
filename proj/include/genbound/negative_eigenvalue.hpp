#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "genbound/constants.hpp"
#include "genbound/errors.hpp"
#include "genbound/explicit_formula.hpp"

namespace genbound {

// Witness that the step-function quadratic form is indefinite: a coefficient
// vector v with v^T A v = q_value < 0 on the Gram matrix of step width delta
// and dimension N, certifying the threshold T = e^{2 N delta}.
struct Certificate {
    double delta = 0.0;
    int N = 0;
    std::vector<double> v;
    double q_value = 0.0;
    double T = 0.0;
};

using GrhEvaluator = std::function<double(double)>;

// Gram matrix of the step-function space, grown one row at a time, with the
// running LDL^T factorization. A[i][j] = tab[i+j] - tab[|i-j|] (1-based) is
// never stored; tab carries everything.
class GramState {
public:
    GramState(double delta_, int n_max_) : delta(delta_), n_max(n_max_) {
        tab.assign(2 * n_max_ + 1, 0.0);
        rows.reserve(n_max_);
        pivots.reserve(n_max_);
    }

    double delta;
    int n_max;
    std::vector<double> tab;                // tab[k] = k * grh_check(k delta)
    std::vector<std::vector<double>> rows;  // unit lower triangle, row k holds k entries
    std::vector<double> pivots;
    int neg_pivot_count = 0;
    bool zero_pivot_flag = false;
    double eps_pivot = check_epsilon;

    // entry of the Gram matrix for 1-based basis indices
    double entry(int i, int j) const { return tab[i + j] - tab[std::abs(i - j)]; }

    // Extends the factorization by basis row N (1-based); tab[2N-1], tab[2N]
    // must be filled. Returns the new pivot.
    double extend(int N) {
        const int k = N - 1;  // 0-based row
        std::vector<double> l(k);
        for (int i = 0; i < k; ++i) {
            double s = entry(N, i + 1);
            for (int j = 0; j < i; ++j) s -= rows[i][j] * pivots[j] * l[j];
            l[i] = s / pivots[i];
        }
        double d = entry(N, N);
        for (int j = 0; j < k; ++j) d -= l[j] * l[j] * pivots[j];
        if (k == 0) eps_pivot = 1e-9 * std::max(1.0, std::abs(entry(1, 1)));
        rows.push_back(std::move(l));
        pivots.push_back(d);
        if (std::abs(d) < eps_pivot)
            zero_pivot_flag = true;
        else if (d < 0.0)
            ++neg_pivot_count;
        return d;
    }

    // Last row of L^{-1}, scaled to unit max norm: the negative direction
    // when the newest pivot is negative.
    std::vector<double> witness() const {
        const int N = static_cast<int>(pivots.size());
        std::vector<double> v(N, 0.0);
        v[N - 1] = 1.0;
        for (int i = N - 2; i >= 0; --i) {
            double s = 0.0;
            for (int j = i + 1; j < N; ++j) s -= rows[j][i] * v[j];
            v[i] = s;
        }
        double vmax = 0.0;
        for (double c : v) vmax = std::max(vmax, std::abs(c));
        for (double& c : v) c /= vmax;
        return v;
    }

    double quadratic_form(const std::vector<double>& v) const {
        const int N = static_cast<int>(v.size());
        double q = 0.0;
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) q += v[i - 1] * v[j - 1] * entry(i, j);
        return q;
    }
};

struct NdeltaResult {
    int N = 0;  // 0 when no K-good dimension was found
    std::optional<Certificate> certificate;
    bool zero_pivot_seen = false;
};

// Grows the Gram matrix row by row and stops at the first dimension whose
// pivot signs show an odd number of negative eigenvalues with no degenerate
// pivot; the witness is then re-checked against tab before success is
// claimed. A degenerate pivot poisons every later factorization step (the
// leading minors never change), so the search reports no success once one
// appears.
inline NdeltaResult ndelta(const GrhEvaluator& grh_at, double delta, int n_max) {
    if (!(delta > 0)) throw domain_error("ndelta: delta must be positive");
    GramState state(delta, n_max);
    for (int N = 1; N <= n_max; ++N) {
        state.tab[2 * N - 1] = (2 * N - 1) * grh_at((2 * N - 1) * delta);
        state.tab[2 * N] = (2 * N) * grh_at((2 * N) * delta);
        state.extend(N);
        if (state.zero_pivot_flag) return {0, std::nullopt, true};
        if (state.neg_pivot_count % 2 == 1) {
            std::vector<double> v = state.witness();
            const double q = state.quadratic_form(v);
            if (q < -check_epsilon) {
                Certificate cert;
                cert.delta = delta;
                cert.N = N;
                cert.v = std::move(v);
                cert.q_value = q;
                cert.T = std::exp(2.0 * N * delta);
                return {N, std::move(cert), false};
            }
            // Pivot signs and the recomputed form disagree: numerically
            // unsound, treat like a degenerate pivot.
            return {0, std::nullopt, true};
        }
    }
    return {0, std::nullopt, false};
}

inline NdeltaResult ndelta(const FieldInvariants& inv, const NormTable& norms, double delta,
                           int n_max) {
    return ndelta([&](double L) { return grh_check(inv, norms, L); }, delta, n_max);
}

// The witness step function convolved with itself: a linear combination of
// triangles F_{k delta}, evaluated at the breakpoints m delta.
inline PiecewiseLinearWeight certificate_weight(const Certificate& cert) {
    const int N = cert.N;
    std::vector<double> coeff(2 * N + 1, 0.0);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            coeff[i + j] += cert.v[i - 1] * cert.v[j - 1];
            coeff[std::abs(i - j)] -= cert.v[i - 1] * cert.v[j - 1];
        }
    PiecewiseLinearWeight w;
    w.points.resize(2 * N + 1);
    for (int m = 0; m <= 2 * N; ++m) {
        double value = 0.0;
        for (int k = m + 1; k <= 2 * N; ++k) value += coeff[k] * (k - m);
        w.points[m] = {m * cert.delta, value * cert.delta};
    }
    w.points.back().second = 0.0;
    return w;
}

// Recomputes q twice: from a freshly built tab, and through the linear form
// applied to the explicit convolution square (divided by delta). The two
// routes must agree to 1e-6 relative; their disagreement signals a numeric or
// logic fault, not a failed bound.
inline double verify_certificate(const FieldInvariants& inv, const NormTable& norms,
                                 const Certificate& cert) {
    if (cert.N <= 0 || cert.v.size() != static_cast<std::size_t>(cert.N))
        throw domain_error("verify_certificate: malformed certificate");
    std::vector<double> tab(2 * cert.N + 1, 0.0);
    for (int k = 1; k <= 2 * cert.N; ++k)
        tab[k] = k * grh_check(inv, norms, k * cert.delta);
    double q = 0.0;
    for (int i = 1; i <= cert.N; ++i)
        for (int j = 1; j <= cert.N; ++j)
            q += cert.v[i - 1] * cert.v[j - 1] * (tab[i + j] - tab[std::abs(i - j)]);

    const double ell = ell_piecewise_linear(inv, norms, certificate_weight(cert));
    const double q_ell = ell / cert.delta;
    const double scale = std::max(std::abs(q), std::abs(q_ell));
    if (std::abs(q - q_ell) > 1e-6 * scale + 1e-12)
        throw integrity_error("verify_certificate: tab route " + std::to_string(q) +
                              " and convolution route " + std::to_string(q_ell) +
                              " disagree beyond 1e-6 relative");
    return q;
}

}  // namespace genbound
