#pragma once

#include <cmath>
#include <optional>

#include "genbound/constants.hpp"
#include "genbound/errors.hpp"
#include "genbound/explicit_formula.hpp"

namespace genbound {

// r(L, n, t): the solved form of the one-step criterion at trial point t.
inline double r_bound(double L, int n, double t) {
    if (!(t > 1)) throw domain_error("r_bound: t must exceed 1");
    const double lt = std::log(t);
    return 2.0 / (1.0 - 1.0 / t) *
           (L + lt - (Constants::gamma_log_2pi() - lt / (t - 1.0) + std::log1p(-1.0 / t)) * n);
}

// ell(n, t), the inverse scale with r(ell(n,t), n, t) = sqrt(t).
inline double ell_inverse_scale(int n, double t) {
    if (!(t > 1)) throw domain_error("ell_inverse_scale: t must exceed 1");
    const double lt = std::log(t);
    return 0.5 * (std::sqrt(t) - 1.0 / std::sqrt(t)) - lt +
           (Constants::gamma_log_2pi() - lt / (t - 1.0) + std::log1p(-1.0 / t)) * n;
}

struct TeasyntBounds {
    double general;
    std::optional<double> large_disc;  // present iff log disc >= n 2^n
};

// The two closed-form caps on T_e(K); squares of the displayed square-root
// bounds.
inline TeasyntBounds teasynt_bounds(double log_disc, int n) {
    if (!(log_disc > 1)) throw domain_error("teasynt_bounds: log disc must exceed 1");
    const double base = log_disc + std::log(log_disc) - Constants::gamma_log_2pi() * n + 1.0;
    const double general_root = 2.0 * (base + (n + 1) * std::log(7.0 * log_disc) / log_disc);
    TeasyntBounds out{general_root * general_root, std::nullopt};
    if (log_disc >= n * std::pow(2.0, n)) {
        const double root = 2.0 * base;
        out.large_disc = root * root;
    }
    return out;
}

struct Coro2Bound {
    double bound;
    bool four_log_sq_applies;
};

// 4 (1 + (2 pi e^gamma)^{-n})^2 log^2 disc; the plain 4 log^2 disc form
// applies once log disc <= (2 pi e^gamma)^n / e.
inline Coro2Bound coro2_bound(double log_disc, int n) {
    if (!(log_disc > 0)) throw domain_error("coro2_bound: log disc must be positive");
    const double base = 2.0 * Constants::pi * std::exp(Constants::euler_gamma);
    const double coeff = 1.0 + std::pow(base, -n);
    return {4.0 * coeff * coeff * log_disc * log_disc,
            log_disc <= std::pow(base, n) / std::exp(1.0)};
}

struct MultistepClosedBounds {
    double two_step;
    double three_step;
};

inline MultistepClosedBounds multistep_closed_bounds(double log_disc, int n) {
    if (!(log_disc > 0)) throw domain_error("multistep_closed_bounds: log disc must be positive");
    const double two_root = std::max(2.456 * log_disc - 5.623 * n + 14.0, std::sqrt(13.0));
    const double three_root = std::max(2.193 * log_disc - 6.19 * n + 16.0, std::sqrt(32.0));
    return {two_root * two_root, three_root * three_root};
}

// max(sqrt T0, r(log disc, n, T0) - 4/(1-1/T0)^2 * sum_{Np^m <= T0}
// (1/Np^m - 1/T0) log Np); the prime sum is non-strict at T0, where its
// summand vanishes anyway.
inline double phielong_rhs(const FieldInvariants& inv, const NormTable& norms, double T0) {
    if (!(T0 > 1)) throw domain_error("phielong_rhs: T0 must exceed 1");
    const double L0 = std::log(T0);
    if (!(L0 <= norms.log_t_max()))
        throw coverage_error("phielong_rhs: norm table does not cover T0");
    const std::size_t idx = norms.index_at_or_below(L0);
    const double prime_sum = norms.pre_logf_inv[idx] - norms.pre_logf[idx] / T0;
    const double q = 1.0 - 1.0 / T0;
    const double value = r_bound(inv.log_disc, inv.n, T0) - 4.0 / (q * q) * prime_sum;
    return std::max(std::sqrt(T0), value);
}

inline double bach401_bound(double log_disc) { return 4.01 * log_disc * log_disc; }

// The cap used as T_0 by the multistep driver: the closed-form bound matching
// the discriminant size, floored by 4.01 log^2 disc.
inline double bound_cap_T0(double log_disc, int n) {
    const TeasyntBounds tb = teasynt_bounds(log_disc, n);
    const double t0 = (log_disc < n * std::pow(2.0, n)) ? tb.general : *tb.large_disc;
    return std::min(t0, bach401_bound(log_disc));
}

// Every closed-form bound for one field, for reporting.
struct BoundReport {
    double teasynt_general = 0.0;
    std::optional<double> teasynt_large_disc;
    double coro2 = 0.0;
    bool coro2_four_applies = false;
    double bach401 = 0.0;
    double two_step = 0.0;
    double three_step = 0.0;
    double cap_T0 = 0.0;
};

inline BoundReport make_bound_report(const FieldInvariants& inv) {
    BoundReport rep;
    const TeasyntBounds tb = teasynt_bounds(inv.log_disc, inv.n);
    rep.teasynt_general = tb.general;
    rep.teasynt_large_disc = tb.large_disc;
    const Coro2Bound cb = coro2_bound(inv.log_disc, inv.n);
    rep.coro2 = cb.bound;
    rep.coro2_four_applies = cb.four_log_sq_applies;
    rep.bach401 = bach401_bound(inv.log_disc);
    const MultistepClosedBounds mb = multistep_closed_bounds(inv.log_disc, inv.n);
    rep.two_step = mb.two_step;
    rep.three_step = mb.three_step;
    rep.cap_T0 = bound_cap_T0(inv.log_disc, inv.n);
    return rep;
}

}  // namespace genbound
