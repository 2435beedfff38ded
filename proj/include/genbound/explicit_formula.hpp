#pragma once

#include <cmath>

#include "genbound/constants.hpp"
#include "genbound/errors.hpp"
#include "genbound/field.hpp"
#include "genbound/norm_table.hpp"
#include "genbound/special_functions.hpp"
#include "genbound/weights.hpp"

namespace genbound {

// Check functions below return (archimedean side) - (prime-sum side) of the
// generator criterion; a value below -check_epsilon certifies the threshold.
// Prime sums come from the table prefix arrays, so each call is two binary
// searches. Entries with x exactly at an integration boundary carry zero
// weight there, so boundary ties cannot change any value.

namespace detail {

inline void require_coverage(const NormTable& norms, double L) {
    if (!(L <= norms.log_t_max()))
        throw coverage_error("norm table too small: need coverage up to exp(" + std::to_string(L) +
                             "), table stops at t_max = " + std::to_string(norms.t_max));
}

}  // namespace detail

// Triangle-weight check at L = log T with the exact I(F_L), J(F_L).
// Negative means (1, L/2) is a K-good pair, so T = e^L bounds the generators.
inline double grh_check(const FieldInvariants& inv, const NormTable& norms, double L) {
    if (!(L > 0)) throw domain_error("grh_check: L must be positive");
    detail::require_coverage(norms, L);
    const auto [I, J] = ij_triangle(std::exp(L));
    const std::size_t idx = norms.index_below(L);
    const double prime_sum = 2.0 * (norms.pre_w[idx] - norms.pre_xw[idx] / L);
    return inv.log_disc - Constants::gamma_log_8pi() * inv.n + (I / L) * inv.n -
           (J / L) * inv.r1 - prime_sum;
}

// Same check with I(F_L), J(F_L) replaced by their pi^2/2 and pi L/2 - 4C
// majorant/minorant; this is the historical criterion behind T(K). Always at
// least grh_check at equal arguments.
inline double bdydf_check(const FieldInvariants& inv, const NormTable& norms, double T) {
    if (!(T > 1)) throw domain_error("bdydf_check: T must exceed 1");
    const double L = std::log(T);
    detail::require_coverage(norms, L);
    const double I = Constants::pi_sq_half();
    const double J = Constants::pi * L / 2.0 - 4.0 * Constants::catalan;
    const std::size_t idx = norms.index_below(L);
    const double prime_sum = 2.0 * (norms.pre_w[idx] - norms.pre_xw[idx] / L);
    return inv.log_disc - Constants::gamma_log_8pi() * inv.n + (I / L) * inv.n -
           (J / L) * inv.r1 - prime_sum;
}

// Two-sum check for the halved-support exponential weight: the norms below
// sqrt(T) enter with weight (m log Np - 2 + 2 sqrt(T)/Np^m) and those between
// sqrt(T) and T with weight (L - m log Np).
inline double t2_check(const FieldInvariants& inv, const NormTable& norms, double T) {
    if (!(T > 1)) throw domain_error("t2_check: T must exceed 1");
    const double L = std::log(T);
    detail::require_coverage(norms, L);
    const double sqrtT = std::sqrt(T);
    const auto [I_half, J_half] = ij_simplified(T);

    const std::size_t ih = norms.index_below(0.5 * L);
    const std::size_t if_ = norms.index_below(L);
    const double sum_low = (norms.pre_xlogf[ih] - 2.0 * norms.pre_logf[ih] +
                            2.0 * sqrtT * norms.pre_logf_inv[ih]);
    const double sum_high = L * (norms.pre_logf[if_] - norms.pre_logf[ih]) -
                            (norms.pre_xlogf[if_] - norms.pre_xlogf[ih]);
    const double rhs = (sqrtT - 1.0) * (inv.log_disc - Constants::gamma_log_8pi() * inv.n) +
                       I_half * inv.n - J_half * inv.r1;
    return rhs - (sum_low + sum_high);
}

// The linear form on an arbitrary even piecewise-linear weight: prime sum
// term by term over the table, I and J by adaptive quadrature. For the
// triangle F_L this equals L * grh_check(L).
inline double ell_piecewise_linear(const FieldInvariants& inv, const NormTable& norms,
                                   const PiecewiseLinearWeight& F) {
    F.validate();
    const double s = F.support_end();
    if (s == 0.0 && F.value_at_zero() == 0.0) return 0.0;
    if (!(s <= norms.log_t_max()))
        throw coverage_error("ell_piecewise_linear: weight support exceeds the norm table");
    double prime_sum = 0.0;
    for (const auto& e : norms.entries) {
        if (e.x >= s) break;
        prime_sum += e.logp_f * e.inv_norm_half * F(e.x);
    }
    const double tol = 1e-10 * std::max(1.0, std::abs(F.value_at_zero()));
    const double I = i_functional(F, tol);
    const double J = j_functional(F, tol);
    return -2.0 * prime_sum +
           F.value_at_zero() * (inv.log_disc - Constants::gamma_log_8pi() * inv.n) + I * inv.n -
           J * inv.r1;
}

}  // namespace genbound
