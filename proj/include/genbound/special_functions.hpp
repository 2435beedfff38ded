#pragma once

#include <cmath>
#include <utility>

#include "genbound/constants.hpp"
#include "genbound/errors.hpp"
#include "genbound/quadrature.hpp"

namespace genbound {

namespace detail {

// Power series sum_{k>=1} x^k/k^2, fast for |x| <= 1/2.
inline double dilog_series(double x) {
    double sum = 0.0, power = x;
    for (int k = 1; k < 1000; ++k) {
        const double term = power / (double(k) * k);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        power *= x;
    }
    return sum;
}

}  // namespace detail

// Li2 on [-1,1]. The raw series is kept to |x| <= 1/2; larger positive
// arguments go through the reflection Li2(x) + Li2(1-x) = pi^2/6 - log(x)log(1-x),
// and negative ones through the Landen map x -> x/(x-1).
inline double dilog(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw domain_error("dilog: argument outside [-1, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return Constants::pi * Constants::pi / 6.0;
    if (x == -1.0) return -Constants::pi * Constants::pi / 12.0;
    if (x > 0.5)
        return Constants::pi * Constants::pi / 6.0 - std::log(x) * std::log1p(-x) -
               detail::dilog_series(1.0 - x);
    if (x < -0.5) {
        const double u = x / (x - 1.0);
        const double l = std::log1p(-x);
        return -detail::dilog_series(u) - 0.5 * l * l;
    }
    return detail::dilog_series(x);
}

// Im Li2(iy) = sum_{k>=0} (-1)^k y^{2k+1}/(2k+1)^2, the inverse tangent
// integral. Direct series up to y = 0.7; above that the alternating series
// converges too slowly, so integrate atan(t)/t down from the Catalan value.
inline double im_dilog_i(double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw domain_error("im_dilog_i: argument outside [0, 1]");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return Constants::catalan;
    if (y <= 0.7) {
        double sum = 0.0, power = y;
        const double y2 = y * y;
        for (int k = 0; k < 1000; ++k) {
            const double term = (k % 2 ? -power : power) / double((2 * k + 1) * (2 * k + 1));
            sum += term;
            if (std::abs(term) < 1e-16 * std::abs(sum)) break;
            power *= y2;
        }
        return sum;
    }
    const auto integrand = [](double t) { return std::atan(t) / t; };
    return Constants::catalan - detail::adaptive_simpson(integrand, y, 1.0, 1e-15);
}

// I(F_L) and J(F_L) for the triangle weight F_L(x) = (L - |x|)+, L = log T.
inline std::pair<double, double> ij_triangle(double T) {
    if (!(T > 1.0)) throw domain_error("ij_triangle: requires T > 1");
    const double L = std::log(T);
    const double rs = 1.0 / std::sqrt(T);
    const double I = Constants::pi_sq_half() - 4.0 * dilog(rs) + dilog(1.0 / T);
    const double J = Constants::pi * L / 2.0 - 4.0 * Constants::catalan + 4.0 * im_dilog_i(rs);
    return {I, J};
}

// I(F_e)/(2 sqrt T) and J(F_e)/(2 sqrt T) for the halved-support exponential
// weight used by the simplified two-sum criterion.
inline std::pair<double, double> ij_simplified(double T) {
    if (!(T > 1.0)) throw domain_error("ij_simplified: requires T > 1");
    const double L = std::log(T);
    const double s = std::sqrt(T);
    const double rs = 1.0 / s;
    const double pi2 = Constants::pi * Constants::pi;
    const double I = (s - 1.0) * std::log(4.0 / (1.0 - rs)) - L * L / 8.0 + L / 2.0 -
                     pi2 / 12.0 - dilog(-rs);
    const double J = (s + 1.0) * std::log(2.0 / (1.0 + rs)) + L * L / 8.0 - L / 2.0 -
                     pi2 / 24.0 - dilog(-rs) + 0.5 * dilog(-1.0 / T);
    return {I, J};
}

// S(U) = 960 ((U-4)e^{U/4} + (U+4)e^{-U/4})^2 / U^5, evaluated through
// 2U cosh(U/4) - 8 sinh(U/4); a Taylor branch covers U <= 1 where even that
// form cancels (the bracket is U^3/24 + O(U^5)).
inline double s_bound(double U) {
    if (!(U > 0.0)) throw domain_error("s_bound: requires U > 0");
    double bracket;
    if (U <= 1.0) {
        // sum_{k>=1} 2U (U/4)^{2k} (2k)/(2k+1)!
        const double q = (U / 4.0) * (U / 4.0);
        double factorial = 6.0;  // (2k+1)! at k=1
        double qpow = q;
        bracket = 0.0;
        for (int k = 1; k < 40; ++k) {
            const double term = 2.0 * U * qpow * (2.0 * k) / factorial;
            bracket += term;
            if (term < 1e-18 * bracket) break;
            qpow *= q;
            factorial *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
        }
    } else {
        bracket = 2.0 * U * std::cosh(U / 4.0) - 8.0 * std::sinh(U / 4.0);
    }
    const double U5 = U * U * U * U * U;
    return 960.0 * bracket * bracket / U5;
}

// Majorant M_K(t) for the zero-counting function N_K(t), from the scalar
// field data. Trudgian's remainder constants are those for eta = 0.05.
inline double zero_count_bound(double t, double log_disc, int n) {
    if (!(t > 0.0)) throw domain_error("zero_count_bound: requires t > 0");
    if (t < 1.0)
        return 0.637 * t * (log_disc - 2.45 * n + s_bound(3.03 / t));
    return (t / Constants::pi) * (log_disc + n * std::log(t / (2.0 * Constants::pi * std::exp(1.0)))) +
           0.247 * (log_disc + n * std::log(t)) + 8.851 * n + 3.024;
}

}  // namespace genbound
