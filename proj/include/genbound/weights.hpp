#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "genbound/errors.hpp"
#include "genbound/quadrature.hpp"

namespace genbound {

// Even piecewise-linear weight given by its breakpoints on x >= 0. The final
// breakpoint carries value 0 and marks the support end; the function is 0
// beyond it.
struct PiecewiseLinearWeight {
    std::vector<std::pair<double, double>> points;  // (x, value), x ascending from 0

    void validate() const {
        if (points.empty()) throw domain_error("weight: no breakpoints");
        if (points.front().first != 0.0) throw domain_error("weight: first breakpoint must sit at x = 0");
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i].first > points[i - 1].first))
                throw domain_error("weight: breakpoints must be strictly increasing");
        if (points.back().second != 0.0)
            throw domain_error("weight: unbounded support, last breakpoint value must be 0");
    }

    double support_end() const { return points.back().first; }
    double value_at_zero() const { return points.front().second; }

    double operator()(double x) const {
        x = std::abs(x);
        if (x >= support_end()) return 0.0;
        auto it = std::upper_bound(points.begin(), points.end(), x,
                                   [](double v, const auto& pt) { return v < pt.first; });
        const std::size_t hi = static_cast<std::size_t>(it - points.begin());
        if (hi == 0) return points.front().second;
        const auto& [x0, y0] = points[hi - 1];
        const auto& [x1, y1] = points[hi];
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }

    double slope_after_zero() const {
        if (points.size() < 2) return 0.0;
        return (points[1].second - points[0].second) / (points[1].first - points[0].first);
    }

    // Triangle F_L(x) = (L - |x|)+, the one-step convolution square.
    static PiecewiseLinearWeight triangle(double L) {
        PiecewiseLinearWeight w;
        w.points = {{0.0, L}, {L, 0.0}};
        return w;
    }
};

// I(F) = int_0^inf (F(0) - F(x)) / (2 sinh(x/2)) dx. The integrand's x -> 0
// limit is -F'(0+); each linear piece is integrated adaptively and the tail
// beyond the support has the closed form -F(0) log tanh(s/4).
inline double i_functional(const PiecewiseLinearWeight& F, double tol = 1e-11) {
    F.validate();
    const double F0 = F.value_at_zero();
    const double s = F.support_end();
    if (s == 0.0) return 0.0;
    const double slope0 = F.slope_after_zero();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < F.points.size(); ++i) {
        const double a = F.points[i].first, b = F.points[i + 1].first;
        const auto integrand = [&](double x) {
            if (x < 1e-12) return -slope0;
            return (F0 - F(x)) / (2.0 * std::sinh(0.5 * x));
        };
        total += detail::adaptive_simpson(integrand, a, b, tol);
    }
    total += F0 > 0.0 ? -F0 * std::log(std::tanh(0.25 * s)) : 0.0;
    return total;
}

// J(F) = int_0^inf F(x) / (2 cosh(x/2)) dx; zero beyond the support.
inline double j_functional(const PiecewiseLinearWeight& F, double tol = 1e-11) {
    F.validate();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < F.points.size(); ++i) {
        const double a = F.points[i].first, b = F.points[i + 1].first;
        const auto integrand = [&](double x) { return F(x) / (2.0 * std::cosh(0.5 * x)); };
        total += detail::adaptive_simpson(integrand, a, b, tol);
    }
    return total;
}

}  // namespace genbound
