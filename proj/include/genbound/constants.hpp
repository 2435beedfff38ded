#pragma once

#include <cmath>

namespace genbound {

// Shared numeric constants. Derived values are computed from these at
// startup rather than pasted as rounded decimals, so the bound formulas
// never compound transcription error.
struct Constants {
    static constexpr double euler_gamma = 0.5772156649015329;
    static constexpr double catalan     = 0.9159655941772190;
    static constexpr double pi          = 3.141592653589793;

    static double gamma_log_2pi() {
        static const double v = euler_gamma + std::log(2.0 * pi);
        return v;
    }
    static double gamma_log_8pi() {
        static const double v = euler_gamma + std::log(8.0 * pi);
        return v;
    }
    static double pi_sq_half() {
        static const double v = pi * pi / 2.0;
        return v;
    }
};

// Margin applied to every success test: a check passes when its value is
// below -check_epsilon, never merely below zero. Rounding in binary64 must
// not certify a spurious bound; the margin is far below the check's natural
// scale near crossings.
inline constexpr double check_epsilon = 1e-9;

}  // namespace genbound
