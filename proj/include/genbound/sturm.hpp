#pragma once

#include <utility>
#include <vector>

#include "genbound/errors.hpp"
#include "genbound/polynomial.hpp"

namespace genbound {

namespace detail {

inline int mpz_sign(const mpz_class& v) { return mpz_sgn(v.get_mpz_t()); }

// Strip the (positive) content so coefficients stay small along the chain.
inline void zp_primitive(ZPoly& a) {
    mpz_class c = zp_content(a);
    if (c > 1) zp_divexact_scalar(a, c);
}

}  // namespace detail

// Number of distinct real roots, counted by a Sturm chain in exact integer
// pseudo-remainder arithmetic. The J-term of the explicit formula flips sign
// with r1, so this must not be approximated.
inline int count_real_roots(const Polynomial& P) {
    using namespace detail;
    ZPoly p0(P.coeffs.begin(), P.coeffs.end());
    zp_trim(p0);
    ZPoly p1 = zp_derivative(p0);

    std::vector<ZPoly> chain;
    chain.push_back(p0);
    chain.push_back(p1);
    while (zp_deg(chain.back()) > 0) {
        const ZPoly& a = chain[chain.size() - 2];
        const ZPoly& b = chain.back();
        const int delta = zp_deg(a) - zp_deg(b);
        ZPoly r = zp_prem(a, b);
        if (r.empty()) {
            // Nonconstant gcd of P and P': not squarefree.
            throw domain_error("signature: squarefree polynomial required");
        }
        // prem scales by lc(b)^(delta+1); compensate so the next element is
        // -(a mod b) times a positive constant.
        const bool mult_negative = (mpz_sign(b.back()) < 0) && ((delta + 1) % 2 == 1);
        if (!mult_negative)
            for (auto& c : r) c = -c;
        zp_primitive(r);
        chain.push_back(std::move(r));
    }

    // Sign-change counts at -infinity and +infinity.
    int v_neg = 0, v_pos = 0;
    int prev_neg = 0, prev_pos = 0;
    for (const auto& q : chain) {
        if (q.empty()) continue;
        const int lead = mpz_sign(q.back());
        const int at_pos = lead;
        const int at_neg = (zp_deg(q) % 2 == 0) ? lead : -lead;
        if (prev_pos != 0 && at_pos != prev_pos) ++v_pos;
        if (prev_neg != 0 && at_neg != prev_neg) ++v_neg;
        prev_pos = at_pos;
        prev_neg = at_neg;
    }
    return v_neg - v_pos;
}

// (r1, r2) with r1 + 2 r2 = degree.
inline std::pair<int, int> signature(const Polynomial& P) {
    const int r1 = count_real_roots(P);
    const int n = P.degree();
    if ((n - r1) % 2 != 0) throw domain_error("signature: inconsistent root count");
    return {r1, (n - r1) / 2};
}

}  // namespace genbound
