#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "genbound/errors.hpp"
#include "genbound/polynomial.hpp"

namespace genbound {
namespace modp {

// Dense polynomials over F_p, index i = coeff of x^i; p < 2^31 so products
// fit a 128-bit intermediate.
using Fp = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline void trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

inline Fp reduce(const Polynomial& P, std::uint64_t p) {
    Fp r(P.coeffs.size());
    mpz_class tmp;
    for (std::size_t i = 0; i < P.coeffs.size(); ++i) {
        tmp = P.coeffs[i] % static_cast<unsigned long>(p);
        if (tmp < 0) tmp += static_cast<unsigned long>(p);
        r[i] = tmp.get_ui();
    }
    trim(r);
    return r;
}

inline void make_monic(Fp& a, std::uint64_t p) {
    if (a.empty() || a.back() == 1) return;
    const std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
}

// a mod b in place (b monic not required).
inline void mod_into(Fp& a, const Fp& b, std::uint64_t p) {
    const int db = deg(b);
    const std::uint64_t inv = invmod(b.back(), p);
    while (deg(a) >= db) {
        const int k = deg(a) - db;
        const std::uint64_t c = mulmod(a.back(), inv, p);
        for (int i = 0; i <= db; ++i) {
            const std::uint64_t sub = mulmod(c, b[i], p);
            a[i + k] = (a[i + k] + p - sub) % p;
        }
        trim(a);
        if (a.empty()) return;
    }
}

inline Fp gcd(Fp a, Fp b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        mod_into(a, b, p);
        std::swap(a, b);
    }
    make_monic(a, p);
    return a;
}

inline Fp mul(const Fp& a, const Fp& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return r;
}

inline Fp mulmod_poly(const Fp& a, const Fp& b, const Fp& f, std::uint64_t p) {
    Fp r = mul(a, b, p);
    mod_into(r, f, p);
    return r;
}

inline Fp derivative(const Fp& a, std::uint64_t p) {
    Fp d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % p, p));
    trim(d);
    return d;
}

// Exact quotient a / b for monic b dividing a.
inline Fp divexact(Fp a, const Fp& b, std::uint64_t p) {
    const int db = deg(b);
    const std::uint64_t inv = invmod(b.back(), p);
    Fp q(deg(a) - db + 1, 0);
    while (deg(a) >= db) {
        const int k = deg(a) - db;
        const std::uint64_t c = mulmod(a.back(), inv, p);
        q[k] = c;
        for (int i = 0; i <= db; ++i) {
            const std::uint64_t sub = mulmod(c, b[i], p);
            a[i + k] = (a[i + k] + p - sub) % p;
        }
        trim(a);
    }
    return q;
}

// f / gcd(f, f'). Handles the p | multiplicity corner: if f' == 0 mod p the
// whole of f is a p-th power of its radical, which still has the same set of
// irreducible factors, so recurse by exponent division.
inline Fp squarefree_part(Fp f, std::uint64_t p) {
    make_monic(f, p);
    Fp d = derivative(f, p);
    if (d.empty()) {
        // f(x) = g(x^p); the radical equals the radical of g.
        Fp g;
        for (std::size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
        return squarefree_part(g, p);
    }
    Fp g = gcd(f, d, p);
    if (deg(g) == 0) return f;
    Fp sf = divexact(f, g, p);
    make_monic(sf, p);
    // Factors of f with multiplicity divisible by p vanish from f/gcd(f,f');
    // fold them back through the gcd part.
    Fp rest = g;
    Fp extra = gcd(rest, sf, p);
    while (deg(extra) > 0) {
        rest = divexact(rest, extra, p);
        extra = gcd(rest, sf, p);
    }
    if (deg(rest) > 0) {
        Fp missing = squarefree_part(rest, p);
        sf = mul(sf, missing, p);
        make_monic(sf, p);
    }
    return sf;
}

inline Fp frobenius(const Fp& base, const Fp& f, std::uint64_t p) {
    // base(x)^p mod f by square and multiply.
    Fp result{1};
    Fp b = base;
    std::uint64_t e = p;
    while (e) {
        if (e & 1) result = mulmod_poly(result, b, f, p);
        b = mulmod_poly(b, b, f, p);
        e >>= 1;
    }
    return result;
}

// Degrees of the distinct irreducible factors of the squarefree monic f,
// by distinct-degree splitting with x^{p^d} computed iteratively. Only the
// degree multiplicities are needed, never the factors themselves.
inline std::vector<int> distinct_degree_profile(Fp f, std::uint64_t p) {
    std::vector<int> degrees;
    make_monic(f, p);
    if (deg(f) <= 0) return degrees;
    Fp w{0, 1};  // x
    mod_into(w, f, p);
    w = frobenius(Fp{0, 1}, f, p);  // x^p mod f
    int d = 1;
    while (2 * d <= deg(f)) {
        Fp t = w;
        if (t.size() < 2) t.resize(2, 0);
        t[1] = (t[1] + p - 1) % p;  // w - x
        trim(t);
        Fp g = gcd(f, t, p);
        if (deg(g) > 0) {
            for (int k = 0; k < deg(g) / d; ++k) degrees.push_back(d);
            f = divexact(f, g, p);
            make_monic(f, p);
            if (deg(f) == 0) return degrees;
            mod_into(w, f, p);
        }
        ++d;
        if (2 * d > deg(f)) break;
        w = frobenius(w, f, p);
    }
    if (deg(f) > 0) degrees.push_back(deg(f));
    return degrees;
}

}  // namespace modp

// True when p does not divide the index [O_K : Z[x]/(P)], by Dedekind's
// criterion: with g the radical of P mod p lifted and h = (P mod p)/g lifted,
// F = (g h - P)/p, the test is gcd(F, g, h) = 1 in F_p[x].
inline bool dedekind_index_test(const Polynomial& P, std::uint64_t p) {
    using namespace modp;
    Fp pbar = reduce(P, p);
    Fp g = squarefree_part(pbar, p);
    Fp h = divexact(pbar, g, p);
    make_monic(h, p);

    // Lift g, h to Z[x] with coefficients in [0, p), form (g*h - P)/p exactly.
    const auto lift = [](const Fp& a) {
        detail::ZPoly r;
        r.reserve(a.size());
        for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
        return r;
    };
    detail::ZPoly gz = lift(g), hz = lift(h);
    detail::ZPoly prod(gz.size() + hz.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < gz.size(); ++i)
        for (std::size_t j = 0; j < hz.size(); ++j) prod[i + j] += gz[i] * hz[j];
    detail::ZPoly diff = prod;
    diff.resize(std::max(diff.size(), P.coeffs.size()), mpz_class(0));
    for (std::size_t i = 0; i < P.coeffs.size(); ++i) diff[i] -= P.coeffs[i];
    Fp fbar(diff.size());
    mpz_class tmp;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        mpz_divexact_ui(tmp.get_mpz_t(), diff[i].get_mpz_t(), static_cast<unsigned long>(p));
        tmp %= static_cast<unsigned long>(p);
        if (tmp < 0) tmp += static_cast<unsigned long>(p);
        fbar[i] = tmp.get_ui();
    }
    trim(fbar);

    Fp d = gcd(gcd(fbar, g, p), h, p);
    return deg(d) == 0;
}

}  // namespace genbound
