#pragma once

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "genbound/errors.hpp"

namespace genbound {

// Monic integer polynomial defining the field, coefficient of x^i at index i.
struct Polynomial {
    std::vector<mpz_class> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    const mpz_class& leading() const { return coeffs.back(); }

    // Canonical text form used for hashing and cache keys.
    std::string coeff_string() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (i) s += ',';
            s += coeffs[i].get_str();
        }
        return s;
    }
};

namespace detail {

using ZPoly = std::vector<mpz_class>;  // dense, index i = coeff of x^i

inline void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int zp_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline ZPoly zp_derivative(const ZPoly& a) {
    ZPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mpz_class(a[i] * static_cast<long>(i)));
    zp_trim(d);
    return d;
}

inline mpz_class zp_content(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;  // non-negative
}

inline void zp_divexact_scalar(ZPoly& a, const mpz_class& d) {
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

// Pseudo-remainder: returns R with lc(B)^(degA-degB+1) * A = Q*B + R.
inline ZPoly zp_prem(ZPoly A, const ZPoly& B) {
    const int db = zp_deg(B);
    const mpz_class& lb = B.back();
    int e = zp_deg(A) - db + 1;
    while (!A.empty() && zp_deg(A) >= db) {
        const int k = zp_deg(A) - db;
        const mpz_class la = A.back();
        for (auto& c : A) c *= lb;
        for (int i = 0; i <= db; ++i) A[i + k] -= la * B[i];
        zp_trim(A);
        --e;
    }
    if (e > 0) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : A) c *= scale;
    }
    return A;
}

inline mpz_class zp_pow(const mpz_class& b, long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// Resultant of two nonzero integer polynomials by the subresultant PRS.
inline mpz_class zp_resultant(ZPoly A, ZPoly B) {
    zp_trim(A);
    zp_trim(B);
    if (A.empty() || B.empty()) return 0;
    int sign = 1;
    if (zp_deg(A) < zp_deg(B)) {
        if ((zp_deg(A) & 1) && (zp_deg(B) & 1)) sign = -sign;
        std::swap(A, B);
    }
    if (zp_deg(B) == 0) return sign * zp_pow(B[0], zp_deg(A));
    mpz_class ca = zp_content(A), cb = zp_content(B);
    zp_divexact_scalar(A, ca);
    zp_divexact_scalar(B, cb);
    mpz_class t = zp_pow(ca, zp_deg(B)) * zp_pow(cb, zp_deg(A)) * sign;
    mpz_class g = 1, h = 1;
    while (true) {
        const int da = zp_deg(A), db = zp_deg(B);
        const int delta = da - db;
        if ((da & 1) && (db & 1)) t = -t;
        ZPoly R = zp_prem(A, B);
        if (R.empty()) return 0;  // nontrivial common factor
        A = B;
        mpz_class divisor = g * zp_pow(h, delta);
        B = R;
        zp_divexact_scalar(B, divisor);
        g = A.back();
        if (delta > 0) {
            mpz_class hn = zp_pow(g, delta);
            if (delta > 1) mpz_divexact(hn.get_mpz_t(), hn.get_mpz_t(), zp_pow(h, delta - 1).get_mpz_t());
            h = hn;
        }
        if (zp_deg(B) == 0) break;
    }
    const int da = zp_deg(A);
    mpz_class result = zp_pow(B[0], da);
    if (da > 1) mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), zp_pow(h, da - 1).get_mpz_t());
    return t * result;
}

}  // namespace detail

// disc(P) = (-1)^{n(n-1)/2} Res(P, P'). Exact integer arithmetic; always
// defined for monic P.
inline mpz_class discriminant_of_polynomial(const Polynomial& P) {
    detail::ZPoly a(P.coeffs.begin(), P.coeffs.end());
    detail::ZPoly d = detail::zp_derivative(a);
    mpz_class res = detail::zp_resultant(a, d);
    const long n = P.degree();
    if (((n * (n - 1)) / 2) % 2) res = -res;
    return res;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline mpz_class parse_integer(const std::string& s, std::size_t& i) {
    skip_ws(s, i);
    std::size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits_from = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits_from) throw parse_error("expected an integer", start);
    if (i < s.size() && s[i] == '.')
        throw parse_error("non-integer coefficient", i);
    return mpz_class(s.substr(start, i - start));
}

inline Polynomial finish_polynomial(std::map<long, mpz_class>& terms) {
    long deg = 0;
    for (const auto& [e, c] : terms)
        if (c != 0 && e > deg) deg = e;
    if (deg < 2) throw parse_error("degree < 2: the field polynomial must have degree at least 2");
    Polynomial P;
    P.coeffs.assign(deg + 1, mpz_class(0));
    for (const auto& [e, c] : terms) P.coeffs[e] += c;
    if (P.coeffs[deg] != 1) throw parse_error("non-monic: leading coefficient must be 1");
    return P;
}

}  // namespace detail

// Accepts either a bracketed coefficient list "[c0, c1, ..., 1]" or a
// symbolic expression in x with integer coefficients ("x^3 + 5*x - 7").
inline Polynomial parse_polynomial(const std::string& text) {
    std::size_t i = 0;
    detail::skip_ws(text, i);
    if (i >= text.size()) throw parse_error("empty polynomial", i);

    std::map<long, mpz_class> terms;

    if (text[i] == '[') {
        ++i;
        long idx = 0;
        while (true) {
            mpz_class c = detail::parse_integer(text, i);
            terms[idx++] += c;
            detail::skip_ws(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ']') {
                ++i;
                break;
            }
            throw parse_error("expected ',' or ']' in coefficient list", i);
        }
        detail::skip_ws(text, i);
        if (i != text.size()) throw parse_error("trailing characters after coefficient list", i);
        return detail::finish_polynomial(terms);
    }

    bool first_term = true;
    while (true) {
        detail::skip_ws(text, i);
        if (i >= text.size()) {
            if (first_term) throw parse_error("empty polynomial", i);
            break;
        }
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            detail::skip_ws(text, i);
        } else if (!first_term) {
            throw parse_error("expected '+' or '-' between terms", i);
        }
        first_term = false;

        mpz_class coeff = 1;
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = detail::parse_integer(text, i);
            have_coeff = true;
            detail::skip_ws(text, i);
            if (i < text.size() && text[i] == '*') {
                ++i;
                detail::skip_ws(text, i);
            }
        }
        long exponent = 0;
        if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
            ++i;
            exponent = 1;
            detail::skip_ws(text, i);
            if (i < text.size() && text[i] == '^') {
                ++i;
                mpz_class e = detail::parse_integer(text, i);
                if (e < 0 || e > 1000000) throw parse_error("exponent out of range", i);
                exponent = e.get_si();
            }
        } else if (!have_coeff) {
            throw parse_error("expected a coefficient or 'x'", i);
        }
        terms[exponent] += sign * coeff;
    }
    return detail::finish_polynomial(terms);
}

}  // namespace genbound
