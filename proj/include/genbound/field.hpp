#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genbound/errors.hpp"
#include "genbound/modpoly.hpp"
#include "genbound/polynomial.hpp"
#include "genbound/special_functions.hpp"
#include "genbound/sturm.hpp"

namespace genbound {

enum class DiscSource { computed_exact, user_supplied, poly_disc_conservative };

inline const char* to_string(DiscSource s) {
    switch (s) {
        case DiscSource::computed_exact: return "computed_exact";
        case DiscSource::user_supplied: return "user_supplied";
        default: return "poly_disc_conservative";
    }
}

struct FieldInvariants {
    int n = 0;
    int r1 = 0;
    int r2 = 0;
    double log_disc = 0.0;  // natural log of |Delta_K| (or of the stand-in)
    std::optional<mpz_class> disc_exact;
    DiscSource disc_source = DiscSource::computed_exact;
    // False only when the probabilistic irreducibility policy could not
    // certify P irreducible; the bound is still emitted with a warning.
    bool irreducible_certified = true;
};

// Splitting data of one rational prime: residue degrees f_i, one per prime
// ideal above p. skipped means p may divide the index and the prime is
// conservatively omitted from all sums.
struct LocalSplitting {
    std::uint64_t p = 0;
    std::vector<int> residue_degrees;
    bool skipped = false;
};

inline double zero_count_bound(double t, const FieldInvariants& inv) {
    return zero_count_bound(t, inv.log_disc, inv.n);
}

namespace detail {

inline double log_abs_mpz(const mpz_class& v) {
    signed long exp2;
    const double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(exp2) * std::log(2.0);
}

// FNV-1a 64 over the canonical coefficient string; used to key caches and
// certificates to the defining polynomial.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct SquarePartScan {
    std::vector<std::uint64_t> square_primes;  // p with p^2 | d, found below the bound
    bool certified;                            // true when no undetected square factor can remain
};

// Trial division up to `bound`, then primality / perfect-square analysis of
// the cofactor. certified stays false for a composite cofactor that could
// hide a large square divisor.
inline SquarePartScan scan_square_part(const mpz_class& d_in, std::uint64_t bound = 1000000) {
    SquarePartScan out{{}, true};
    mpz_class d = abs(d_in);
    if (d <= 1) return out;
    for (std::uint64_t p = 2; p <= bound && d > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
                mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
                ++e;
            }
            if (e >= 2) out.square_primes.push_back(p);
        }
        if (mpz_cmp_ui(d.get_mpz_t(), 1) == 0) break;
        mpz_class psq = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
        if (psq > d) break;  // cofactor is prime
    }
    if (d == 1) return out;
    if (mpz_probab_prime_p(d.get_mpz_t(), 40)) return out;
    // A prime square as cofactor is still a certifiable square divisor.
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
        if (mpz_probab_prime_p(r.get_mpz_t(), 40) && mpz_fits_ulong_p(r.get_mpz_t())) {
            out.square_primes.push_back(r.get_ui());
            return out;
        }
    }
    out.certified = false;
    return out;
}

// Largest squarefree d with d * (square) = v, preserving sign. Empty when the
// factorization cannot be completed.
inline std::optional<mpz_class> squarefree_kernel(const mpz_class& v, std::uint64_t bound = 1000000) {
    mpz_class d = abs(v);
    if (d == 0) return std::nullopt;
    mpz_class kernel = 1;
    for (std::uint64_t p = 2; p <= bound && d > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
                mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
                ++e;
            }
            if (e % 2) kernel *= static_cast<unsigned long>(p);
        }
        if (mpz_cmp_ui(d.get_mpz_t(), 1) == 0) break;
        mpz_class psq = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
        if (psq > d) break;
    }
    if (d > 1) {
        if (mpz_probab_prime_p(d.get_mpz_t(), 40)) {
            kernel *= d;
        } else if (mpz_perfect_square_p(d.get_mpz_t())) {
            // even power of an unknown prime: contributes nothing
        } else {
            return std::nullopt;
        }
    }
    if (sgn(v) < 0) kernel = -kernel;
    return kernel;
}

}  // namespace detail

inline std::string field_hash(const Polynomial& P) {
    return detail::fnv1a_hex(std::to_string(P.degree()) + ":" + P.coeff_string());
}

// Irreducibility policy: cheap certificates first (an irreducible reduction,
// or factor-degree subset sums across several primes pinning the possible
// proper-factor degrees to none), a rational-root scan to catch the common
// failure, and otherwise accept with a warning.
struct IrreducibilityReport {
    bool reducible = false;      // definitely reducible
    bool certified = false;      // definitely irreducible
    std::string reason;
};

inline IrreducibilityReport check_irreducibility(const Polynomial& P, const mpz_class& disc_p) {
    IrreducibilityReport rep;
    if (disc_p == 0) {
        rep.reducible = true;
        rep.reason = "disc(P) = 0: P is not squarefree";
        return rep;
    }
    const int n = P.degree();
    // Small integer roots: P(k) = 0 forces a linear factor.
    for (long k = -50; k <= 50; ++k) {
        mpz_class acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * k + P.coeffs[i];
        if (acc == 0) {
            rep.reducible = true;
            rep.reason = "integer root x = " + std::to_string(k);
            return rep;
        }
    }
    // Possible degrees of a factor over Q are subset sums of the mod-p factor
    // degrees, for every unramified p; intersect them.
    std::set<int> possible;
    for (int i = 0; i <= n; ++i) possible.insert(i);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull,
                            73ull, 79ull, 83ull, 89ull, 97ull, 101ull, 103ull, 107ull, 109ull,
                            113ull, 127ull, 131ull, 137ull, 139ull, 149ull, 151ull, 157ull,
                            163ull, 167ull, 173ull, 179ull, 181ull, 191ull, 193ull, 197ull, 199ull}) {
        if (mpz_divisible_ui_p(disc_p.get_mpz_t(), p)) continue;
        auto degs = modp::distinct_degree_profile(modp::reduce(P, p), p);
        if (degs.size() == 1 && degs[0] == n) {
            rep.certified = true;
            rep.reason = "irreducible mod " + std::to_string(p);
            return rep;
        }
        std::set<int> sums{0};
        for (int d : degs) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + d);
            sums = std::move(next);
        }
        std::set<int> keep;
        for (int s : possible)
            if (sums.count(s)) keep.insert(s);
        possible = std::move(keep);
        if (possible.size() == 2) {  // only {0, n} remain
            rep.certified = true;
            rep.reason = "factor degree sums exclude every proper degree";
            return rep;
        }
    }
    rep.reason = "no certificate found; accepted with warning";
    return rep;
}

// Assembles degree, signature and the log-discriminant. Discriminant sourcing
// order: explicit override, exact quadratic kernel, index-one certification
// via Dedekind tests at every p with p^2 | disc(P), and finally |disc(P)|
// itself as a valid conservative stand-in (enlarging log Delta only enlarges
// the bounds this feeds).
inline FieldInvariants field_invariants(const Polynomial& P,
                                        std::optional<mpz_class> disc_override = std::nullopt,
                                        std::optional<double> log_disc_override = std::nullopt) {
    FieldInvariants inv;
    inv.n = P.degree();
    const mpz_class disc_p = discriminant_of_polynomial(P);

    IrreducibilityReport irr = check_irreducibility(P, disc_p);
    if (irr.reducible) throw domain_error("field_invariants: P is reducible: " + irr.reason);
    inv.irreducible_certified = irr.certified;

    auto [r1, r2] = signature(P);
    inv.r1 = r1;
    inv.r2 = r2;

    // no number field of degree >= 2 has |disc| <= 1, whatever the source
    const auto finish = [](FieldInvariants v) {
        if (!(v.log_disc > 0))
            throw domain_error("field_invariants: |disc| <= 1 cannot occur for an irreducible P");
        return v;
    };

    if (disc_override) {
        if (*disc_override == 0) throw domain_error("field_invariants: disc override must be nonzero");
        const bool want_negative = (inv.r2 % 2) == 1;
        if ((sgn(*disc_override) < 0) != want_negative)
            throw domain_error("field_invariants: disc override sign inconsistent with signature");
        inv.disc_exact = *disc_override;
        inv.log_disc = detail::log_abs_mpz(*disc_override);
        inv.disc_source = DiscSource::user_supplied;
        return finish(inv);
    }
    if (log_disc_override) {
        if (!(*log_disc_override > 0)) throw domain_error("field_invariants: log disc override must be positive");
        inv.log_disc = *log_disc_override;
        inv.disc_source = DiscSource::user_supplied;
        return finish(inv);
    }

    if (inv.n == 2) {
        // Quadratic fields have a closed-form fundamental discriminant from
        // the squarefree kernel d: Delta = d if d = 1 mod 4, else 4d.
        if (auto kernel = detail::squarefree_kernel(disc_p)) {
            mpz_class d = *kernel;
            if (d == 1)
                throw domain_error("field_invariants: square discriminant, P is reducible");
            mpz_class mod4 = d % 4;
            if (mod4 < 0) mod4 += 4;
            mpz_class delta = (mod4 == 1) ? d : mpz_class(4 * d);
            inv.disc_exact = delta;
            inv.log_disc = detail::log_abs_mpz(delta);
            inv.disc_source = DiscSource::computed_exact;
            return finish(inv);
        }
    } else {
        detail::SquarePartScan scan = detail::scan_square_part(disc_p);
        if (scan.certified) {
            bool index_one = true;
            for (std::uint64_t p : scan.square_primes)
                if (!dedekind_index_test(P, p)) {
                    index_one = false;
                    break;
                }
            if (index_one) {
                inv.disc_exact = disc_p;
                inv.log_disc = detail::log_abs_mpz(disc_p);
                inv.disc_source = DiscSource::computed_exact;
                return finish(inv);
            }
        }
    }

    inv.disc_exact = std::nullopt;
    inv.log_disc = detail::log_abs_mpz(disc_p);
    inv.disc_source = DiscSource::poly_disc_conservative;
    return finish(inv);
}

namespace detail {

inline LocalSplitting splitting_with_disc(const Polynomial& P, const FieldInvariants& inv,
                                          std::uint64_t p, const mpz_class& disc_p) {
    LocalSplitting ls;
    ls.p = p;

    if (inv.n == 2 && inv.disc_exact) {
        const int k = mpz_kronecker_ui(inv.disc_exact->get_mpz_t(), static_cast<unsigned long>(p));
        if (k == 0)
            ls.residue_degrees = {1};
        else if (k == 1)
            ls.residue_degrees = {1, 1};
        else
            ls.residue_degrees = {2};
        return ls;
    }

    const bool divides_disc = mpz_divisible_ui_p(disc_p.get_mpz_t(), p);
    if (divides_disc) {
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), disc_p.get_mpz_t(), static_cast<unsigned long>(p));
        const bool square_divides = mpz_divisible_ui_p(q.get_mpz_t(), p);
        if (square_divides && !dedekind_index_test(P, p)) {
            ls.skipped = true;
            return ls;
        }
    }
    modp::Fp f = modp::reduce(P, p);
    if (divides_disc) f = modp::squarefree_part(f, p);
    ls.residue_degrees = modp::distinct_degree_profile(f, p);
    return ls;
}

}  // namespace detail

// Splitting of p read from P mod p. Quadratic fields with an exact
// discriminant go through the Kronecker symbol, which stays correct even at
// index primes; otherwise the distinct-degree profile of the squarefree part
// of P mod p applies whenever p does not divide the index, and the prime is
// skipped when that cannot be established.
inline LocalSplitting local_splitting(const Polynomial& P, const FieldInvariants& inv,
                                      std::uint64_t p) {
    return detail::splitting_with_disc(P, inv, p, discriminant_of_polynomial(P));
}

}  // namespace genbound
