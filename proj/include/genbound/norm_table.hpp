#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "genbound/errors.hpp"
#include "genbound/field.hpp"
#include "genbound/sieve.hpp"

namespace genbound {

// One (prime ideal, exponent) pair with N(p)^m < t_max.
struct NormEntry {
    double x;              // m log Np
    double logp_f;         // log Np = f log p
    double inv_norm_half;  // Np^{-m/2}
    double inv_norm;       // Np^{-m}
    std::uint64_t p;
    int f;
    int m;
};

// Sorted prime-power table with prefix sums, so every check function is a
// pair of binary searches. Immutable once built.
class NormTable {
public:
    double t_max = 0.0;
    std::vector<NormEntry> entries;
    // prefix[i] = sum over entries[0..i)
    std::vector<double> pre_w;         // logp_f * inv_norm_half
    std::vector<double> pre_xw;        // x * w
    std::vector<double> pre_logf;      // logp_f
    std::vector<double> pre_xlogf;     // x * logp_f
    std::vector<double> pre_logf_inv;  // logp_f * inv_norm
    std::vector<std::uint64_t> prime_ideal_norms;  // distinct p^f over m = 1 entries
    std::vector<LocalSplitting> splittings;        // one record per sieved prime

    double log_t_max() const { return std::log(t_max); }

    // Index of the first entry with x >= L; entries [0, idx) have x < L.
    std::size_t index_below(double L) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), L,
                                   [](const NormEntry& e, double v) { return e.x < v; });
        return static_cast<std::size_t>(it - entries.begin());
    }
    // Index just past the last entry with x <= L.
    std::size_t index_at_or_below(double L) const {
        auto it = std::upper_bound(entries.begin(), entries.end(), L,
                                   [](double v, const NormEntry& e) { return v < e.x; });
        return static_cast<std::size_t>(it - entries.begin());
    }

    std::uint64_t count_prime_ideals_up_to(std::uint64_t T) const {
        std::uint64_t count = 0;
        for (const auto& e : entries)
            if (e.m == 1 && norm_value(e) <= T) ++count;
        return count;
    }

    static std::uint64_t norm_value(const NormEntry& e) {
        std::uint64_t v = 1;
        for (int i = 0; i < e.f * e.m; ++i) v *= e.p;
        return v;
    }

    static NormTable from_splittings(const std::vector<LocalSplitting>& splittings, double t_max);
};

namespace detail {

inline void finalize_table(NormTable& table) {
    std::sort(table.entries.begin(), table.entries.end(),
              [](const NormEntry& a, const NormEntry& b) {
                  if (a.x != b.x) return a.x < b.x;
                  if (a.p != b.p) return a.p < b.p;
                  if (a.f != b.f) return a.f < b.f;
                  return a.m < b.m;
              });
    const std::size_t n = table.entries.size();
    table.pre_w.assign(n + 1, 0.0);
    table.pre_xw.assign(n + 1, 0.0);
    table.pre_logf.assign(n + 1, 0.0);
    table.pre_xlogf.assign(n + 1, 0.0);
    table.pre_logf_inv.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const NormEntry& e = table.entries[i];
        const double w = e.logp_f * e.inv_norm_half;
        table.pre_w[i + 1] = table.pre_w[i] + w;
        table.pre_xw[i + 1] = table.pre_xw[i] + e.x * w;
        table.pre_logf[i + 1] = table.pre_logf[i] + e.logp_f;
        table.pre_xlogf[i + 1] = table.pre_xlogf[i] + e.x * e.logp_f;
        table.pre_logf_inv[i + 1] = table.pre_logf_inv[i] + e.logp_f * e.inv_norm;
    }
    std::vector<std::uint64_t> norms;
    for (const auto& e : table.entries)
        if (e.m == 1) {
            std::uint64_t v = 1;
            for (int i = 0; i < e.f; ++i) v *= e.p;
            norms.push_back(v);
        }
    std::sort(norms.begin(), norms.end());
    norms.erase(std::unique(norms.begin(), norms.end()), norms.end());
    table.prime_ideal_norms = std::move(norms);
}

inline void append_prime_entries(NormTable& table, const LocalSplitting& ls, double t_max) {
    if (ls.skipped) return;
    const double logp = std::log(static_cast<double>(ls.p));
    const double log_tmax = std::log(t_max);
    for (int f : ls.residue_degrees) {
        const double log_norm = f * logp;
        if (!(log_norm < log_tmax)) continue;
        // exact integer norm check so the boundary is never decided by the log
        std::uint64_t norm = 1;
        bool overflow = false;
        for (int i = 0; i < f; ++i) {
            if (norm > (std::uint64_t(1) << 62) / ls.p) {
                overflow = true;
                break;
            }
            norm *= ls.p;
        }
        if (overflow) continue;
        std::uint64_t power = norm;
        int m = 1;
        while (static_cast<double>(power) < t_max) {
            NormEntry e;
            e.p = ls.p;
            e.f = f;
            e.m = m;
            e.x = m * log_norm;
            e.logp_f = log_norm;
            e.inv_norm_half = 1.0 / std::sqrt(static_cast<double>(power));
            e.inv_norm = 1.0 / static_cast<double>(power);
            table.entries.push_back(e);
            if (power > (std::uint64_t(1) << 62) / norm) break;
            power *= norm;
            ++m;
        }
    }
}

}  // namespace detail

inline NormTable NormTable::from_splittings(const std::vector<LocalSplitting>& splittings,
                                            double t_max) {
    NormTable table;
    table.t_max = t_max;
    table.splittings = splittings;
    for (const auto& ls : splittings) detail::append_prime_entries(table, ls, t_max);
    detail::finalize_table(table);
    return table;
}

// Enumerates all primes below t_max, resolves their splitting, and emits one
// entry per (ideal, exponent) with norm power below t_max. Deterministic: the
// sort key (x, p, f, m) does not depend on construction order.
inline NormTable build_norm_table(const Polynomial& P, const FieldInvariants& inv, double t_max,
                                  std::size_t segment_size = std::size_t(1) << 20) {
    if (!(t_max > 1.0)) throw domain_error("build_norm_table: t_max must exceed 1");
    if (t_max > static_cast<double>(std::uint64_t(1) << 31))
        throw resource_error("build_norm_table: t_max above the supported 2^31 limit");
    const mpz_class disc_p = discriminant_of_polynomial(P);
    std::vector<LocalSplitting> splittings;
    const auto primes = primes_below(static_cast<std::uint64_t>(std::ceil(t_max)), segment_size);
    splittings.reserve(primes.size());
    for (std::uint64_t p : primes) splittings.push_back(detail::splitting_with_disc(P, inv, p, disc_p));
    return NormTable::from_splittings(splittings, t_max);
}

}  // namespace genbound
