#pragma once

#include <cstdint>
#include <vector>

#include "genbound/errors.hpp"

namespace genbound {

// Primes below `limit` by a segmented sieve of Eratosthenes. The limit guard
// keeps p in a machine word for the mod-p kernels downstream.
inline std::vector<std::uint64_t> primes_below(std::uint64_t limit,
                                               std::size_t segment_size = std::size_t(1) << 20) {
    constexpr std::uint64_t hard_limit = std::uint64_t(1) << 31;
    if (limit > hard_limit)
        throw resource_error("primes_below: limit " + std::to_string(limit) +
                             " exceeds the supported maximum 2^31");
    std::vector<std::uint64_t> primes;
    if (limit <= 2) return primes;

    std::uint64_t sqrt_limit = 1;
    while ((sqrt_limit + 1) * (sqrt_limit + 1) < limit) ++sqrt_limit;

    // Small primes up to sqrt(limit) by a plain sieve.
    std::vector<char> small(sqrt_limit + 1, 1);
    for (std::uint64_t i = 2; i * i <= sqrt_limit; ++i)
        if (small[i])
            for (std::uint64_t j = i * i; j <= sqrt_limit; j += i) small[j] = 0;
    std::vector<std::uint64_t> small_primes;
    for (std::uint64_t i = 2; i <= sqrt_limit; ++i)
        if (small[i]) small_primes.push_back(i);

    std::vector<char> sieve(segment_size);
    for (std::uint64_t low = 2; low < limit; low += segment_size) {
        const std::uint64_t high = std::min<std::uint64_t>(low + segment_size, limit);
        std::fill(sieve.begin(), sieve.end(), 1);
        for (std::uint64_t p : small_primes) {
            if (p * p >= high) break;
            std::uint64_t start = std::max<std::uint64_t>(p * p, ((low + p - 1) / p) * p);
            for (std::uint64_t j = start; j < high; j += p) sieve[j - low] = 0;
        }
        for (std::uint64_t v = low; v < high; ++v)
            if (sieve[v - low]) primes.push_back(v);
    }
    return primes;
}

}  // namespace genbound
