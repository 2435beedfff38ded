#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "genbound/algorithms.hpp"
#include "genbound/norm_table.hpp"

using namespace genbound;
using Catch::Approx;

namespace {
Polynomial poly(std::initializer_list<long> coeffs) {
    Polynomial P;
    for (long c : coeffs) P.coeffs.emplace_back(c);
    return P;
}
}  // namespace

TEST_CASE("build: Gaussian field up to 6") {
    Polynomial P = poly({1, 0, 1});
    FieldInvariants inv = field_invariants(P);
    NormTable t = build_norm_table(P, inv, 6.0);
    // norms: 2 (ramified), 4 = 2^2, 5, 5 (split)
    REQUIRE(t.entries.size() == 4);
    CHECK(t.entries[0].x == Approx(std::log(2.0)));
    CHECK(t.entries[1].x == Approx(std::log(4.0)));
    CHECK(t.entries[2].x == Approx(std::log(5.0)));
    CHECK(t.entries[3].x == Approx(std::log(5.0)));
    // prefix sum of w: log2/sqrt2 + log2/2 + 2 log5/sqrt5
    const double expect = std::log(2.0) / std::sqrt(2.0) + std::log(2.0) / 2.0 +
                          2.0 * std::log(5.0) / std::sqrt(5.0);
    CHECK(t.pre_w.back() == Approx(expect).epsilon(1e-14));
    CHECK(t.prime_ideal_norms == std::vector<std::uint64_t>{2, 5});
}

TEST_CASE("build: empty below 2") {
    Polynomial P = poly({1, 0, 1});
    FieldInvariants inv = field_invariants(P);
    CHECK(build_norm_table(P, inv, 2.0).entries.empty());
    CHECK_THROWS_AS(build_norm_table(P, inv, 1.0), domain_error);
    CHECK_THROWS_AS(build_norm_table(P, inv, 1e12), resource_error);
}

TEST_CASE("completeness against a brute-force double loop") {
    Polynomial P = poly({-2, 0, 0, 1});  // x^3 - 2
    FieldInvariants inv = field_invariants(P);
    const double t_max = 500.0;
    NormTable t = build_norm_table(P, inv, t_max);
    std::size_t expected = 0;
    for (std::uint64_t p = 2; p < 500; ++p) {
        bool isprime = p >= 2;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) isprime = false;
        if (!isprime) continue;
        auto ls = local_splitting(P, inv, p);
        for (int f : ls.residue_degrees) {
            double norm = std::pow(double(p), f);
            while (norm < t_max) {
                ++expected;
                norm *= std::pow(double(p), f);
            }
        }
    }
    CHECK(t.entries.size() == expected);
    // every entry power is below t_max, sorted ascending
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        CHECK(double(NormTable::norm_value(t.entries[i])) < t_max);
        if (i) CHECK(t.entries[i].x >= t.entries[i - 1].x);
    }
    // all prefix arrays nondecreasing
    for (std::size_t i = 1; i < t.pre_w.size(); ++i) {
        CHECK(t.pre_w[i] >= t.pre_w[i - 1]);
        CHECK(t.pre_xw[i] >= t.pre_xw[i - 1]);
        CHECK(t.pre_logf[i] >= t.pre_logf[i - 1]);
        CHECK(t.pre_xlogf[i] >= t.pre_xlogf[i - 1]);
        CHECK(t.pre_logf_inv[i] >= t.pre_logf_inv[i - 1]);
    }
}

TEST_CASE("determinism: two builds are bit-identical") {
    Polynomial P = poly({-1, -1, 0, 0, 0, 1});
    FieldInvariants inv = field_invariants(P);
    NormTable a = build_norm_table(P, inv, 2000.0);
    NormTable b = build_norm_table(P, inv, 2000.0);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].x == b.entries[i].x);
        CHECK(a.entries[i].p == b.entries[i].p);
        CHECK(a.entries[i].f == b.entries[i].f);
        CHECK(a.entries[i].m == b.entries[i].m);
    }
    for (std::size_t i = 0; i < a.pre_w.size(); ++i) CHECK(a.pre_w[i] == b.pre_w[i]);
}

TEST_CASE("synthetic tables") {
    // every p inert of degree 2, as used by the all-inert auxiliary bound
    std::vector<LocalSplitting> recs;
    for (std::uint64_t p : {2, 3, 5, 7}) recs.push_back({p, {2}, false});
    NormTable t = NormTable::from_splittings(recs, 100.0);
    // norms 4, 16, 64, 9, 81, 25, 49
    CHECK(t.entries.size() == 7);
    CHECK(t.prime_ideal_norms == std::vector<std::uint64_t>{4, 9, 25, 49});
}

TEST_CASE("conservatism: dropping entries or growing log disc never shrinks T") {
    Polynomial P = poly({-1, -1, 1});  // golden field
    FieldInvariants inv = field_invariants(P);
    FieldContext ctx(P, inv);
    const std::uint64_t base = bdydf(ctx).T;

    // enlarge log disc
    FieldInvariants fat = inv;
    fat.log_disc += 0.5;
    fat.disc_exact.reset();
    fat.disc_source = DiscSource::poly_disc_conservative;
    FieldContext ctx_fat(P, fat);
    CHECK(bdydf(ctx_fat).T >= base);

    // delete entries: rebuild with every prime above 3 skipped
    const mpz_class d = discriminant_of_polynomial(P);
    std::vector<LocalSplitting> thin;
    for (std::uint64_t p : primes_below(4096)) {
        if (p <= 3)
            thin.push_back(detail::splitting_with_disc(P, inv, p, d));
        else
            thin.push_back({p, {}, true});
    }
    FieldContext ctx_thin(P, inv, NormTable::from_splittings(thin, 4096.0));
    CHECK(bdydf(ctx_thin).T >= base);
}
