#include <catch2/catch_amalgamated.hpp>

#include "genbound/field.hpp"

using namespace genbound;

namespace {
Polynomial poly(std::initializer_list<long> coeffs) {
    Polynomial P;
    for (long c : coeffs) P.coeffs.emplace_back(c);
    return P;
}
const Polynomial reference_cubic = parse_polynomial(
    "x^3 + 559752270111028720*x + 55137512477462689");
}  // namespace

TEST_CASE("field invariants: Gaussian field") {
    FieldInvariants inv = field_invariants(poly({1, 0, 1}));
    CHECK(inv.n == 2);
    CHECK(inv.r1 == 0);
    CHECK(inv.r2 == 1);
    REQUIRE(inv.disc_exact.has_value());
    CHECK(*inv.disc_exact == -4);
    CHECK(inv.log_disc == Catch::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(inv.disc_source == DiscSource::computed_exact);
}

TEST_CASE("field invariants: quadratic kernel reduces x^2+3 to disc -3") {
    FieldInvariants inv = field_invariants(poly({3, 0, 1}));
    REQUIRE(inv.disc_exact.has_value());
    CHECK(*inv.disc_exact == -3);  // not -12
    CHECK(inv.log_disc == Catch::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("field invariants: x^2-x-1 already fundamental") {
    FieldInvariants inv = field_invariants(poly({-1, -1, 1}));
    CHECK(*inv.disc_exact == 5);
    CHECK(inv.r1 == 2);
}

TEST_CASE("field invariants: overrides") {
    CHECK_THROWS_AS(field_invariants(poly({1, 0, 1}), mpz_class(0)), domain_error);
    // sign must match (-1)^{r2}: x^2+1 has r2 = 1, disc must be negative
    CHECK_THROWS_AS(field_invariants(poly({1, 0, 1}), mpz_class(5)), domain_error);
    FieldInvariants inv = field_invariants(poly({1, 0, 1}), mpz_class(-4));
    CHECK(inv.disc_source == DiscSource::user_supplied);
    FieldInvariants inv2 = field_invariants(poly({1, 0, 1}), std::nullopt, 3.0);
    CHECK(inv2.log_disc == 3.0);
    CHECK_FALSE(inv2.disc_exact.has_value());
}

TEST_CASE("field invariants: reducible polynomials are rejected") {
    CHECK_THROWS_AS(field_invariants(poly({-1, 0, 1})), domain_error);   // (x-1)(x+1)
    CHECK_THROWS_AS(field_invariants(poly({0, 0, 1})), domain_error);    // x^2
    CHECK_THROWS_AS(field_invariants(poly({-2, 1, -2, 1})), domain_error);  // (x-2)(x^2+1)
}

TEST_CASE("field invariants: reference cubic has prime discriminant, index one") {
    FieldInvariants inv = field_invariants(reference_cubic);
    CHECK(inv.n == 3);
    CHECK(inv.r1 == 1);
    CHECK(inv.r2 == 1);
    CHECK(inv.disc_source == DiscSource::computed_exact);
    CHECK(inv.log_disc == Catch::Approx(123.98510647900453).epsilon(1e-12));
}

TEST_CASE("local splitting: quadratic symbols") {
    FieldInvariants inv = field_invariants(poly({1, 0, 1}));
    CHECK(local_splitting(poly({1, 0, 1}), inv, 5).residue_degrees == std::vector<int>{1, 1});
    CHECK(local_splitting(poly({1, 0, 1}), inv, 3).residue_degrees == std::vector<int>{2});
    CHECK(local_splitting(poly({1, 0, 1}), inv, 2).residue_degrees == std::vector<int>{1});

    // index prime of x^2+3: the exact discriminant says 2 is inert
    FieldInvariants inv3 = field_invariants(poly({3, 0, 1}));
    CHECK(local_splitting(poly({3, 0, 1}), inv3, 2).residue_degrees == std::vector<int>{2});
    CHECK(local_splitting(poly({3, 0, 1}), inv3, 3).residue_degrees == std::vector<int>{1});
}

TEST_CASE("local splitting: reference cubic gives norms p and p^2 up to 53") {
    FieldInvariants inv = field_invariants(reference_cubic);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
        auto ls = local_splitting(reference_cubic, inv, p);
        CHECK(ls.residue_degrees == std::vector<int>{1, 2});
    }
}

TEST_CASE("local splitting: degrees partition n away from the discriminant") {
    const Polynomial quintic = poly({-1, -1, 0, 0, 0, 1});  // x^5-x-1, disc 2869 = 19*151
    FieldInvariants inv = field_invariants(quintic);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 23, 29, 101, 997}) {
        auto ls = local_splitting(quintic, inv, p);
        int sum = 0;
        for (int f : ls.residue_degrees) sum += f;
        CHECK(sum == 5);
    }
    // ramified primes: distinct factors only, sum <= n
    for (std::uint64_t p : {19, 151}) {
        auto ls = local_splitting(quintic, inv, p);
        int sum = 0;
        for (int f : ls.residue_degrees) sum += f;
        CHECK(sum <= 5);
        CHECK_FALSE(ls.skipped);
    }
}

TEST_CASE("local splitting: index primes are skipped for degree > 2") {
    // Dedekind's cubic x^3 - x^2 - 2x - 8: 2 divides the index
    const Polynomial dedekind = poly({-8, -2, -1, 1});
    FieldInvariants inv = field_invariants(dedekind);
    auto ls = local_splitting(dedekind, inv, 2);
    CHECK(ls.skipped);
    CHECK(ls.residue_degrees.empty());
    CHECK(inv.disc_source == DiscSource::poly_disc_conservative);
}

TEST_CASE("signature consistency: sign of disc is (-1)^r2") {
    for (auto coeffs : {std::initializer_list<long>{1, 0, 1}, {-1, -1, 1}, {-2, 0, 0, 1},
                        {5, 5, 0, 0, 1}, {-1, -1, 0, 0, 0, 1}}) {
        Polynomial P = poly(coeffs);
        mpz_class d = discriminant_of_polynomial(P);
        auto [r1, r2] = signature(P);
        CHECK(r1 + 2 * r2 == P.degree());
        CHECK((sgn(d) < 0) == (r2 % 2 == 1));
    }
}

TEST_CASE("irreducibility policy") {
    // x^4+1 factors mod every prime, so no cheap certificate exists; it is
    // accepted with the warning flag cleared to false
    FieldInvariants inv = field_invariants(poly({1, 0, 0, 0, 1}));
    CHECK_FALSE(inv.irreducible_certified);
    CHECK(inv.n == 4);
    // an irreducible reduction certifies immediately
    CHECK(field_invariants(poly({-2, 0, 0, 1})).irreducible_certified);
    // a large square discriminant without small roots is still rejected
    CHECK_THROWS_AS(field_invariants(poly({-10201, 0, 1})), domain_error);  // (x-101)(x+101)
}

TEST_CASE("squarefree kernel") {
    using detail::squarefree_kernel;
    CHECK(*squarefree_kernel(mpz_class(-12)) == -3);
    CHECK(*squarefree_kernel(mpz_class(5)) == 5);
    CHECK(*squarefree_kernel(mpz_class(4 * 49 * 11)) == 11);
    CHECK(*squarefree_kernel(mpz_class(-8)) == -2);
}
