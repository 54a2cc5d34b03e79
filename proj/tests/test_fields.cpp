#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "cayley/field.hpp"

using namespace cayley;

namespace {

/// Independent primality oracle: trial division.
bool slow_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("field specs parse and validate", "[fields]") {
    SECTION("rationals") {
        FieldSpec q = FieldSpec::parse("q");
        CHECK(q.kind() == FieldKind::rational);
        CHECK(q.characteristic() == 0);
        CHECK(q.str() == "q");
        CHECK_THROWS_AS(q.modulus(), error);
    }
    SECTION("prime fields") {
        FieldSpec f7 = FieldSpec::parse("gf:7");
        CHECK(f7.kind() == FieldKind::prime);
        CHECK(f7.modulus() == 7);
        CHECK(f7.characteristic() == 7);
        CHECK(f7.str() == "gf:7");
        CHECK(f7 == FieldSpec::prime(7));
    }
    SECTION("rejects composite and malformed moduli") {
        CHECK_THROWS_AS(FieldSpec::prime(4), not_prime);
        CHECK_THROWS_AS(FieldSpec::prime(1), not_prime);
        CHECK_THROWS_AS(FieldSpec::prime(0), not_prime);
        CHECK_THROWS_AS(FieldSpec::parse("gf:4"), not_prime);
        CHECK_THROWS_AS(FieldSpec::parse("gf:"), parse_error);
        CHECK_THROWS_AS(FieldSpec::parse("gf:x"), parse_error);
        CHECK_THROWS_AS(FieldSpec::parse("real"), parse_error);
    }
    SECTION("primality test agrees with trial division") {
        for (std::uint64_t n = 0; n < 2000; ++n) CHECK(detail::is_prime_u64(n) == slow_is_prime(n));
        CHECK(detail::is_prime_u64(1000003));
        CHECK_FALSE(detail::is_prime_u64(1000003ull * 1000003ull));
    }
}

TEST_CASE("rational arithmetic is exact and canonical", "[fields]") {
    FieldSpec q = FieldSpec::rationals();
    SECTION("canonical form") {
        CHECK(Rational(2, 4) == Rational(1, 2));
        CHECK(Rational(-2, -4) == Rational(1, 2));
        CHECK(Rational(2, -4).str() == "-1/2");
        CHECK(Rational(0, 5).str() == "0");
        CHECK(Rational(6, 3).str() == "2");
    }
    SECTION("arithmetic") {
        CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
        CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
        CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
        CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
        CHECK(-Rational(5, 7) == Rational(-5, 7));
        CHECK(Rational(3, 7).inverse() == Rational(7, 3));
        CHECK(Rational(5, 6).sign() == 1);
        CHECK(Rational(-5, 6).sign() == -1);
        CHECK(Rational().sign() == 0);
    }
    SECTION("division by zero throws") {
        CHECK_THROWS_AS(Rational(1, 2) / Rational(), division_by_zero);
        CHECK_THROWS_AS(Rational().inverse(), division_by_zero);
        CHECK_THROWS_AS(Rational(1, 0), division_by_zero);
    }
    SECTION("text round trip") {
        for (const char* t : {"0", "1", "-1", "5/6", "-22/7", "123456789123456789"}) {
            Rational r = Rational::parse(q, t);
            CHECK(r.str() == t);
            CHECK(Rational::parse(q, r.str()) == r);
        }
        CHECK(Rational::parse(q, "2/4") == Rational(1, 2));
        CHECK_THROWS_AS(Rational::parse(q, "1/0"), division_by_zero);
        CHECK_THROWS_AS(Rational::parse(q, "a/b"), parse_error);
        CHECK_THROWS_AS(Rational::parse(q, ""), parse_error);
        CHECK_THROWS_AS(Rational::parse(q, "1.5"), parse_error);
    }
    SECTION("spec mismatch is rejected") {
        CHECK_THROWS_AS(Rational::from_int(FieldSpec::prime(5), 1), field_mismatch);
    }
}

TEST_CASE("prime field arithmetic", "[fields]") {
    SECTION("pinned values") {
        FieldSpec f7 = FieldSpec::prime(7);
        FieldSpec f5 = FieldSpec::prime(5);
        CHECK(GFp(f7, 3).inverse() == GFp(f7, 5));
        CHECK(GFp(f5, 3) * GFp(f5, 4) == GFp(f5, 2));
        CHECK(GFp(f7, -3) == GFp(f7, 4));
        CHECK((GFp(f7, 6) + GFp(f7, 5)).residue() == 4);
        CHECK((GFp(f7, 2) - GFp(f7, 5)).residue() == 4);
        CHECK((-GFp(f7, 0)).residue() == 0);
    }
    SECTION("field axioms hold exhaustively for small primes") {
        for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
            FieldSpec s = FieldSpec::prime(p);
            std::vector<GFp> all = enumerate_field<GFp>(s);
            REQUIRE(all.size() == p);
            for (const GFp& a : all)
                for (const GFp& b : all) {
                    CHECK(a + b == b + a);
                    CHECK(a * b == b * a);
                    for (const GFp& c : all) {
                        CHECK((a + b) + c == a + (b + c));
                        CHECK((a * b) * c == a * (b * c));
                        CHECK(a * (b + c) == a * b + a * c);
                    }
                }
            for (const GFp& a : all) {
                if (a.is_zero()) {
                    CHECK_THROWS_AS(a.inverse(), division_by_zero);
                    continue;
                }
                CHECK(a * a.inverse() == GFp::one(s));
            }
        }
    }
    SECTION("inverse against a large prime") {
        FieldSpec s = FieldSpec::prime(1000003);
        GFp a(s, 123456);
        CHECK((a * a.inverse()).is_one());
    }
    SECTION("parse reduces mod p") {
        FieldSpec f7 = FieldSpec::prime(7);
        CHECK(GFp::parse(f7, "10") == GFp(f7, 3));
        CHECK(GFp::parse(f7, "-13") == GFp(f7, 1));
        CHECK(GFp::parse(f7, "0").is_zero());
        CHECK_THROWS_AS(GFp::parse(f7, "3/4"), parse_error);
        CHECK_THROWS_AS(GFp::parse(f7, ""), parse_error);
    }
    SECTION("mixed moduli are rejected") {
        GFp a(FieldSpec::prime(5), 1);
        GFp b(FieldSpec::prime(7), 1);
        CHECK_THROWS_AS(a + b, field_mismatch);
        CHECK_THROWS_AS(a * b, field_mismatch);
    }
    SECTION("enumeration") {
        std::vector<GFp> all = enumerate_field<GFp>(FieldSpec::prime(5));
        REQUIRE(all.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) CHECK(all[i].residue() == i);
        CHECK_THROWS_AS(enumerate_field<Rational>(FieldSpec::rationals()), infinite_field);
    }
}
