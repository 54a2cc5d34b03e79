#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "cayley/check.hpp"
#include "cayley/construct.hpp"
#include "cayley/field.hpp"
#include "cayley/report.hpp"

using namespace cayley;

TEST_CASE("field specs round-trip through JSON") {
    FieldSpec q = FieldSpec::rationals();
    FieldSpec g7 = FieldSpec::prime(7);
    CHECK(field_to_json(q).dump() == R"({"kind":"rational"})");
    CHECK(field_to_json(g7).dump() == R"({"kind":"prime","p":7})");
    CHECK(field_from_json(field_to_json(q)).kind() == FieldKind::rational);
    CHECK(field_from_json(field_to_json(g7)).modulus() == 7);
    CHECK_THROWS_AS(field_from_json(Json{{"kind", "complex"}}), parse_error);
    CHECK_THROWS_AS(field_from_json(Json::object()), parse_error);
}

TEST_CASE("algebras round-trip through JSON byte-identically") {
    SECTION("split over the rationals keeps its grading and label") {
        auto c = split_cayley<Rational>(FieldSpec::rationals());
        Json j = algebra_to_json(c);
        CayleyAlgebra<Rational> back = algebra_from_json<Rational>(j);
        CHECK(back.label() == "split");
        REQUIRE(back.grading().has_value());
        CHECK(back.grading()->u_indices == std::vector<std::size_t>{2, 3, 4});
        CHECK(algebra_to_json(back).dump() == j.dump());
    }

    SECTION("split over GF(5)") {
        auto c = split_cayley<GFp>(FieldSpec::prime(5));
        Json j = algebra_to_json(c);
        CayleyAlgebra<GFp> back = algebra_from_json<GFp>(j);
        CHECK(back.label() == "split");
        CHECK(algebra_to_json(back).dump() == j.dump());
    }

    SECTION("the division octonions load as an ungraded custom algebra") {
        auto c = division_octonions_q();
        Json j = algebra_to_json(c);
        CayleyAlgebra<Rational> back = algebra_from_json<Rational>(j);
        CHECK(back.label() == "custom");
        CHECK_FALSE(back.grading().has_value());
        CHECK(algebra_to_json(back).dump() == j.dump());
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t k = 0; k < 8; ++k)
                CHECK(back.structure().basis_product(i, k) == c.structure().basis_product(i, k));
    }
}

TEST_CASE("the loader rejects inconsistent or malformed JSON") {
    auto c = split_cayley<Rational>(FieldSpec::rationals());
    Json good = algebra_to_json(c);

    SECTION("scalar type must match the embedded field") {
        CHECK_THROWS_AS(algebra_from_json<GFp>(good), field_mismatch);
    }

    SECTION("stored norms must agree with the derived form") {
        Json j = good;
        j["basis_norms"][0] = "1";
        CHECK_THROWS_AS(algebra_from_json<Rational>(j), malformed_algebra);
    }

    SECTION("stored polar gram must agree with the derived form") {
        Json j = good;
        j["polar_gram"][0][1] = "2";
        CHECK_THROWS_AS(algebra_from_json<Rational>(j), malformed_algebra);
    }

    SECTION("a corrupted product is rejected while deriving the form") {
        Json j = good;
        // u1 u2 = v3 becomes v2: the polarization of (u1, u2) leaves F1.
        j["table"][2][3] = Json::array({"0", "0", "0", "0", "0", "0", "1", "0"});
        CHECK_THROWS_AS(algebra_from_json<Rational>(j), malformed_algebra);
    }

    SECTION("shape errors are parse errors") {
        Json j = good;
        j.erase("table");
        CHECK_THROWS_AS(algebra_from_json<Rational>(j), parse_error);
        Json k = good;
        k["unit"] = Json::array({"1"});
        CHECK_THROWS_AS(algebra_from_json<Rational>(k), parse_error);
        Json m = good;
        m["dim"] = 0;
        CHECK_THROWS_AS(algebra_from_json<Rational>(m), parse_error);
    }

    SECTION("bad scalar text is a parse error") {
        Json j = good;
        j["unit"][0] = "one";
        CHECK_THROWS_AS(algebra_from_json<Rational>(j), parse_error);
    }
}

TEST_CASE("verification reports serialize with stable schema and tallies") {
    CheckOutcome ok = CheckOutcome::pass_outcome("thm31.dimension_table", "dim Der(C) = 14");
    ok.dims = {{"der", 14}, {"locder", 21}};
    CheckOutcome bad = CheckOutcome::fail_outcome("thm41.phi_obstruction", "a phi(b) != phi(b)", "pins changed");
    bad.witness = {{"a", "[0, 0, 1, 0, 0, -1, 0, 0]"}};
    CheckOutcome skip = CheckOutcome::skip_outcome("thm45", "local is 2-local", "NotDivision: split input");
    std::vector<CheckOutcome> checks = {ok, bad, skip};
    ReportHeader header{FieldSpec::prime(5), "split", 42};

    Json j = report_to_json(header, checks);
    CHECK(j["schema"] == 1);
    CHECK(j["tool_version"].is_string());
    CHECK(j["field"]["kind"] == "prime");
    CHECK(j["algebra_id"] == "split");
    CHECK(j["seed"] == 42);
    REQUIRE(j["checks"].size() == 3);
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][0]["dims"]["der"] == 14);
    CHECK(j["checks"][1]["status"] == "fail");
    CHECK(j["checks"][1]["witness"]["a"] == "[0, 0, 1, 0, 0, -1, 0, 0]");
    CHECK(j["checks"][2]["status"] == "skipped");
    CHECK(j["checks"][2]["detail"] == "NotDivision: split input");
    CHECK(j["summary"]["pass"] == 1);
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["summary"]["skipped"] == 1);
    CHECK(report_to_json(header, checks).dump(2) == j.dump(2));

    std::string text = report_to_text(header, checks);
    CHECK(text.find("thm31.dimension_table PASS — \"dim Der(C) = 14\"") != std::string::npos);
    CHECK(text.find("thm45 SKIPPED — \"local is 2-local\"") != std::string::npos);
    CHECK(text.find("witness a = [0, 0, 1, 0, 0, -1, 0, 0]") != std::string::npos);
    CHECK(text.find("summary: 3 checks, 1 passed, 1 failed, 1 skipped") != std::string::npos);
}
