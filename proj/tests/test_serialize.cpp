#include "doctest.h"

#include "errors.hpp"
#include "serialize.hpp"
#include "test_support.hpp"

using namespace cmmod;

TEST_CASE("integers") {
    CHECK(to_json(BigInt(-5)) == json(-5));
    BigInt big("123456789012345678901234567890");
    CHECK(to_json(big) == json("123456789012345678901234567890"));
    CHECK(bigint_from_json(to_json(big)) == big);
    CHECK(bigint_from_json(json(7)) == 7);
}

TEST_CASE("constants") {
    ConstantValue c = CMPointId{-4, 1, 0, 1};
    CHECK(to_json(c) == json::parse(R"({"cm":{"d":-4,"f":[1,0,1]}})"));
    CHECK(constant_from_json(to_json(c)) == c);
    // a non-reduced form is renamed to its reduced one
    CHECK(cm_point_from_json(json::parse(R"({"d":-4,"f":[1,2,2]})")) == CMPointId{-4, 1, 0, 1});
    CHECK_THROWS_AS(cm_point_from_json(json::parse(R"({"d":-4,"f":[1,1,1]})")), ParseError);
    ConstantValue o = OrbitPoint::of(IntMat2{1, 1, 0, 2});
    CHECK(constant_from_json(to_json(o)) == o);
}

TEST_CASE("rational matrices are scaled") {
    auto m = prim_matrix_from_json(json::parse(R"([["1/2", 0], [0, 1]])"));
    CHECK(m == PrimIntMat2(IntMat2{1, 0, 0, 2}));
}

TEST_CASE("datum round trip") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        auto d = testing::random_datum(rng, 4, 7, true);
        auto back = datum_from_json(parse_json_text(to_json(d).dump()));
        CHECK(canonicalize(back) == canonicalize(d));
        auto s = equations_of(d);
        auto s2 = system_from_json(to_json(s));
        CHECK(s2.n == s.n);
        CHECK(s2.atoms == s.atoms);
    }
}

TEST_CASE("missing gamma means identity") {
    auto d = datum_from_json(json::parse(R"({"n":2,"pi0":{},"blocks":[{"indices":[1,2],"base":1}]})"));
    CHECK(canonicalize(d) == canonicalize(PreSpecialDatum{
                                 2, {}, {Block{{1, 2}, 1, {{1, PrimIntMat2::identity()}, {2, PrimIntMat2::identity()}}}}}));
}

TEST_CASE("bad json is a parse error") {
    CHECK_THROWS_AS(parse_json_text("{\"n\": "), ParseError);
}
