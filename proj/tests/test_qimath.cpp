#include "doctest.h"

#include "errors.hpp"
#include "qimath.hpp"
#include "test_support.hpp"

#include <cmath>
#include <map>

using namespace cmmod;

namespace {

CMPointId cm(long d, long a, long b, long c) { return {d, a, b, c}; }

// Floating check that a triple lies in the closed fundamental domain with the
// project tie-breaks; only used on small coefficients.
bool in_domain(const UHPQuadPoint& p) {
    double a = p.a().get_d(), b = p.b().get_d(), c = p.c().get_d();
    if (!(-a <= b && b < a)) return false;          // Re in (-1/2, 1/2]
    if (c < a) return false;                         // |tau| >= 1
    if (c == a && b > 0) return false;               // Re >= 0 on the circle
    return true;
}

} // namespace

TEST_CASE("quadratic point triple convention") {
    // i is the root of x^2 + 1
    UHPQuadPoint i(1, 0, 1);
    CHECK(i.disc() == -4);
    CHECK_THROWS_AS(UHPQuadPoint(-1, 0, 1), DomainError);
    CHECK_THROWS_AS(UHPQuadPoint(1, 2, 1), DomainError);
    CHECK_THROWS_AS(UHPQuadPoint(2, 0, 2), DomainError);
    CHECK(UHPQuadPoint::from_form(-2, 0, -2) == i);
}

TEST_CASE("reduce_to_fundamental_domain examples") {
    SUBCASE("3 + 4i is a pure translation") {
        auto r = reduce_to_fundamental_domain(UHPQuadPoint(1, -6, 25));
        CHECK(r.point == UHPQuadPoint(1, 0, 16));
        CHECK(r.gamma == IntMat2::T(-3));
    }
    SUBCASE("i/2 needs one inversion") {
        // i/2 is the root of 4x^2 + 1
        auto r = reduce_to_fundamental_domain(UHPQuadPoint(4, 0, 1));
        CHECK(r.point == UHPQuadPoint(1, 0, 4));
        CHECK(r.gamma == IntMat2::S());
    }
    SUBCASE("(1 + sqrt(-3))/2 is kept by the tie-break") {
        auto r = reduce_to_fundamental_domain(UHPQuadPoint(1, -1, 1));
        CHECK(r.point == UHPQuadPoint(1, -1, 1));
        CHECK(r.gamma == IntMat2::identity());
    }
}

TEST_CASE("reduction is exact, lands in the domain and is idempotent") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 300; ++k) {
        UHPQuadPoint tau = testing::random_point(rng, 40);
        auto r = reduce_to_fundamental_domain(tau);
        CHECK(r.gamma.det() == 1);
        CHECK(act(r.gamma, tau) == r.point);
        CHECK(in_domain(r.point));
        auto again = reduce_to_fundamental_domain(r.point);
        CHECK(again.point == r.point);
        CHECK(again.gamma == IntMat2::identity());
    }
}

TEST_CASE("cm_id_of examples") {
    CHECK(cm_id_of(UHPQuadPoint(1, 0, 1)) == cm(-4, 1, 0, 1));
    CHECK(cm_id_of(UHPQuadPoint(1, 0, 4)) == cm(-16, 1, 0, 4));
    CHECK(cm_id_of(UHPQuadPoint(1, -2, 2)) == cm(-4, 1, 0, 1));
    CHECK(cm_id_of(UHPQuadPoint(1, -1, 1)) == cm(-3, 1, 1, 1));
}

TEST_CASE("cm_id_of is SL2(Z)-invariant on random words") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        UHPQuadPoint tau = testing::random_point(rng);
        IntMat2 g = testing::random_sl2z(rng, 12);
        CHECK(cm_id_of(act(g, tau)) == cm_id_of(tau));
    }
}

TEST_CASE("enumerate_cm_points examples") {
    auto four = enumerate_cm_points(4);
    REQUIRE(four.size() == 2);
    CHECK(four[0] == cm(-3, 1, 1, 1));
    CHECK(four[1] == cm(-4, 1, 0, 1));
    CHECK(enumerate_cm_points(3) == std::vector<CMPointId>{cm(-3, 1, 1, 1)});
    CHECK(enumerate_cm_points(2).empty());
    auto fifteen = enumerate_cm_points(15);
    int count15 = 0;
    for (const auto& p : fifteen)
        if (p.disc == -15) ++count15;
    CHECK(count15 == 2);
    CHECK(std::find(fifteen.begin(), fifteen.end(), cm(-15, 1, 1, 4)) != fifteen.end());
    CHECK(std::find(fifteen.begin(), fifteen.end(), cm(-15, 2, 1, 2)) != fifteen.end());
    CHECK(std::is_sorted(fifteen.begin(), fifteen.end()));
}

TEST_CASE("enumeration agrees with brute-force reduction of all small triples") {
    // Oracle: reduce every primitive triple with small coefficients and
    // collect the names of discriminant |D| <= 60.
    const long dmax = 60;
    std::set<CMPointId> seen;
    for (long a = 1; a <= 30; ++a)
        for (long b = -40; b <= 40; ++b)
            for (long c = 1; c <= 40; ++c) {
                long d = b * b - 4 * a * c;
                if (d >= 0 || -d > dmax) continue;
                if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
                seen.insert(cm_id_of(UHPQuadPoint(a, b, c)));
            }
    auto listed = enumerate_cm_points(dmax);
    CHECK(std::set<CMPointId>(listed.begin(), listed.end()) == seen);
    CHECK(listed.size() == seen.size());
}

TEST_CASE("cyclic_isogeny_levels examples") {
    CHECK(cyclic_isogeny_levels(cm(-4, 1, 0, 1), cm(-16, 1, 0, 4), 2) == std::set<std::int64_t>{2});
    CHECK(cyclic_isogeny_levels(cm(-4, 1, 0, 1), cm(-3, 1, 1, 1), 12).empty());
    CHECK(cyclic_isogeny_levels(cm(-4, 1, 0, 1), cm(-4, 1, 0, 1), 2) == std::set<std::int64_t>{1, 2});
}

TEST_CASE("cyclic isogeny levels are symmetric (dual isogeny)") {
    auto pts = enumerate_cm_points(50);
    for (const auto& p : pts)
        for (const auto& q : pts) {
            if (q < p) continue;
            CHECK(cyclic_isogeny_levels(p, q, 7) == cyclic_isogeny_levels(q, p, 7));
        }
}

TEST_CASE("hom_rank trichotomy") {
    ConstantValue i = cm(-4, 1, 0, 1), two_i = cm(-16, 1, 0, 4), rho = cm(-3, 1, 1, 1);
    ConstantValue o1 = OrbitPoint::of(IntMat2::identity());
    ConstantValue o2 = OrbitPoint::of(IntMat2{1, 1, 0, 2});
    CHECK(hom_rank(i, two_i) == 2);
    CHECK(hom_rank(i, rho) == 0);
    CHECK(hom_rank(o1, o2) == 1);
    CHECK(hom_rank(i, o1) == 0);
    std::vector<ConstantValue> all{i, two_i, rho, o1, o2};
    for (const auto& x : all) {
        CHECK((hom_rank(x, x) == 2) == is_cm(x));
        CHECK(hom_rank(x, x) >= 1);
        for (const auto& y : all) CHECK(hom_rank(x, y) == hom_rank(y, x));
    }
}

TEST_CASE("cm field kernel") {
    CHECK(cm_field_kernel(-4) == 1);
    CHECK(cm_field_kernel(-16) == 1);
    CHECK(cm_field_kernel(-3) == 3);
    CHECK(cm_field_kernel(-12) == 3);
    CHECK(cm_field_kernel(-8) == 2);
    CHECK(cm_field_kernel(-72) == 2);
}

TEST_CASE("ground phi on constants") {
    ConstantValue o1 = OrbitPoint::of(IntMat2::identity());
    ConstantValue o2 = OrbitPoint::of(IntMat2{1, 1, 0, 2});
    CHECK(phi_holds(2, o1, o2));
    CHECK(!phi_holds(3, o1, o2));
    CHECK(phi_holds(2, cm(-4, 1, 0, 1), cm(-16, 1, 0, 4)));
    CHECK(!phi_holds(3, cm(-4, 1, 0, 1), o1));
    // Orbit names are left-coset invariant: S . M names the same point as M.
    CHECK(OrbitPoint::of(IntMat2::S() * IntMat2{2, 0, 0, 1}) == OrbitPoint::of(IntMat2{2, 0, 0, 1}));
    CHECK(hecke_images(2, o1).size() == 3);
}
