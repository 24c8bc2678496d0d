#include "doctest.h"

#include "errors.hpp"
#include "gl2q.hpp"
#include "qimath.hpp"
#include "test_support.hpp"

using namespace cmmod;

TEST_CASE("primitive_integral_form examples") {
    auto [id, s1] = primitive_integral_form(RatMat2(IntMat2::identity()));
    CHECK(id == PrimIntMat2::identity());
    CHECK(s1 == 1);

    auto [m, s] = primitive_integral_form(RatMat2(Rational(1, 3), 0, 0, 1));
    CHECK(m.mat() == IntMat2{1, 0, 0, 3});
    CHECK(s == Rational(1, 3));

    auto [m2, s2] = primitive_integral_form(RatMat2(2, 0, 0, 2));
    CHECK(m2 == PrimIntMat2::identity());
    CHECK(s2 == 2);

    CHECK_THROWS_AS(RatMat2(0, 1, 1, 0), DomainError);
}

TEST_CASE("level examples") {
    CHECK(level(RatMat2(IntMat2::identity())) == 1);
    CHECK(level(RatMat2(2, 0, 0, 1)) == 2);
    CHECK(level(RatMat2(Rational(1, 2), 0, 0, 1)) == 2);
}

TEST_CASE("level is invariant under scalars and SL2(Z) on both sides") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> e(-9, 9);
    for (int k = 0; k < 200; ++k) {
        IntMat2 g{e(rng), e(rng), e(rng), e(rng)};
        if (g.det() <= 0) continue;
        BigInt l = level(g);
        IntMat2 e1 = testing::random_sl2z(rng, 10), e2 = testing::random_sl2z(rng, 10);
        CHECK(level(e1 * g * e2) == l);
        RatMat2 scaled(Rational(g.a, 7), Rational(g.b, 7), Rational(g.c, 7), Rational(g.d, 7));
        CHECK(level(scaled) == l);
    }
}

TEST_CASE("act examples") {
    UHPQuadPoint i(1, 0, 1);
    CHECK(act(IntMat2{1, 1, 0, 1}, i) == UHPQuadPoint(1, -2, 2)); // 1 + i
    CHECK(act(IntMat2{0, -1, 1, 0}, i) == i);
    CHECK(act(IntMat2{2, 0, 0, 1}, i) == UHPQuadPoint(1, 0, 4)); // 2i
}

TEST_CASE("act respects composition") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> e(-6, 6);
    auto rand_pos = [&] {
        for (;;) {
            IntMat2 g{e(rng), e(rng), e(rng), e(rng)};
            if (g.det() > 0) return g;
        }
    };
    for (int k = 0; k < 100; ++k) {
        IntMat2 g = rand_pos(), h = rand_pos();
        UHPQuadPoint tau = testing::random_point(rng);
        CHECK(act(g * h, tau) == act(g, act(h, tau)));
        CHECK(act(RatMat2(g) * RatMat2(h), tau) == act(g, act(h, tau)));
    }
}

TEST_CASE("hecke_representatives examples and counts") {
    CHECK(hecke_representatives(1) == std::vector<HeckeRep>{{1, 0, 1}});
    CHECK(hecke_representatives(2) == std::vector<HeckeRep>{{1, 0, 2}, {1, 1, 2}, {2, 0, 1}});
    auto four = hecke_representatives(4);
    CHECK(four.size() == 6);
    CHECK(std::find(four.begin(), four.end(), HeckeRep{2, 0, 2}) == four.end());
    for (std::int64_t l = 1; l <= 12; ++l) {
        const auto& reps = hecke_representatives(l);
        CHECK(static_cast<std::int64_t>(reps.size()) == psi(l));
        std::set<HeckeRep> cosets;
        for (const auto& h : reps) {
            CHECK(h.level() == l);
            cosets.insert(coset_normal_form(h.prim()).first);
        }
        CHECK(cosets.size() == reps.size());
    }
    CHECK(psi(6) == 12);
    CHECK(psi(7) == 8);
    CHECK(psi(9) == 12);
}

TEST_CASE("coset_normal_form examples") {
    auto [rep, eps] = coset_normal_form(PrimIntMat2::identity());
    CHECK(rep == HeckeRep{1, 0, 1});
    CHECK(eps == IntMat2::identity());

    PrimIntMat2 m(IntMat2{0, -2, 1, 0});
    auto [rep2, eps2] = coset_normal_form(m);
    CHECK(rep2 == HeckeRep{1, 0, 2});
    CHECK(eps2 == IntMat2{0, 1, -1, 0});
    CHECK(eps2 * m.mat() == rep2.mat());

    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        IntMat2 e = testing::random_sl2z(rng, 10);
        auto [r, w] = coset_normal_form(PrimIntMat2(e));
        CHECK(r == HeckeRep{1, 0, 1});
        CHECK(w * e == IntMat2::identity());
    }
}

TEST_CASE("coset_normal_form is idempotent and constant on left cosets") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> e(-9, 9);
    int done = 0;
    while (done < 500) {
        IntMat2 g{e(rng), e(rng), e(rng), e(rng)};
        if (g.det() <= 0 || g.content() != 1) continue;
        ++done;
        auto [rep, eps] = coset_normal_form(PrimIntMat2(g));
        CHECK(eps.det() == 1);
        CHECK(eps * g == rep.mat());
        CHECK(coset_normal_form(rep.prim()).first == rep);
        IntMat2 w = testing::random_sl2z(rng, 10);
        CHECK(coset_normal_form(PrimIntMat2(w * g)).first == rep);
    }
}

TEST_CASE("fast right action matches matrix products") {
    for (std::int64_t l = 1; l <= 12; ++l)
        for (const auto& h : hecke_representatives(l)) {
            CHECK(right_S(h) == coset_of(h.mat() * IntMat2::S()));
            CHECK(right_T(h) == coset_of(h.mat() * IntMat2::T()));
        }
}

TEST_CASE("Hecke images keep level and CM field") {
    std::mt19937_64 rng(17);
    for (std::int64_t l = 1; l <= 7; ++l)
        for (const auto& h : hecke_representatives(l)) {
            CHECK(level(h.mat()) == l);
            UHPQuadPoint tau = testing::random_point(rng);
            CHECK(cm_field_kernel(act(h.mat(), tau).disc()) == cm_field_kernel(tau.disc()));
        }
}
