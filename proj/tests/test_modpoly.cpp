#include "doctest.h"

#include "errors.hpp"
#include "modpoly.hpp"
#include "test_support.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cmmod;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string golden(const std::string& name) { return std::string(CMMOD_DATA_DIR) + "/golden/" + name; }

IntPoly golden_hilbert(long d) {
    auto doc = nlohmann::json::parse(slurp(golden("hilbert_" + std::to_string(-d) + ".json")));
    std::vector<BigInt> c;
    for (const auto& v : doc.at("coeffs")) c.emplace_back(v.get<std::string>());
    return IntPoly(c);
}

BigFloat eps(int bits) {
    BigFloat e(64);
    mpfr_set_ui_2exp(e.get(), 1, -bits, MPFR_RNDN);
    return e;
}

bool close_to(const BigComplex& z, long v, int bits) {
    return (z - BigComplex(v, z.prec())).abs() < eps(bits);
}

} // namespace

TEST_CASE("j q-expansion leading coefficients") {
    QExpansion j = j_q_expansion(10);
    CHECK(j.valuation() == -1);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    CHECK(j.prec() == 11);
    CHECK_THROWS_AS(j.coeff(11), ResourceError);
}

TEST_CASE("j q-expansion agrees with the E4/E6 oracle") {
    // j = 1728 E4^3 / (E4^3 - E6^2): no product formula involved.
    const long order = 60;
    QExpansion e4c = eisenstein_e4(order + 2).pow(3);
    QExpansion e6s = eisenstein_e6(order + 2).pow(2);
    QExpansion delta = (e4c - e6s).divexact(1728);
    CHECK(delta.coeff(1) == 1);
    CHECK(delta.coeff(2) == -24);
    CHECK(delta.coeff(3) == 252);
    QExpansion oracle = e4c * delta.inverse();
    QExpansion j = j_q_expansion(order);
    for (long e = -1; e <= order; ++e) CHECK(j.coeff(e) == oracle.coeff(e));
    CHECK(discriminant_series(order).truncated(order) == delta.truncated(order));
}

TEST_CASE("j_alg examples") {
    CHECK(j_alg(5, 0) == 1728);
    CHECK(j_alg(0, 7) == 0);
    CHECK_THROWS_AS(j_alg(3, 1), DomainError);
    CHECK(j_alg(Rational(1, 2), 1) == Rational(1728, 1) * Rational(1, 8) / (Rational(1, 8) - 27));
}

TEST_CASE("modular polynomial of level 1 and 2") {
    ModPoly p1 = compute_modular_polynomial(1);
    CHECK(p1.psi == 1);
    CHECK(p1.c[1][0] == 1);
    CHECK(p1.c[0][1] == -1);
    CHECK(p1.term_count() == 2);

    ModPoly p2 = compute_modular_polynomial(2);
    ModPoly gold = modpoly_from_json(slurp(golden("phi_2.json")));
    CHECK(p2 == gold);
    CHECK(p2.term_count() == 11);
    CHECK(p2.c[2][1] == 1488);
    CHECK(p2.c[0][0] == BigInt("-157464000000000"));
}

TEST_CASE("modular polynomials are monic, symmetric, of degree psi") {
    for (std::int64_t l = 2; l <= 7; ++l) {
        const ModPoly& p = modular_polynomial(l);
        CHECK(p.psi == psi(l));
        CHECK(p.is_monic());
        CHECK(p.is_symmetric());
    }
    const ModPoly& p3 = modular_polynomial(3);
    CHECK(p3.psi == 4);
    // published values of Phi_3
    CHECK(p3.c[3][3] == -1);
    CHECK(p3.c[3][2] == 2232);
    CHECK(p3.c[2][2] == BigInt("2587918086"));
    CHECK(p3.c[1][1] == BigInt("-770845966336000000"));
    CHECK(p3.c[1][0] == BigInt("1855425871872000000000"));
    CHECK(p3.c[0][0] == 0);
}

TEST_CASE("Kronecker congruence for small primes") {
    for (std::int64_t p : {2, 3, 5, 7}) CHECK(modular_polynomial(p).kronecker_congruence());
    CHECK(!modular_polynomial(4).kronecker_congruence());
}

TEST_CASE("doubling the guard does not change the coefficients") {
    for (std::int64_t l : {2, 3, 4, 5}) CHECK(compute_modular_polynomial(l, 32) == modular_polynomial(l));
}

TEST_CASE("level bound is configuration") {
    Limits lim;
    lim.lmax = 3;
    CHECK_THROWS_AS(modular_polynomial(5, lim), ResourceError);
}

TEST_CASE("Phi2 on the diagonal factors over the CM points of D = -4, -7, -8") {
    IntPoly d = modular_polynomial(2).diagonal();
    IntPoly expected = BigInt(-1) * IntPoly::x_minus(1728) * IntPoly::x_minus(-3375) *
                       IntPoly::x_minus(-3375) * IntPoly::x_minus(8000);
    CHECK(d == expected);
    CHECK(hilbert_class_polynomial(-4) == IntPoly::x_minus(1728));
    CHECK(hilbert_class_polynomial(-7) == IntPoly::x_minus(-3375));
    CHECK(hilbert_class_polynomial(-8) == IntPoly::x_minus(8000));
}

TEST_CASE("j_numeric classical values") {
    CHECK(close_to(j_numeric(UHPQuadPoint(1, 0, 1), 256), 1728, 100));
    CHECK(close_to(j_numeric(UHPQuadPoint(1, -1, 1), 256), 0, 100));
    CHECK(close_to(j_numeric(UHPQuadPoint(1, 0, 2), 256), 8000, 100));
    CHECK(close_to(j_numeric(UHPQuadPoint(1, 0, 4), 256), 287496, 100));
    // unreduced input and complex input
    CHECK(close_to(j_numeric(UHPQuadPoint(4, 0, 1), 256), 287496, 100));
    BigComplex tau(BigFloat(3, 256), BigFloat(1, 256));
    CHECK(close_to(j_numeric(tau, 256), 1728, 100));
}

TEST_CASE("numeric consistency of Phi_l on Hecke images") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.9, 1.6);
    const int prec = 512;
    for (int k = 0; k < 20; ++k) {
        BigComplex tau(BigFloat(Rational(static_cast<long>(re(rng) * 1e6), 1000000), prec),
                       BigFloat(Rational(static_cast<long>(im(rng) * 1e6), 1000000), prec));
        BigComplex jt = j_numeric(tau, prec);
        for (std::int64_t l = 1; l <= 7; ++l) {
            const ModPoly& phi = modular_polynomial(l);
            for (const auto& h : hecke_representatives(l)) {
                BigComplex mt = (BigComplex(h.a, prec) * tau + BigComplex(h.b, prec)) / BigComplex(h.d, prec);
                BigComplex jm = j_numeric(mt, prec);
                CHECK(phi.residual(jt, jm) < eps(64));
            }
        }
    }
}

TEST_CASE("Hilbert class polynomial goldens") {
    for (long d : {-3L, -4L, -7L, -8L, -11L, -15L}) {
        CAPTURE(d);
        CHECK(hilbert_class_polynomial(d) == golden_hilbert(d));
    }
    CHECK(hilbert_class_polynomial(-15).to_string() == "x^2 + 191025*x - 121287375");
    Limits lim;
    lim.dmax = 10;
    CHECK_THROWS_AS(hilbert_class_polynomial(-15, lim), ResourceError);
    CHECK_THROWS_AS(hilbert_class_polynomial(-5), DomainError);
}

TEST_CASE("class polynomial degree equals the number of reduced forms") {
    auto pts = enumerate_cm_points(100);
    std::map<BigInt, long> count;
    for (const auto& p : pts) ++count[p.disc];
    long total = 0;
    for (const auto& [d, h] : count) {
        CAPTURE(d);
        IntPoly hp = hilbert_class_polynomial(d);
        CHECK(hp.degree() == h);
        CHECK(hp.leading() == 1);
        total += h;
    }
    CHECK(total == static_cast<long>(pts.size()));
}

TEST_CASE("phi_vanishes_at_cm examples and the resultant check") {
    CMPointId i{-4, 1, 0, 1}, two_i{-16, 1, 0, 4}, rho{-3, 1, 1, 1};
    CHECK(phi_vanishes_at_cm(2, i, two_i));
    CHECK(!phi_vanishes_at_cm(2, i, rho));
    CHECK(phi_vanishes_at_cm(1, rho, rho));
    CHECK(phi_vanishes_on_classes(2, -4, -16));
    CHECK(!phi_vanishes_on_classes(2, -4, -3));
    CHECK(phi_vanishes_on_classes(1, -3, -3));
    CHECK(!phi_vanishes_on_classes(3, -4, -16));
    // Class-level agreement: the resultant vanishes iff some forms of the two
    // discriminants are l-isogenous.
    auto pts = enumerate_cm_points(20);
    std::map<BigInt, std::vector<CMPointId>> by_disc;
    for (const auto& p : pts) by_disc[p.disc].push_back(p);
    for (std::int64_t l : {2, 3}) {
        for (const auto& [dp, fp] : by_disc)
            for (const auto& [dq, fq] : by_disc) {
                bool lattice = false;
                for (const auto& p : fp)
                    for (const auto& q : fq) lattice = lattice || phi_vanishes_at_cm(l, p, q);
                CAPTURE(l);
                CAPTURE(dp);
                CAPTURE(dq);
                CHECK(lattice == phi_vanishes_on_classes(l, dp, dq));
            }
    }
}

TEST_CASE("disk cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "cmmod_cache_test";
    std::filesystem::remove_all(dir);
    ModPoly cold = compute_modular_polynomial(3);
    std::string text = modpoly_to_json(cold);
    CHECK(modpoly_from_json(text) == cold);
    CHECK_THROWS_AS(modpoly_from_json("{\"version\":1}"), ParseError);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "phi_3.json") << text;
    Limits lim;
    lim.cache_dir = dir.string();
    CHECK(modpoly_from_json(slurp((dir / "phi_3.json").string())) == modular_polynomial(3, lim));
    std::filesystem::remove_all(dir);
}
