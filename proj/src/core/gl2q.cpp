#include "gl2q.hpp"

#include "errors.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace cmmod {

RatMat2::RatMat2(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    d_.canonicalize();
    if (sgn(det()) <= 0) throw DomainError("matrix must have positive determinant");
}

RatMat2::RatMat2(const IntMat2& m) : RatMat2(Rational(m.a), Rational(m.b), Rational(m.c), Rational(m.d)) {}

RatMat2 operator*(const RatMat2& x, const RatMat2& y) {
    return RatMat2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                   x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
}

RatMat2 RatMat2::inverse() const {
    Rational det_ = det();
    return RatMat2(d_ / det_, -b_ / det_, -c_ / det_, a_ / det_);
}

PrimIntMat2::PrimIntMat2(IntMat2 m) : m_(std::move(m)), det_(m_.det()) {
    if (sgn(det_) <= 0) throw DomainError("matrix must have positive determinant");
    if (m_.content() != 1) throw DomainError("matrix must be primitive");
}

PrimIntMat2 PrimIntMat2::primitive_part(const IntMat2& m) {
    BigInt g = m.content();
    if (sgn(g) == 0) throw DomainError("matrix must have positive determinant");
    return PrimIntMat2(IntMat2{m.a / g, m.b / g, m.c / g, m.d / g});
}

std::int64_t psi(std::int64_t l) {
    std::int64_t r = l, n = l;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r = r / p * (p + 1);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r = r / n * (n + 1);
    return r;
}

std::pair<PrimIntMat2, Rational> primitive_integral_form(const RatMat2& g) {
    BigInt den = lcm(lcm(g.a().get_den(), g.b().get_den()), lcm(g.c().get_den(), g.d().get_den()));
    IntMat2 m{g.a().get_num() * (den / g.a().get_den()), g.b().get_num() * (den / g.b().get_den()),
              g.c().get_num() * (den / g.c().get_den()), g.d().get_num() * (den / g.d().get_den())};
    BigInt content = m.content();
    Rational scalar(content, den);
    scalar.canonicalize();
    return {PrimIntMat2::primitive_part(m), scalar};
}

BigInt level(const RatMat2& g) { return primitive_integral_form(g).first.det(); }

BigInt level(const IntMat2& g) {
    BigInt c = g.content();
    BigInt det = g.det();
    if (sgn(det) <= 0) throw DomainError("matrix must have positive determinant");
    return det / (c * c);
}

UHPQuadPoint act(const IntMat2& g, const UHPQuadPoint& tau) {
    if (sgn(g.det()) <= 0) throw DomainError("matrix must have positive determinant");
    const BigInt &p = g.a, &q = g.b, &r = g.c, &s = g.d;
    const BigInt &a = tau.a(), &b = tau.b(), &c = tau.c();
    // tau = g^{-1} tau' substituted into a x^2 + b x + c.
    BigInt a2 = a * s * s - b * s * r + c * r * r;
    BigInt b2 = -2 * a * s * q + b * (s * p + q * r) - 2 * c * r * p;
    BigInt c2 = a * q * q - b * q * p + c * p * p;
    return UHPQuadPoint::from_form(std::move(a2), std::move(b2), std::move(c2));
}

UHPQuadPoint act(const RatMat2& g, const UHPQuadPoint& tau) {
    return act(primitive_integral_form(g).first.mat(), tau);
}

const std::vector<HeckeRep>& hecke_representatives(std::int64_t l) {
    static std::mutex mu;
    static std::map<std::int64_t, std::vector<HeckeRep>> memo;
    if (l < 1) throw DomainError("level must be positive");
    std::lock_guard lock(mu);
    auto it = memo.find(l);
    if (it != memo.end()) return it->second;
    std::vector<HeckeRep> reps;
    for (std::int64_t a = 1; a <= l; ++a) {
        if (l % a != 0) continue;
        std::int64_t d = l / a;
        for (std::int64_t b = 0; b < d; ++b)
            if (std::gcd(std::gcd(a, b), d) == 1) reps.push_back({a, b, d});
    }
    return memo.emplace(l, std::move(reps)).first->second;
}

namespace {

std::int64_t to_i64(const BigInt& x) {
    if (!x.fits_slong_p()) throw ResourceError("coset level exceeds machine range");
    return x.get_si();
}

// floor-mod into [0, m)
std::int64_t mod_floor(__int128 x, std::int64_t m) {
    __int128 r = x % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

// s*x + t*y = g = gcd(x, y) >= 0
std::int64_t ext_gcd(std::int64_t x, std::int64_t y, std::int64_t& s, std::int64_t& t) {
    std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        std::int64_t s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        std::int64_t t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return r0;
}

} // namespace

std::pair<HeckeRep, IntMat2> coset_normal_form(const PrimIntMat2& pm) {
    const IntMat2& m = pm.mat();
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.a.get_mpz_t(), m.c.get_mpz_t());
    // eps1 = (s t; -c/g a/g) clears the lower-left entry.
    IntMat2 eps1{s, t, -m.c / g, m.a / g};
    BigInt upper_b = s * m.b + t * m.d;
    BigInt lower_d = pm.det() / g;
    BigInt k;
    mpz_fdiv_q(k.get_mpz_t(), upper_b.get_mpz_t(), lower_d.get_mpz_t());
    IntMat2 eps = IntMat2::T(-k) * eps1;
    BigInt b = upper_b - k * lower_d;
    HeckeRep rep{to_i64(g), to_i64(b), to_i64(lower_d)};
    return {rep, eps};
}

HeckeRep coset_of(const IntMat2& m) {
    return coset_normal_form(PrimIntMat2::primitive_part(m)).first;
}

HeckeRep right_S(const HeckeRep& h) {
    // (a b; 0 d)(0 -1; 1 0) = (b -a; d 0)
    std::int64_t s, t;
    std::int64_t g = ext_gcd(h.b, h.d, s, t);
    std::int64_t big_d = h.a * h.d / g;
    std::int64_t big_b = mod_floor(-static_cast<__int128>(s) * h.a, big_d);
    return {g, big_b, big_d};
}

HeckeRep right_T(const HeckeRep& h) { return {h.a, mod_floor(static_cast<__int128>(h.a) + h.b, h.d), h.d}; }

HeckeRep relative_coset(const IntMat2& x, const IntMat2& y) { return coset_of(x * y.adj()); }

} // namespace cmmod
