#pragma once

#include "quadpoint.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cmmod {

// Rational 2x2 matrix with positive determinant.
class RatMat2 {
public:
    // Throws DomainError if the determinant is not positive.
    RatMat2(Rational a, Rational b, Rational c, Rational d);
    explicit RatMat2(const IntMat2& m);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }
    Rational det() const { return a_ * d_ - b_ * c_; }

    friend RatMat2 operator*(const RatMat2& x, const RatMat2& y);
    RatMat2 inverse() const;

private:
    Rational a_, b_, c_, d_;
};

// Primitive integral matrix with positive determinant; the determinant is the
// level of the cyclic isogeny the matrix induces.
class PrimIntMat2 {
public:
    // Throws DomainError unless gcd of the entries is 1 and det > 0.
    explicit PrimIntMat2(IntMat2 m);
    // Divides out the content; throws DomainError if det <= 0.
    static PrimIntMat2 primitive_part(const IntMat2& m);
    static PrimIntMat2 identity() { return PrimIntMat2(IntMat2::identity()); }

    const IntMat2& mat() const { return m_; }
    const BigInt& det() const { return det_; }

    friend bool operator==(const PrimIntMat2& x, const PrimIntMat2& y) { return x.m_ == y.m_; }
    friend std::strong_ordering operator<=>(const PrimIntMat2& x, const PrimIntMat2& y) {
        return x.m_ <=> y.m_;
    }

private:
    IntMat2 m_;
    BigInt det_;
};

// Upper triangular coset representative (a b; 0 d), ad = level, 0 <= b < d,
// gcd(a, b, d) = 1. Levels are machine integers: anything larger than the
// configured bounds never reaches this type.
struct HeckeRep {
    std::int64_t a = 1, b = 0, d = 1;

    std::int64_t level() const { return a * d; }
    IntMat2 mat() const { return {a, b, 0, d}; }
    PrimIntMat2 prim() const { return PrimIntMat2(mat()); }

    friend bool operator==(const HeckeRep&, const HeckeRep&) = default;
    friend auto operator<=>(const HeckeRep&, const HeckeRep&) = default;
};

// Number of Hecke cosets of level l: psi(l) = l * prod_{p | l} (1 + 1/p).
std::int64_t psi(std::int64_t l);

std::pair<PrimIntMat2, Rational> primitive_integral_form(const RatMat2& g);
BigInt level(const RatMat2& g);
BigInt level(const IntMat2& g);

UHPQuadPoint act(const IntMat2& g, const UHPQuadPoint& tau);
UHPQuadPoint act(const RatMat2& g, const UHPQuadPoint& tau);

// Complete list of left SL2(Z)-coset representatives of primitive determinant-l
// matrices, sorted by (a, b, d). Memoized.
const std::vector<HeckeRep>& hecke_representatives(std::int64_t l);

// Returns (rep, eps) with eps in SL2(Z) and eps * m = rep.
std::pair<HeckeRep, IntMat2> coset_normal_form(const PrimIntMat2& m);
HeckeRep coset_of(const IntMat2& m); // primitive part, then normal form

// Right action of the generators on left cosets: coset(rep * S), coset(rep * T).
HeckeRep right_S(const HeckeRep& h);
HeckeRep right_T(const HeckeRep& h);

// Coset of x * y^{-1} (up to positive scalars).
HeckeRep relative_coset(const IntMat2& x, const IntMat2& y);

} // namespace cmmod
