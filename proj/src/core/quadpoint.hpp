#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

namespace cmmod {

using BigInt = mpz_class;
using Rational = mpq_class;

std::strong_ordering compare(const BigInt& x, const BigInt& y);
std::string to_string(const BigInt& x);

// Integer 2x2 matrix (a b; c d). No invariant beyond integrality.
struct IntMat2 {
    BigInt a{1}, b{0}, c{0}, d{1};

    static IntMat2 identity() { return {}; }
    static IntMat2 S() { return {0, -1, 1, 0}; }
    static IntMat2 T(const BigInt& k = 1) { return {1, k, 0, 1}; }

    BigInt det() const { return a * d - b * c; }
    BigInt content() const;
    // Adjugate: m * adj(m) = det(m) * identity.
    IntMat2 adj() const { return {d, -b, -c, a}; }

    friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const IntMat2& x, const IntMat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend std::strong_ordering operator<=>(const IntMat2& x, const IntMat2& y);
};

std::ostream& operator<<(std::ostream& os, const IntMat2& m);

// A quadratic imaginary point of the upper half-plane, named by the primitive
// integer triple (a, b, c) with a > 0 and b^2 - 4ac < 0. The triple denotes the
// root (-b + sqrt(b^2 - 4ac)) / (2a) of a x^2 + b x + c, which always has
// positive imaginary part.
class UHPQuadPoint {
public:
    // Throws DomainError unless a > 0, gcd(a, b, c) = 1 and b^2 - 4ac < 0.
    UHPQuadPoint(BigInt a, BigInt b, BigInt c);

    // Divides out the content and flips the overall sign so that a > 0.
    // Throws DomainError if the discriminant is not negative.
    static UHPQuadPoint from_form(BigInt a, BigInt b, BigInt c);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    BigInt disc() const { return b_ * b_ - 4 * a_ * c_; }

    friend bool operator==(const UHPQuadPoint&, const UHPQuadPoint&) = default;

private:
    BigInt a_, b_, c_;
};

std::ostream& operator<<(std::ostream& os, const UHPQuadPoint& p);

} // namespace cmmod
