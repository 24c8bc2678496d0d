#include "quadpoint.hpp"

#include "errors.hpp"

namespace cmmod {

std::strong_ordering compare(const BigInt& x, const BigInt& y) {
    int r = cmp(x, y);
    return r < 0 ? std::strong_ordering::less
                 : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const BigInt& x) { return x.get_str(); }

BigInt IntMat2::content() const {
    BigInt g = gcd(gcd(a, b), gcd(c, d));
    return g;
}

std::strong_ordering operator<=>(const IntMat2& x, const IntMat2& y) {
    if (auto r = compare(x.a, y.a); r != 0) return r;
    if (auto r = compare(x.b, y.b); r != 0) return r;
    if (auto r = compare(x.c, y.c); r != 0) return r;
    return compare(x.d, y.d);
}

std::ostream& operator<<(std::ostream& os, const IntMat2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

UHPQuadPoint::UHPQuadPoint(BigInt a, BigInt b, BigInt c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (sgn(a_) <= 0) throw DomainError("quadratic point needs a > 0");
    if (sgn(disc()) >= 0) throw DomainError("quadratic point needs b^2 - 4ac < 0");
    BigInt g = gcd(gcd(a_, b_), c_);
    if (g != 1) throw DomainError("quadratic point triple must be primitive");
}

UHPQuadPoint UHPQuadPoint::from_form(BigInt a, BigInt b, BigInt c) {
    BigInt g = gcd(gcd(a, b), c);
    if (sgn(g) == 0) throw DomainError("zero form");
    if (sgn(a) < 0) g = -g;
    a /= g;
    b /= g;
    c /= g;
    return UHPQuadPoint(std::move(a), std::move(b), std::move(c));
}

std::ostream& operator<<(std::ostream& os, const UHPQuadPoint& p) {
    return os << "(" << p.a() << "," << p.b() << "," << p.c() << ")";
}

} // namespace cmmod
