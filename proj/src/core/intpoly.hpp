#pragma once

#include "quadpoint.hpp"

#include <string>
#include <vector>

namespace cmmod {

// Dense univariate integer polynomial, coefficients in ascending degree. The
// zero polynomial has no coefficients; otherwise the last one is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    static IntPoly monomial(const BigInt& c, size_t deg);
    static IntPoly x_minus(const BigInt& root) { return IntPoly({-root, 1}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
    const BigInt& leading() const { return c_.back(); }

    BigInt eval(const BigInt& x) const;

    friend IntPoly operator+(const IntPoly& x, const IntPoly& y);
    friend IntPoly operator-(const IntPoly& x, const IntPoly& y);
    friend IntPoly operator*(const IntPoly& x, const IntPoly& y);
    friend IntPoly operator*(const BigInt& k, const IntPoly& x);
    // Exact quotient; throws if y does not divide x over Z.
    friend IntPoly divexact(const IntPoly& x, const IntPoly& y);

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    // "x^2 + 191025*x - 121287375" style, in the given variable.
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<BigInt> c_;
};

// Determinant of a square matrix over Z[x] by fraction-free elimination.
IntPoly det_bareiss(std::vector<std::vector<IntPoly>> m);
// Resultant of two polynomials in y whose coefficients lie in Z[x]; both
// inputs list coefficients in ascending powers of y.
IntPoly resultant(const std::vector<IntPoly>& f, const std::vector<IntPoly>& g);

} // namespace cmmod
