#pragma once

#include "quadpoint.hpp"

#include <mpfr.h>

#include <string>

namespace cmmod {

// RAII wrapper over mpfr_t. Binary operations round to the larger of the two
// operand precisions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(const BigInt& v, mpfr_prec_t prec);
    BigFloat(const Rational& v, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static BigFloat pi(mpfr_prec_t prec);

    BigFloat abs() const;
    BigFloat sqrt() const;
    BigInt round() const; // nearest integer, ties away from zero
    BigInt floor() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent: |x| < 2^exponent(). Very negative for zero.
    long exponent() const;
    std::string to_string(int digits = 30) const;

    friend BigFloat operator+(const BigFloat& x, const BigFloat& y);
    friend BigFloat operator-(const BigFloat& x, const BigFloat& y);
    friend BigFloat operator*(const BigFloat& x, const BigFloat& y);
    friend BigFloat operator/(const BigFloat& x, const BigFloat& y);
    friend BigFloat operator-(const BigFloat& x);
    friend bool operator<(const BigFloat& x, const BigFloat& y) { return mpfr_less_p(x.v_, y.v_); }
    friend bool operator>(const BigFloat& x, const BigFloat& y) { return mpfr_greater_p(x.v_, y.v_); }
    friend bool operator<=(const BigFloat& x, const BigFloat& y) { return mpfr_lessequal_p(x.v_, y.v_); }

private:
    mpfr_t v_;
};

struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(long v, mpfr_prec_t prec) : re(v, prec), im(prec) {}
    BigComplex(const BigInt& v, mpfr_prec_t prec) : re(v, prec), im(prec) {}

    // Value of the quadratic point as a complex number.
    static BigComplex of(const UHPQuadPoint& tau, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    BigFloat norm() const; // |z|^2
    BigFloat abs() const;
    BigComplex with_prec(mpfr_prec_t prec) const;
    std::string to_string(int digits = 30) const;

    friend BigComplex operator+(const BigComplex& x, const BigComplex& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend BigComplex operator-(const BigComplex& x, const BigComplex& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend BigComplex operator*(const BigComplex& x, const BigComplex& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend BigComplex operator/(const BigComplex& x, const BigComplex& y);
    friend BigComplex operator-(const BigComplex& x) { return {-x.re, -x.im}; }
};

// exp(2 pi i z)
BigComplex exp_2pi_i(const BigComplex& z);

} // namespace cmmod
