#include "bigfloat.hpp"

#include <algorithm>
#include <memory>

namespace cmmod {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigInt& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    // leave o as a valid tiny number so its destructor stays cheap
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    BigFloat r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

BigInt BigFloat::round() const {
    BigFloat r(prec());
    mpfr_round(r.v_, v_);
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), r.v_, MPFR_RNDN);
    return out;
}

BigInt BigFloat::floor() const {
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), v_, MPFR_RNDD);
    return out;
}

long BigFloat::exponent() const {
    if (mpfr_zero_p(v_)) return -(1L << 40);
    return mpfr_get_exp(v_);
}

std::string BigFloat::to_string(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {

mpfr_prec_t wider(const BigFloat& x, const BigFloat& y) { return std::max(x.prec(), y.prec()); }

} // namespace

BigFloat operator+(const BigFloat& x, const BigFloat& y) {
    BigFloat r(wider(x, y));
    mpfr_add(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& x, const BigFloat& y) {
    BigFloat r(wider(x, y));
    mpfr_sub(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& x, const BigFloat& y) {
    BigFloat r(wider(x, y));
    mpfr_mul(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& x, const BigFloat& y) {
    BigFloat r(wider(x, y));
    mpfr_div(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_neg(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigComplex BigComplex::of(const UHPQuadPoint& tau, mpfr_prec_t prec) {
    BigFloat two_a(BigInt(2 * tau.a()), prec);
    BigFloat re = BigFloat(BigInt(-tau.b()), prec) / two_a;
    BigFloat im = BigFloat(BigInt(-tau.disc()), prec).sqrt() / two_a;
    return {re, im};
}

BigFloat BigComplex::norm() const { return re * re + im * im; }

BigFloat BigComplex::abs() const {
    BigFloat r(prec());
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
}

BigComplex BigComplex::with_prec(mpfr_prec_t prec) const {
    BigComplex r(prec);
    mpfr_set(r.re.get(), re.get(), MPFR_RNDN);
    mpfr_set(r.im.get(), im.get(), MPFR_RNDN);
    return r;
}

std::string BigComplex::to_string(int digits) const {
    return "(" + re.to_string(digits) + ", " + im.to_string(digits) + ")";
}

BigComplex operator/(const BigComplex& x, const BigComplex& y) {
    BigFloat n = y.norm();
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}

BigComplex exp_2pi_i(const BigComplex& z) {
    mpfr_prec_t p = z.prec();
    BigFloat two_pi = BigFloat::pi(p) * BigFloat(2, p);
    BigFloat mod(p), s(p), c(p);
    BigFloat arg = two_pi * z.re;
    BigFloat e = -(two_pi * z.im);
    mpfr_exp(mod.get(), e.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), arg.get(), MPFR_RNDN);
    return {mod * c, mod * s};
}

} // namespace cmmod
