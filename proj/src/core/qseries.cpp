#include "qseries.hpp"

#include "errors.hpp"

#include <algorithm>

namespace cmmod {

QExpansion::QExpansion(long start, long prec, std::vector<BigInt> coeffs)
    : start_(start), prec_(prec), coeffs_(std::move(coeffs)) {
    if (start_ > prec_) start_ = prec_;
    coeffs_.resize(static_cast<size_t>(prec_ - start_));
    normalize();
}

QExpansion QExpansion::constant(const BigInt& c, long prec) {
    if (prec <= 0) return zero(prec);
    return QExpansion(0, prec, {c});
}

void QExpansion::normalize() {
    size_t k = 0;
    while (k < coeffs_.size() && sgn(coeffs_[k]) == 0) ++k;
    if (k > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(k));
        start_ += static_cast<long>(k);
    }
    if (coeffs_.empty()) start_ = prec_;
}

BigInt QExpansion::coeff(long e) const {
    if (e >= prec_) throw ResourceError("q-expansion read past its truncation order");
    if (e < start_) return 0;
    return coeffs_[static_cast<size_t>(e - start_)];
}

QExpansion QExpansion::truncated(long prec) const {
    if (prec >= prec_) return *this;
    std::vector<BigInt> c;
    for (long e = start_; e < prec; ++e) c.push_back(coeffs_[static_cast<size_t>(e - start_)]);
    return QExpansion(std::min(start_, prec), prec, std::move(c));
}

namespace {

QExpansion add_signed(const QExpansion& x, const QExpansion& y, int sign) {
    long prec = std::min(x.prec(), y.prec());
    long start = std::min(x.start(), y.start());
    if (start > prec) start = prec;
    std::vector<BigInt> c(static_cast<size_t>(prec - start));
    for (long e = x.start(); e < prec; ++e) c[static_cast<size_t>(e - start)] += x.coeff(e);
    for (long e = y.start(); e < prec; ++e) {
        if (sign > 0)
            c[static_cast<size_t>(e - start)] += y.coeff(e);
        else
            c[static_cast<size_t>(e - start)] -= y.coeff(e);
    }
    return QExpansion(start, prec, std::move(c));
}

} // namespace

QExpansion operator+(const QExpansion& x, const QExpansion& y) { return add_signed(x, y, 1); }
QExpansion operator-(const QExpansion& x, const QExpansion& y) { return add_signed(x, y, -1); }

QExpansion operator*(const QExpansion& x, const QExpansion& y) {
    long prec = std::min(x.prec() + y.valuation(), y.prec() + x.valuation());
    long start = x.valuation() + y.valuation();
    if (x.is_zero() || y.is_zero() || start >= prec) return QExpansion::zero(prec);
    std::vector<BigInt> c(static_cast<size_t>(prec - start));
    const auto& xc = x.coeffs();
    const auto& yc = y.coeffs();
    long len = prec - start;
    for (long i = 0; i < static_cast<long>(xc.size()) && i < len; ++i) {
        if (sgn(xc[static_cast<size_t>(i)]) == 0) continue;
        long jmax = std::min(static_cast<long>(yc.size()), len - i);
        for (long j = 0; j < jmax; ++j)
            mpz_addmul(c[static_cast<size_t>(i + j)].get_mpz_t(), xc[static_cast<size_t>(i)].get_mpz_t(),
                       yc[static_cast<size_t>(j)].get_mpz_t());
    }
    return QExpansion(start, prec, std::move(c));
}

QExpansion operator*(const BigInt& k, const QExpansion& x) {
    std::vector<BigInt> c = x.coeffs();
    for (auto& v : c) v *= k;
    return QExpansion(x.start(), x.prec(), std::move(c));
}

QExpansion operator-(const QExpansion& x) { return BigInt(-1) * x; }

QExpansion QExpansion::divexact(const BigInt& k) const {
    std::vector<BigInt> c = coeffs_;
    for (auto& v : c) {
        if (!mpz_divisible_p(v.get_mpz_t(), k.get_mpz_t()))
            throw Error("inexact division of a q-expansion coefficient");
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), k.get_mpz_t());
    }
    return QExpansion(start_, prec_, std::move(c));
}

QExpansion QExpansion::inverse() const {
    if (is_zero()) throw DomainError("inverse of a zero q-expansion");
    const BigInt& lead = coeffs_[0];
    if (abs(lead) != 1) throw DomainError("inverse needs a unit leading coefficient");
    // x = lead q^v (1 + u); the inverse has relative precision prec - v.
    long v = start_;
    long n = prec_ - v;
    std::vector<BigInt> inv(static_cast<size_t>(n));
    inv[0] = lead;
    for (long k = 1; k < n; ++k) {
        BigInt s = 0;
        for (long i = 1; i <= k; ++i) s += coeffs_[static_cast<size_t>(i)] * inv[static_cast<size_t>(k - i)];
        inv[static_cast<size_t>(k)] = -lead * s;
    }
    return QExpansion(-v, -v + n, std::move(inv));
}

QExpansion QExpansion::pow(unsigned k) const {
    if (k == 0) return constant(1, prec_ - start_);
    QExpansion r, b = *this;
    bool first = true;
    while (k > 0) {
        if (k & 1u) {
            r = first ? b : r * b;
            first = false;
        }
        k >>= 1;
        if (k > 0) b = b * b;
    }
    return r;
}

namespace {

std::vector<BigInt> divisor_power_sums(long order, unsigned power) {
    std::vector<BigInt> s(static_cast<size_t>(order + 1));
    for (long d = 1; d <= order; ++d) {
        BigInt dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), power);
        for (long m = d; m <= order; m += d) s[static_cast<size_t>(m)] += dp;
    }
    return s;
}

} // namespace

QExpansion eisenstein_e4(long order) {
    auto s = divisor_power_sums(order, 3);
    std::vector<BigInt> c(static_cast<size_t>(order + 1));
    c[0] = 1;
    for (long n = 1; n <= order; ++n) c[static_cast<size_t>(n)] = 240 * s[static_cast<size_t>(n)];
    return QExpansion(0, order + 1, std::move(c));
}

QExpansion eisenstein_e6(long order) {
    auto s = divisor_power_sums(order, 5);
    std::vector<BigInt> c(static_cast<size_t>(order + 1));
    c[0] = 1;
    for (long n = 1; n <= order; ++n) c[static_cast<size_t>(n)] = -504 * s[static_cast<size_t>(n)];
    return QExpansion(0, order + 1, std::move(c));
}

QExpansion discriminant_series(long order) {
    // prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
    std::vector<BigInt> eta(static_cast<size_t>(order + 1));
    for (long k = 0;; ++k) {
        long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > order) break;
        int sign = (k % 2 == 0) ? 1 : -1;
        eta[static_cast<size_t>(e1)] += sign;
        if (k > 0 && e2 <= order) eta[static_cast<size_t>(e2)] += sign;
    }
    QExpansion p(0, order, std::move(eta)); // exact through q^(order-1)
    QExpansion p24 = p.pow(24);
    // shift by q
    std::vector<BigInt> c = p24.coeffs();
    return QExpansion(p24.start() + 1, p24.prec() + 1, std::move(c));
}

QExpansion j_q_expansion(long order) {
    // 1/Delta starts at q^-1 and loses one more term to the inversion, so
    // Delta is needed through q^(order+2).
    QExpansion delta = discriminant_series(order + 2);
    QExpansion e4 = eisenstein_e4(order + 1);
    QExpansion j = e4.pow(3) * delta.inverse();
    return j.truncated(order + 1);
}

} // namespace cmmod
