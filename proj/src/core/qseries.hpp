#pragma once

#include "quadpoint.hpp"

#include <vector>

namespace cmmod {

// Truncated Laurent series in q with integer coefficients. Holds the
// coefficients of q^start .. q^(prec-1); everything from q^prec on is unknown.
// Arithmetic tracks precision and never reads past it.
class QExpansion {
public:
    QExpansion() = default;
    QExpansion(long start, long prec, std::vector<BigInt> coeffs);

    static QExpansion constant(const BigInt& c, long prec);
    static QExpansion zero(long prec) { return QExpansion(prec, prec, {}); }

    long start() const { return start_; }
    long prec() const { return prec_; }
    // First exponent with a nonzero coefficient; prec() if none is known.
    long valuation() const { return start_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Throws ResourceError when asked past the truncation.
    BigInt coeff(long e) const;
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    QExpansion truncated(long prec) const;

    friend QExpansion operator+(const QExpansion& x, const QExpansion& y);
    friend QExpansion operator-(const QExpansion& x, const QExpansion& y);
    friend QExpansion operator*(const QExpansion& x, const QExpansion& y);
    friend QExpansion operator*(const BigInt& k, const QExpansion& x);
    friend QExpansion operator-(const QExpansion& x);
    // Exact division of every coefficient; throws if some coefficient is not
    // divisible.
    QExpansion divexact(const BigInt& k) const;
    // 1/x for x whose leading coefficient is +-1.
    QExpansion inverse() const;
    QExpansion pow(unsigned k) const;

    friend bool operator==(const QExpansion&, const QExpansion&) = default;

private:
    void normalize();

    long start_ = 0;
    long prec_ = 0;
    std::vector<BigInt> coeffs_;
};

// sum_{n >= 0} c_n q^n, exact through q^order.
QExpansion eisenstein_e4(long order);
QExpansion eisenstein_e6(long order);
// Delta = q prod (1 - q^n)^24 via the pentagonal number series.
QExpansion discriminant_series(long order);
// Klein's j = E4^3 / Delta = q^-1 + 744 + 196884 q + ..., exact through q^order.
QExpansion j_q_expansion(long order);

} // namespace cmmod
