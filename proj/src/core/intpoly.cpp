#include "intpoly.hpp"

#include "errors.hpp"

#include <sstream>

namespace cmmod {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const BigInt& c, size_t deg) {
    std::vector<BigInt> v(deg + 1);
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

BigInt IntPoly::eval(const BigInt& x) const {
    BigInt r = 0;
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
}

IntPoly operator+(const IntPoly& x, const IntPoly& y) {
    std::vector<BigInt> c(std::max(x.c_.size(), y.c_.size()));
    for (size_t k = 0; k < x.c_.size(); ++k) c[k] += x.c_[k];
    for (size_t k = 0; k < y.c_.size(); ++k) c[k] += y.c_[k];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& x, const IntPoly& y) {
    std::vector<BigInt> c(std::max(x.c_.size(), y.c_.size()));
    for (size_t k = 0; k < x.c_.size(); ++k) c[k] += x.c_[k];
    for (size_t k = 0; k < y.c_.size(); ++k) c[k] -= y.c_[k];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& x, const IntPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<BigInt> c(x.c_.size() + y.c_.size() - 1);
    for (size_t i = 0; i < x.c_.size(); ++i)
        for (size_t j = 0; j < y.c_.size(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), x.c_[i].get_mpz_t(), y.c_[j].get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly operator*(const BigInt& k, const IntPoly& x) {
    std::vector<BigInt> c = x.c_;
    for (auto& v : c) v *= k;
    return IntPoly(std::move(c));
}

IntPoly divexact(const IntPoly& x, const IntPoly& y) {
    if (y.is_zero()) throw DomainError("division by the zero polynomial");
    if (x.is_zero()) return {};
    if (x.degree() < y.degree()) throw Error("inexact polynomial division");
    std::vector<BigInt> rem = x.c_;
    std::vector<BigInt> q(static_cast<size_t>(x.degree() - y.degree() + 1));
    const BigInt& lead = y.leading();
    for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
        BigInt& top = rem[static_cast<size_t>(k) + y.c_.size() - 1];
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) throw Error("inexact polynomial division");
        BigInt t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        q[static_cast<size_t>(k)] = t;
        for (size_t j = 0; j < y.c_.size(); ++j)
            mpz_submul(rem[static_cast<size_t>(k) + j].get_mpz_t(), t.get_mpz_t(), y.c_[j].get_mpz_t());
    }
    for (const auto& r : rem)
        if (sgn(r) != 0) throw Error("inexact polynomial division");
    return IntPoly(std::move(q));
}

std::string IntPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        const BigInt& v = c_[k];
        if (sgn(v) == 0) continue;
        BigInt mag = abs(v);
        if (first) {
            if (sgn(v) < 0) os << "-";
        } else {
            os << (sgn(v) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

IntPoly det_bareiss(std::vector<std::vector<IntPoly>> m) {
    size_t n = m.size();
    if (n == 0) return IntPoly({1});
    IntPoly prev({1});
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return {};
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    IntPoly d = m[n - 1][n - 1];
    return sign > 0 ? d : BigInt(-1) * d;
}

IntPoly resultant(const std::vector<IntPoly>& f, const std::vector<IntPoly>& g) {
    // Sylvester matrix: deg g rows of f, deg f rows of g.
    auto degree = [](const std::vector<IntPoly>& p) {
        long d = static_cast<long>(p.size()) - 1;
        while (d >= 0 && p[static_cast<size_t>(d)].is_zero()) --d;
        return d;
    };
    long m = degree(f), n = degree(g);
    if (m < 0 || n < 0) return {};
    size_t size = static_cast<size_t>(m + n);
    if (size == 0) return IntPoly({1});
    std::vector<std::vector<IntPoly>> s(size, std::vector<IntPoly>(size));
    for (long r = 0; r < n; ++r)
        for (long k = 0; k <= m; ++k)
            s[static_cast<size_t>(r)][static_cast<size_t>(r + m - k)] = f[static_cast<size_t>(k)];
    for (long r = 0; r < m; ++r)
        for (long k = 0; k <= n; ++k)
            s[static_cast<size_t>(n + r)][static_cast<size_t>(r + n - k)] = g[static_cast<size_t>(k)];
    return det_bareiss(std::move(s));
}

} // namespace cmmod
