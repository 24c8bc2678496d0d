#pragma once

#include "bigfloat.hpp"
#include "config.hpp"
#include "intpoly.hpp"
#include "qimath.hpp"
#include "qseries.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cmmod {

// Phi_l(x, y) as a dense table: c[i][j] is the coefficient of x^i y^j.
struct ModPoly {
    std::int64_t level = 1;
    std::int64_t psi = 1;
    std::vector<std::vector<BigInt>> c;

    const BigInt& coeff(size_t i, size_t j) const { return c[i][j]; }
    bool is_symmetric() const;
    // Monic in x of x-degree psi.
    bool is_monic() const;
    // All coefficients of Phi_p - (x^p - y)(x - y^p) divisible by p.
    bool kronecker_congruence() const;
    // Phi(x, x)
    IntPoly diagonal() const;
    // Coefficients in ascending powers of y, each a polynomial in x.
    std::vector<IntPoly> in_y() const;
    BigInt eval(const BigInt& x, const BigInt& y) const;
    BigComplex eval(const BigComplex& x, const BigComplex& y) const;
    // |Phi(x, y)| / max(1, sum |c_ij| |x|^i |y|^j); measures the cancellation
    // the numeric values reach, absolute when every term is tiny.
    BigFloat residual(const BigComplex& x, const BigComplex& y) const;
    size_t term_count() const;

    friend bool operator==(const ModPoly&, const ModPoly&) = default;
};

// The raw q-expansion algorithm; guard is the number of q-terms past the
// constant that must cancel exactly. No caching, no bounds.
ModPoly compute_modular_polynomial(std::int64_t l, int guard = 16);
// Memoized and, when limits.cache_dir is set, cached on disk as phi_<l>.json.
// Throws ResourceError above limits.lmax.
const ModPoly& modular_polynomial(std::int64_t l, const Limits& limits = {});

std::string modpoly_to_json(const ModPoly& p);
ModPoly modpoly_from_json(const std::string& text);

// 1728 g2^3 / (g2^3 - 27 g3^2); DomainError when the discriminant vanishes.
Rational j_alg(const Rational& g2, const Rational& g3);

// j(tau) after reduction into the fundamental domain. Working precision is
// raised by the bit size of |j| so the absolute error stays below
// 2^-(precision_bits/2).
BigComplex j_numeric(const BigComplex& tau, int precision_bits);
BigComplex j_numeric(const UHPQuadPoint& tau, int precision_bits);

// Monic H_D of degree h(D) from rounded high-precision roots. Precision
// doubles until every coefficient sits within 2^-32 of an integer.
IntPoly hilbert_class_polynomial(const BigInt& disc, const Limits& limits = {});

// Exact Phi_l(j_p, j_q) = 0 via the lattice test.
bool phi_vanishes_at_cm(std::int64_t l, const CMPointId& p, const CMPointId& q,
                        const Limits& limits = {});
// Res_x(H_Dp(x), Res_y(H_Dq(y), Phi_l(x, y))) = 0: some root of H_Dp and some
// root of H_Dq are l-isogenous. Independent of the lattice test.
bool phi_vanishes_on_classes(std::int64_t l, const BigInt& dp, const BigInt& dq,
                             const Limits& limits = {});

} // namespace cmmod
