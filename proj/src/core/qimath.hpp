#pragma once

#include "gl2q.hpp"

#include <set>
#include <variant>
#include <vector>

namespace cmmod {

// Name of a CM j-invariant: discriminant plus the reduced form of that
// discriminant. Reduced means |b| <= a <= c, with b >= 0 if |b| = a or a = c.
struct CMPointId {
    BigInt disc;
    BigInt a, b, c;

    UHPQuadPoint point() const { return UHPQuadPoint(a, b, c); }

    friend bool operator==(const CMPointId&, const CMPointId&) = default;
    // Sorted by (|D|, a, b).
    friend std::strong_ordering operator<=>(const CMPointId& x, const CMPointId& y);
};

// The point j(M . a) of the isogeny class of the fixed transcendental base
// point a. M is kept in Hecke normal form.
struct OrbitPoint {
    HeckeRep m;

    static OrbitPoint of(const IntMat2& m) { return {coset_of(m)}; }

    friend bool operator==(const OrbitPoint&, const OrbitPoint&) = default;
    friend auto operator<=>(const OrbitPoint&, const OrbitPoint&) = default;
};

// A named constant: CM points sort before orbit points.
using ConstantValue = std::variant<CMPointId, OrbitPoint>;

inline bool is_cm(const ConstantValue& v) { return std::holds_alternative<CMPointId>(v); }

struct Reduction {
    UHPQuadPoint point;
    IntMat2 gamma; // gamma . input = point
};

// Reduces into |Re| <= 1/2, |tau| >= 1 with Re in (-1/2, 1/2] and Re >= 0 on
// the unit circle.
Reduction reduce_to_fundamental_domain(const UHPQuadPoint& tau);

CMPointId cm_id_of(const UHPQuadPoint& tau);

// All CM points with |D| <= dmax, sorted by (|D|, a, b). Empty for dmax < 3.
std::vector<CMPointId> enumerate_cm_points(long dmax);
std::vector<CMPointId> cm_points_of_disc(const BigInt& disc);

// Squarefree kernel of -D: two discriminants share a CM field iff their
// kernels agree.
BigInt cm_field_kernel(const BigInt& disc);

std::set<std::int64_t> cyclic_isogeny_levels(const CMPointId& p, const CMPointId& q,
                                             std::int64_t lmax);
// Whether a cyclic isogeny of degree exactly l links p to q.
bool has_cyclic_isogeny(const CMPointId& p, const CMPointId& q, std::int64_t l);

int hom_rank(const ConstantValue& x, const ConstantValue& y);

// j(g . v) for an integral matrix g; exact on both constant sorts.
ConstantValue act_on(const IntMat2& g, const ConstantValue& v);
// All distinct values j(h . v), h ranging over Hecke(l): the roots of
// Phi_l(j(v), Y).
std::vector<ConstantValue> hecke_images(std::int64_t l, const ConstantValue& v);
// Ground truth of Phi_l(x, y) = 0 on named constants.
bool phi_holds(std::int64_t l, const ConstantValue& x, const ConstantValue& y);

std::string to_string(const ConstantValue& v);
std::ostream& operator<<(std::ostream& os, const CMPointId& p);

} // namespace cmmod
