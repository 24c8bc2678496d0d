#pragma once

#include "bigfloat.hpp"
#include "config.hpp"
#include "qimath.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cmmod {

// Coordinates are numbered 1..n throughout.

// One linked block: coordinate k is j(gamma[k] . tau) for a free tau, with
// gamma[base] the identity.
struct Block {
    std::vector<int> indices; // sorted
    int base = 0;
    std::map<int, PrimIntMat2> gamma;

    friend bool operator==(const Block&, const Block&) = default;
    friend auto operator<=>(const Block&, const Block&) = default;
};

struct PreSpecialDatum {
    int n = 0;
    std::map<int, ConstantValue> pi0;
    std::vector<Block> blocks;

    friend bool operator==(const PreSpecialDatum&, const PreSpecialDatum&) = default;
    friend auto operator<=>(const PreSpecialDatum&, const PreSpecialDatum&) = default;
};

// Empty when valid, else a message naming the violated invariant.
std::optional<std::string> validate(const PreSpecialDatum& d);

enum class VarietyKind { special, weakly_special };

// A datum in canonical form. Only canonicalize builds these.
class SpecialVariety {
public:
    const PreSpecialDatum& datum() const { return d_; }
    int arity() const { return d_.n; }
    int dimension() const { return static_cast<int>(d_.blocks.size()); }
    VarietyKind kind() const;
    // Block holding coordinate i, or nullptr when i is constant.
    const Block* block_of(int i) const;
    const ConstantValue* constant_at(int i) const;

    friend bool operator==(const SpecialVariety&, const SpecialVariety&) = default;
    friend auto operator<=>(const SpecialVariety&, const SpecialVariety&) = default;

private:
    friend SpecialVariety canonicalize(const PreSpecialDatum& d);
    PreSpecialDatum d_;
};

// Throws DomainError on an invalid datum.
SpecialVariety canonicalize(const PreSpecialDatum& d);

// The whole affine space of the given arity.
SpecialVariety full_space(int n);
// A single point.
SpecialVariety point_variety(const std::vector<ConstantValue>& values);

struct PhiEq {
    std::int64_t l;
    int i, j;
    friend bool operator==(const PhiEq&, const PhiEq&) = default;
};
struct ConstEq {
    int i;
    ConstantValue value;
    friend bool operator==(const ConstEq&, const ConstEq&) = default;
};
using Atom = std::variant<PhiEq, ConstEq>;

struct EquationSystem {
    int n = 0;
    std::vector<Atom> atoms;
};

EquationSystem equations_of(const PreSpecialDatum& d);

// Numeric point of the variety: one tau per block, keyed by the block's base
// index. Orbit constants use a fixed non-quadratic stand-in for the
// transcendental base point.
std::vector<BigComplex> parameterize_numeric(const PreSpecialDatum& d,
                                             const std::map<int, BigComplex>& sample,
                                             int precision_bits);
BigComplex orbit_base_tau(int precision_bits);
// Numeric value of a named constant.
BigComplex constant_numeric(const ConstantValue& c, int precision_bits);

// Image under dropping coordinate drop (1-based). Coordinates above drop move
// down by one. Throws DomainError when n = 1.
PreSpecialDatum project(const PreSpecialDatum& d, int drop);

bool equal(const SpecialVariety& x, const SpecialVariety& y);
// y is a subset of x.
bool contains(const SpecialVariety& x, const SpecialVariety& y);

using ComponentSet = std::vector<SpecialVariety>; // sorted, duplicate free

ComponentSet components_of(const EquationSystem& s, const Limits& limits = {});
ComponentSet intersect(const SpecialVariety& x, const SpecialVariety& y, const Limits& limits = {});

// Whether the named point lies on the variety.
bool contains_point(const SpecialVariety& x, const std::vector<ConstantValue>& values);

} // namespace cmmod
