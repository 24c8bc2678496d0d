#pragma once

#include "config.hpp"
#include "serialize.hpp"
#include "special.hpp"

#include <vector>

namespace cmmod {

// Which universe the variables range over.
enum class StructureKind { cmod, cmmod, isog_a };

std::string to_string(StructureKind k);

// X minus the union of its excluded proper subvarieties.
struct Piece {
    SpecialVariety variety;
    ComponentSet excluded;
    friend bool operator==(const Piece&, const Piece&) = default;
};

// Finite union of pieces, all of one arity.
struct ConstructibleSet {
    int arity = 0;
    std::vector<Piece> pieces;
    bool empty() const { return pieces.empty(); }
    friend bool operator==(const ConstructibleSet&, const ConstructibleSet&) = default;
};

// Context shared by the set operations.
struct SetContext {
    StructureKind kind = StructureKind::cmod;
    Limits limits;
};

ConstructibleSet empty_set(int n);
ConstructibleSet full_set(int n);
// Union of closed components.
ConstructibleSet closed_set(int n, const ComponentSet& cs, const SetContext& ctx);

ConstructibleSet set_union(const ConstructibleSet& a, const ConstructibleSet& b, const SetContext& ctx);
ConstructibleSet set_intersection(const ConstructibleSet& a, const ConstructibleSet& b, const SetContext& ctx);
ConstructibleSet set_complement(const ConstructibleSet& a, const SetContext& ctx);

// Exact image under dropping coordinate var (1-based); arity drops by one.
ConstructibleSet project_constructible(const ConstructibleSet& s, int var, const SetContext& ctx);
// Preimage under dropping var: var becomes a free coordinate.
ConstructibleSet cylinder(const ConstructibleSet& s, int var);

// Removes pieces and exclusions without points in the universe, drops
// redundant exclusions and pieces, merges pieces that refill an exclusion.
ConstructibleSet normalize(const ConstructibleSet& s, const SetContext& ctx);

bool contains_tuple(const ConstructibleSet& s, const std::vector<ConstantValue>& values);

// Datum helpers in the same coordinate conventions.
SpecialVariety drop_coordinate(const SpecialVariety& x, int var);
SpecialVariety insert_free_coordinate(const SpecialVariety& x, int var);

json to_json(const ConstructibleSet& s);

} // namespace cmmod
