#pragma once

#include "constructible.hpp"
#include "formula.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cmmod {

struct TraceStep {
    int step = 0;
    int eliminated_var = 0;
    ConstructibleSet before; // the body, over all variables of the formula
    ConstructibleSet after;  // its image, as a cylinder over the eliminated variable
};

json to_json(const std::vector<TraceStep>& trace);

// Rejects constants the structure does not name: orbit constants under
// cmmod raise DomainError.
void check_constants(const Formula& f, StructureKind kind);

// The set a formula defines in the universe of kind, over the variables
// x1..x_arity (arity >= max_var(f)). Quantifiers are eliminated innermost
// first; each elimination is appended to trace when given.
ConstructibleSet formula_set(const Formula& f, int arity, const SetContext& ctx,
                             std::vector<TraceStep>* trace = nullptr);

// A quantifier-free formula defining s: atoms where the equations cut out a
// component exactly, component atoms otherwise.
FormulaPtr set_to_formula(const ConstructibleSet& s, const Limits& limits = {});
// The set defined by a quantifier-free formula (atoms expanded to components).
ConstructibleSet to_constructible(const Formula& qf, int arity, const SetContext& ctx);

FormulaPtr qe(const Formula& f, const SetContext& ctx = {}, std::vector<TraceStep>* trace = nullptr);

// Ground evaluation; quantifiers are a DomainError.
bool evaluate_on_tuple(const Formula& f, const std::map<int, ConstantValue>& assignment, StructureKind kind);
bool evaluate_qf_sentence(const Formula& f, StructureKind kind);

struct Decision {
    bool value = false;
    std::vector<TraceStep> trace;
    // With tracing under cmod or cmmod: the answer in the other structure.
    std::optional<bool> other_structure;
};

// ResourceError messages carry the partially eliminated formula.
Decision decide(const Formula& sentence, const SetContext& ctx, bool trace = false);

} // namespace cmmod
