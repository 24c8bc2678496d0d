#pragma once

#include "config.hpp"
#include "special.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cmmod {

// A variable x_var (var >= 1) or a named constant.
struct Term {
    int var = 0;
    std::optional<ConstantValue> constant;

    static Term variable(int v) { return {v, std::nullopt}; }
    static Term named(const ConstantValue& c) { return {0, c}; }
    bool is_var() const { return var > 0; }
    friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { truth, falsity, phi, eq, component, negation, conjunction, disjunction, exists, forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind = FormulaKind::truth;
    std::int64_t level = 0;                // phi
    std::vector<Term> terms;               // phi and eq: two; component: its arity
    std::optional<SpecialVariety> variety; // component
    std::vector<FormulaPtr> args;          // negation: one; conjunction, disjunction: two or more
    int var = 0;                           // quantifiers
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_phi(std::int64_t l, Term a, Term b);
FormulaPtr f_eq(Term a, Term b);
FormulaPtr f_component(const SpecialVariety& x, std::vector<Term> terms);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(std::vector<FormulaPtr> args); // flattens; empty is true
FormulaPtr f_or(std::vector<FormulaPtr> args);  // flattens; empty is false
FormulaPtr f_exists(int var, FormulaPtr body);
FormulaPtr f_forall(int var, FormulaPtr body);

bool is_quantifier_free(const Formula& f);
std::set<int> free_vars(const Formula& f);
// Largest variable index anywhere in f, bound or free; 0 if none.
int max_var(const Formula& f);
bool same_formula(const Formula& a, const Formula& b);

// Throws ParseError with line and column. Phi levels above
// limits.formula_lmax raise ResourceError.
FormulaPtr parse_formula(const std::string& text, const Limits& limits = {});
std::string render(const Formula& f);
// "CM(-4;1,0,1)" or "Orb([[1,1],[0,2]])", as in formulas.
ConstantValue parse_constant(const std::string& text);

} // namespace cmmod
