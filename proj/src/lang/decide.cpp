#include "decide.hpp"

#include "errors.hpp"

#include <algorithm>

namespace cmmod {

json to_json(const std::vector<TraceStep>& trace) {
    json out = json::array();
    for (const auto& s : trace)
        out.push_back({{"step", s.step},
                       {"eliminatedVar", "x" + std::to_string(s.eliminated_var)},
                       {"before", to_json(s.before)},
                       {"after", to_json(s.after)}});
    return out;
}

void check_constants(const Formula& f, StructureKind kind) {
    if (kind != StructureKind::cmmod) return;
    auto bad = [](const ConstantValue& c) {
        throw DomainError("orbit constant " + to_string(c) + " is not a CM point; use --structure cmod or isog-a");
    };
    for (const auto& t : f.terms)
        if (t.constant && !is_cm(*t.constant)) bad(*t.constant);
    if (f.variety)
        for (const auto& [i, c] : f.variety->datum().pi0)
            if (!is_cm(c)) bad(c);
    for (const auto& a : f.args) check_constants(*a, kind);
}

namespace {

PreSpecialDatum free_datum(int n) {
    PreSpecialDatum d;
    d.n = n;
    for (int i = 1; i <= n; ++i) d.blocks.push_back(Block{{i}, i, {{i, PrimIntMat2::identity()}}});
    return d;
}

// x_var = c, everything else free.
SpecialVariety line_at(int n, int var, const ConstantValue& c) {
    PreSpecialDatum d = free_datum(n);
    d.blocks.erase(d.blocks.begin() + (var - 1));
    d.pi0.emplace(var, c);
    return canonicalize(d);
}

SpecialVariety diagonal_at(int n, int p, int q) {
    PreSpecialDatum d = free_datum(n);
    d.blocks.erase(d.blocks.begin() + (q - 1));
    d.blocks[static_cast<size_t>(p - 1)] = Block{{p, q}, p, {{p, PrimIntMat2::identity()}, {q, PrimIntMat2::identity()}}};
    return canonicalize(d);
}

ComponentSet meet_all(const ComponentSet& cs, const SpecialVariety& with, const Limits& limits) {
    ComponentSet out;
    for (const auto& c : cs)
        for (auto& m : intersect(c, with, limits)) out.push_back(std::move(m));
    return out;
}

// Closed set of a component atom whose terms may repeat variables or name
// constants: meet with the constraints, drop the now determined coordinates,
// then place the rest at their variables.
ComponentSet embed_component(const SpecialVariety& x, std::vector<Term> terms, int arity, const Limits& limits) {
    ComponentSet cs{x};
    for (int p = static_cast<int>(terms.size()); p >= 1; --p) {
        const Term& t = terms[static_cast<size_t>(p - 1)];
        if (t.is_var()) continue;
        int k = static_cast<int>(terms.size());
        ComponentSet next;
        for (const auto& c : meet_all(cs, line_at(k, p, *t.constant), limits))
            next.push_back(drop_coordinate(c, p));
        cs = std::move(next);
        terms.erase(terms.begin() + (p - 1));
    }
    for (bool again = true; again;) {
        again = false;
        for (size_t p = 0; p < terms.size() && !again; ++p)
            for (size_t q = p + 1; q < terms.size() && !again; ++q) {
                if (terms[p].var != terms[q].var) continue;
                int k = static_cast<int>(terms.size());
                ComponentSet next;
                for (const auto& c : meet_all(cs, diagonal_at(k, static_cast<int>(p + 1), static_cast<int>(q + 1)), limits))
                    next.push_back(drop_coordinate(c, static_cast<int>(q + 1)));
                cs = std::move(next);
                terms.erase(terms.begin() + static_cast<long>(q));
                again = true;
            }
    }
    ComponentSet out;
    for (const auto& c : cs) {
        // position r goes to coordinate terms[r].var; the rest are free
        const PreSpecialDatum& d = c.datum();
        auto at = [&](int r) { return terms[static_cast<size_t>(r - 1)].var; };
        PreSpecialDatum e;
        e.n = arity;
        std::vector<bool> used(static_cast<size_t>(arity) + 1, false);
        for (const auto& [r, v] : d.pi0) {
            e.pi0.emplace(at(r), v);
            used[static_cast<size_t>(at(r))] = true;
        }
        for (const auto& b : d.blocks) {
            Block nb;
            for (int r : b.indices) {
                nb.indices.push_back(at(r));
                nb.gamma.emplace(at(r), b.gamma.at(r));
                used[static_cast<size_t>(at(r))] = true;
            }
            std::sort(nb.indices.begin(), nb.indices.end());
            nb.base = at(b.base);
            e.blocks.push_back(std::move(nb));
        }
        for (int i = 1; i <= arity; ++i)
            if (!used[static_cast<size_t>(i)]) e.blocks.push_back(Block{{i}, i, {{i, PrimIntMat2::identity()}}});
        out.push_back(canonicalize(e));
    }
    return out;
}

bool ground_phi(std::int64_t l, const ConstantValue& a, const ConstantValue& b) { return phi_holds(l, a, b); }

ConstructibleSet atom_set(const Formula& f, int n, const SetContext& ctx) {
    const Limits& lim = ctx.limits;
    auto truth = [n](bool v) { return v ? full_set(n) : empty_set(n); };
    if (f.kind == FormulaKind::component) return closed_set(n, embed_component(*f.variety, f.terms, n, lim), ctx);
    const Term& a = f.terms[0];
    const Term& b = f.terms[1];
    std::int64_t l = f.kind == FormulaKind::phi ? f.level : 1;
    if (l > lim.formula_lmax)
        throw ResourceError("level " + std::to_string(l) + " exceeds the configured formula level bound " +
                            std::to_string(lim.formula_lmax));
    if (!a.is_var() && !b.is_var()) return truth(ground_phi(l, *a.constant, *b.constant));
    if (a.is_var() && b.is_var()) {
        if (a.var == b.var && l == 1) return full_set(n);
        return closed_set(n, components_of(EquationSystem{n, {PhiEq{l, a.var, b.var}}}, lim), ctx);
    }
    const Term& v = a.is_var() ? a : b;
    const ConstantValue& c = a.is_var() ? *b.constant : *a.constant;
    ComponentSet cs;
    for (const auto& u : hecke_images(l, c)) cs.push_back(line_at(n, v.var, u));
    return closed_set(n, cs, ctx);
}

struct Evaluator {
    const SetContext& ctx;
    std::vector<TraceStep>* trace;
    std::map<const Formula*, FormulaPtr> done; // eliminated quantifier nodes
    int steps = 0;

    ConstructibleSet eval(const Formula& f, int n) {
        switch (f.kind) {
        case FormulaKind::truth: return full_set(n);
        case FormulaKind::falsity: return empty_set(n);
        case FormulaKind::phi:
        case FormulaKind::eq:
        case FormulaKind::component: return atom_set(f, n, ctx);
        case FormulaKind::negation: return set_complement(eval(*f.args[0], n), ctx);
        case FormulaKind::conjunction: {
            ConstructibleSet s = eval(*f.args[0], n);
            for (size_t i = 1; i < f.args.size() && !s.empty(); ++i) s = set_intersection(s, eval(*f.args[i], n), ctx);
            return s;
        }
        case FormulaKind::disjunction: {
            ConstructibleSet s = eval(*f.args[0], n);
            for (size_t i = 1; i < f.args.size(); ++i) s = set_union(s, eval(*f.args[i], n), ctx);
            return s;
        }
        case FormulaKind::exists:
        case FormulaKind::forall: {
            bool ex = f.kind == FormulaKind::exists;
            // forall x. g is !exists x. !g
            ConstructibleSet body = eval(*f.args[0], n);
            if (!ex) body = set_complement(body, ctx);
            ConstructibleSet image = cylinder(project_constructible(body, f.var, ctx), f.var);
            if (trace) trace->push_back({++steps, f.var, body, image});
            ConstructibleSet out = ex ? image : set_complement(image, ctx);
            done[&f] = set_to_formula(out, ctx.limits);
            return out;
        }
        }
        throw Error("unreachable formula kind");
    }
};

FormulaPtr substitute(const FormulaPtr& f, const std::map<const Formula*, FormulaPtr>& done) {
    auto it = done.find(f.get());
    if (it != done.end()) return it->second;
    if (f->args.empty()) return f;
    Formula g = *f;
    for (auto& a : g.args) a = substitute(a, done);
    return std::make_shared<const Formula>(std::move(g));
}

void check_arity(int n, const Limits& lim) {
    if (n > lim.nmax)
        throw ResourceError("formula uses " + std::to_string(n) + " variables; the configured nmax is " +
                            std::to_string(lim.nmax));
}

// Conjunction of atoms cutting out x exactly, or nothing.
std::optional<FormulaPtr> equations_formula(const SpecialVariety& x, const Limits& lim) {
    EquationSystem s = equations_of(x.datum());
    bool big_block = false;
    for (const auto& b : x.datum().blocks) big_block = big_block || b.indices.size() > 2;
    std::vector<FormulaPtr> atoms;
    for (const auto& a : s.atoms) {
        if (const auto* p = std::get_if<PhiEq>(&a)) {
            if (p->l > lim.formula_lmax) return std::nullopt;
            if (p->l == 1)
                atoms.push_back(f_eq(Term::variable(p->i), Term::variable(p->j)));
            else
                atoms.push_back(f_phi(p->l, Term::variable(p->i), Term::variable(p->j)));
        } else {
            const auto& k = std::get<ConstEq>(a);
            atoms.push_back(f_eq(Term::variable(k.i), Term::named(k.value)));
        }
    }
    if (big_block && components_of(s, lim) != ComponentSet{x}) return std::nullopt;
    return f_and(atoms);
}

FormulaPtr variety_formula(const SpecialVariety& x, const Limits& lim) {
    if (auto f = equations_formula(x, lim)) return *f;
    // component atom over the constrained coordinates only
    const PreSpecialDatum& d = x.datum();
    std::vector<int> coords;
    for (const auto& [i, c] : d.pi0) coords.push_back(i);
    for (const auto& b : d.blocks)
        if (b.indices.size() > 1) coords.insert(coords.end(), b.indices.begin(), b.indices.end());
    std::sort(coords.begin(), coords.end());
    std::map<int, int> pos;
    for (size_t r = 0; r < coords.size(); ++r) pos[coords[r]] = static_cast<int>(r + 1);
    PreSpecialDatum e;
    e.n = static_cast<int>(coords.size());
    for (const auto& [i, c] : d.pi0) e.pi0.emplace(pos[i], c);
    for (const auto& b : d.blocks) {
        if (b.indices.size() == 1) continue;
        Block nb;
        for (int i : b.indices) {
            nb.indices.push_back(pos[i]);
            nb.gamma.emplace(pos[i], b.gamma.at(i));
        }
        nb.base = pos[b.base];
        e.blocks.push_back(std::move(nb));
    }
    std::vector<Term> terms;
    for (int i : coords) terms.push_back(Term::variable(i));
    return f_component(canonicalize(e), std::move(terms));
}

} // namespace

ConstructibleSet formula_set(const Formula& f, int arity, const SetContext& ctx, std::vector<TraceStep>* trace) {
    if (arity < max_var(f)) throw DomainError("arity below the largest variable index");
    check_arity(arity, ctx.limits);
    check_constants(f, ctx.kind);
    Evaluator ev{ctx, trace, {}, 0};
    return ev.eval(f, arity);
}

ConstructibleSet to_constructible(const Formula& qf, int arity, const SetContext& ctx) {
    if (!is_quantifier_free(qf)) throw DomainError("to_constructible needs a quantifier-free formula");
    return formula_set(qf, arity, ctx);
}

FormulaPtr set_to_formula(const ConstructibleSet& s, const Limits& limits) {
    std::vector<FormulaPtr> parts;
    for (const auto& p : s.pieces) {
        std::vector<FormulaPtr> holes;
        for (const auto& y : p.excluded) holes.push_back(variety_formula(y, limits));
        FormulaPtr main = variety_formula(p.variety, limits);
        if (holes.empty())
            parts.push_back(main);
        else
            parts.push_back(f_and({main, f_not(f_or(holes))}));
    }
    return f_or(parts);
}

FormulaPtr qe(const Formula& f, const SetContext& ctx, std::vector<TraceStep>* trace) {
    return set_to_formula(formula_set(f, max_var(f), ctx, trace), ctx.limits);
}

bool evaluate_on_tuple(const Formula& f, const std::map<int, ConstantValue>& assignment, StructureKind kind) {
    if (kind == StructureKind::cmmod)
        for (const auto& [v, c] : assignment)
            if (!is_cm(c)) throw DomainError("orbit value for x" + std::to_string(v) + " under cmmod");
    check_constants(f, kind);
    auto value = [&](const Term& t) -> const ConstantValue& {
        if (t.constant) return *t.constant;
        auto it = assignment.find(t.var);
        if (it == assignment.end()) throw DomainError("x" + std::to_string(t.var) + " is not assigned");
        return it->second;
    };
    switch (f.kind) {
    case FormulaKind::truth: return true;
    case FormulaKind::falsity: return false;
    case FormulaKind::phi: return phi_holds(f.level, value(f.terms[0]), value(f.terms[1]));
    case FormulaKind::eq: return value(f.terms[0]) == value(f.terms[1]);
    case FormulaKind::component: {
        std::vector<ConstantValue> vs;
        for (const auto& t : f.terms) vs.push_back(value(t));
        return contains_point(*f.variety, vs);
    }
    case FormulaKind::negation: return !evaluate_on_tuple(*f.args[0], assignment, kind);
    case FormulaKind::conjunction:
        return std::all_of(f.args.begin(), f.args.end(),
                           [&](const FormulaPtr& a) { return evaluate_on_tuple(*a, assignment, kind); });
    case FormulaKind::disjunction:
        return std::any_of(f.args.begin(), f.args.end(),
                           [&](const FormulaPtr& a) { return evaluate_on_tuple(*a, assignment, kind); });
    case FormulaKind::exists:
    case FormulaKind::forall: throw DomainError("ground evaluation needs a quantifier-free formula");
    }
    return false;
}

bool evaluate_qf_sentence(const Formula& f, StructureKind kind) {
    auto fv = free_vars(f);
    if (!fv.empty()) throw DomainError("not a sentence: x" + std::to_string(*fv.begin()) + " is free");
    return evaluate_on_tuple(f, {}, kind);
}

Decision decide(const Formula& sentence, const SetContext& ctx, bool trace) {
    auto fv = free_vars(sentence);
    if (!fv.empty()) throw DomainError("not a sentence: x" + std::to_string(*fv.begin()) + " is free");
    int n = max_var(sentence);
    check_arity(n, ctx.limits);
    check_constants(sentence, ctx.kind);
    Decision d;
    Evaluator ev{ctx, trace ? &d.trace : nullptr, {}, 0};
    try {
        d.value = !ev.eval(sentence, n).empty();
    } catch (const ResourceError& e) {
        // point at the root through a non-owning handle so substitute can match nodes
        FormulaPtr root(std::shared_ptr<const Formula>(), &sentence);
        throw ResourceError(std::string(e.what()) + "; partially eliminated: " + render(*substitute(root, ev.done)));
    }
    if (trace && ctx.kind != StructureKind::isog_a) {
        SetContext other = ctx;
        other.kind = ctx.kind == StructureKind::cmod ? StructureKind::cmmod : StructureKind::cmod;
        try {
            check_constants(sentence, other.kind);
            Evaluator ev2{other, nullptr, {}, 0};
            d.other_structure = !ev2.eval(sentence, n).empty();
        } catch (const DomainError&) {
            // orbit constants have no meaning in the CM structure
        }
    }
    return d;
}

} // namespace cmmod
