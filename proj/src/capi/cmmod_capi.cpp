#include "cmmod/cmmod.h"

#include "decide.hpp"
#include "errors.hpp"
#include "modpoly.hpp"
#include "serialize.hpp"

#include <cstring>
#include <sstream>

using namespace cmmod;

struct cmmod_engine {
    SetContext ctx;
    std::string last_error;
};

struct cmmod_formula {
    FormulaPtr f;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs body, turning exceptions into status codes and e->last_error.
template <class F>
cmmod_status guarded(cmmod_engine* e, F&& body) {
    if (!e) return CMMOD_ERR_ARGUMENT;
    e->last_error.clear();
    try {
        body();
        return CMMOD_OK;
    } catch (const ParseError& x) {
        e->last_error = x.what();
        return CMMOD_ERR_PARSE;
    } catch (const ResourceError& x) {
        e->last_error = x.what();
        return CMMOD_ERR_RESOURCE;
    } catch (const DomainError& x) {
        e->last_error = x.what();
        return CMMOD_ERR_DOMAIN;
    } catch (const std::invalid_argument& x) {
        e->last_error = x.what();
        return CMMOD_ERR_ARGUMENT;
    } catch (const std::exception& x) {
        e->last_error = x.what();
        return CMMOD_ERR_INTERNAL;
    } catch (...) {
        e->last_error = "unknown failure";
        return CMMOD_ERR_INTERNAL;
    }
}

void need(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

std::string monomial(size_t i, size_t j) {
    std::string s;
    if (i > 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
    if (j > 0) s += (s.empty() ? "" : "*") + (j == 1 ? std::string("y") : "y^" + std::to_string(j));
    return s;
}

std::string modpoly_text(const ModPoly& p) {
    // descending total degree, then descending x-degree
    std::vector<std::pair<size_t, size_t>> order;
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < p.c[i].size(); ++j)
            if (sgn(p.c[i][j]) != 0) order.emplace_back(i, j);
    std::sort(order.begin(), order.end(), [](auto a, auto b) {
        return a.first + a.second != b.first + b.second ? a.first + a.second > b.first + b.second : a.first > b.first;
    });
    std::string out;
    for (auto [i, j] : order) {
        BigInt c = p.c[i][j];
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        std::string m = monomial(i, j);
        std::string term = m.empty() ? c.get_str() : (c == 1 ? m : c.get_str() + "*" + m);
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

std::string component_text(const SpecialVariety& x) {
    std::vector<Term> terms;
    for (int i = 1; i <= x.datum().n; ++i) terms.push_back(Term::variable(i));
    return render(*f_component(x, std::move(terms)));
}

} // namespace

extern "C" {

cmmod_engine* cmmod_engine_new(void) { return new (std::nothrow) cmmod_engine(); }

void cmmod_engine_free(cmmod_engine* e) { delete e; }

const char* cmmod_last_error(const cmmod_engine* e) { return e ? e->last_error.c_str() : "null engine"; }

cmmod_status cmmod_set_structure(cmmod_engine* e, const char* name) {
    return guarded(e, [&] {
        need(name, "null structure name");
        std::string s = name;
        if (s == "cmod")
            e->ctx.kind = StructureKind::cmod;
        else if (s == "cmmod")
            e->ctx.kind = StructureKind::cmmod;
        else if (s == "isog-a")
            e->ctx.kind = StructureKind::isog_a;
        else
            throw std::invalid_argument("unknown structure '" + s + "' (cmod, cmmod or isog-a)");
    });
}

cmmod_status cmmod_set_limit(cmmod_engine* e, const char* name, long value) {
    return guarded(e, [&] {
        need(name, "null limit name");
        if (value <= 0) throw std::invalid_argument("limits must be positive");
        std::string s = name;
        Limits& l = e->ctx.limits;
        if (s == "lmax")
            l.lmax = static_cast<int>(value);
        else if (s == "formula-lmax")
            l.formula_lmax = static_cast<int>(value);
        else if (s == "nmax")
            l.nmax = static_cast<int>(value);
        else if (s == "dmax")
            l.dmax = value;
        else if (s == "precision")
            l.precision_bits = static_cast<int>(value);
        else
            throw std::invalid_argument("unknown limit '" + s + "'");
    });
}

cmmod_status cmmod_set_cache_dir(cmmod_engine* e, const char* dir) {
    return guarded(e, [&] { e->ctx.limits.cache_dir = dir ? dir : ""; });
}

void cmmod_string_free(char* s) { std::free(s); }

cmmod_status cmmod_formula_parse(cmmod_engine* e, const char* text, cmmod_formula** out) {
    return guarded(e, [&] {
        need(text && out, "null argument");
        *out = new cmmod_formula{parse_formula(text, e->ctx.limits)};
    });
}

void cmmod_formula_free(cmmod_formula* f) { delete f; }

char* cmmod_formula_render(const cmmod_formula* f) { return f ? dup_string(render(*f->f)) : nullptr; }

int cmmod_formula_is_sentence(const cmmod_formula* f) { return f && free_vars(*f->f).empty() ? 1 : 0; }

cmmod_status cmmod_decide(cmmod_engine* e, const cmmod_formula* f, int trace, int* value, char** report) {
    return guarded(e, [&] {
        need(f && value, "null argument");
        Decision d = decide(*f->f, e->ctx, trace != 0);
        *value = d.value ? 1 : 0;
        if (report) {
            json r = {{"value", d.value}, {"structure", to_string(e->ctx.kind)}};
            r["otherStructure"] = d.other_structure ? json(*d.other_structure) : json(nullptr);
            if (trace) r["trace"] = to_json(d.trace);
            *report = dup_string(r.dump());
        }
    });
}

cmmod_status cmmod_qe(cmmod_engine* e, const cmmod_formula* f, cmmod_formula** out, char** trace_json) {
    return guarded(e, [&] {
        need(f && out, "null argument");
        std::vector<TraceStep> steps;
        FormulaPtr g = qe(*f->f, e->ctx, trace_json ? &steps : nullptr);
        *out = new cmmod_formula{g};
        if (trace_json) *trace_json = dup_string(to_json(steps).dump());
    });
}

cmmod_status cmmod_modpoly(cmmod_engine* e, long level, cmmod_format fmt, char** out) {
    return guarded(e, [&] {
        need(out != nullptr, "null argument");
        const ModPoly& p = modular_polynomial(level, e->ctx.limits);
        *out = dup_string(fmt == CMMOD_FORMAT_JSON ? modpoly_to_json(p) : modpoly_text(p));
    });
}

cmmod_status cmmod_cm_list(cmmod_engine* e, long dmax, cmmod_format fmt, char** out) {
    return guarded(e, [&] {
        need(out != nullptr, "null argument");
        if (dmax > e->ctx.limits.dmax)
            throw ResourceError("dmax " + std::to_string(dmax) + " exceeds the configured bound " +
                                std::to_string(e->ctx.limits.dmax));
        auto pts = enumerate_cm_points(dmax);
        if (fmt == CMMOD_FORMAT_JSON) {
            json a = json::array();
            for (const auto& p : pts) a.push_back(to_json(p));
            *out = dup_string(a.dump());
        } else {
            std::string s;
            for (const auto& p : pts) s += to_string(ConstantValue(p)) + "\n";
            *out = dup_string(s);
        }
    });
}

cmmod_status cmmod_components(cmmod_engine* e, const char* system_json, cmmod_format fmt, char** out) {
    return guarded(e, [&] {
        need(system_json && out, "null argument");
        EquationSystem s = system_from_json(parse_json_text(system_json));
        if (s.n > e->ctx.limits.nmax)
            throw ResourceError("system arity " + std::to_string(s.n) + " exceeds nmax = " +
                                std::to_string(e->ctx.limits.nmax));
        ComponentSet cs = components_of(s, e->ctx.limits);
        if (fmt == CMMOD_FORMAT_JSON) {
            *out = dup_string(to_json(cs).dump());
        } else {
            std::string t;
            for (const auto& x : cs) t += component_text(x) + "\n";
            *out = dup_string(t);
        }
    });
}

cmmod_status cmmod_project(cmmod_engine* e, const char* datum_json, int drop, cmmod_format fmt, char** out) {
    return guarded(e, [&] {
        need(datum_json && out, "null argument");
        PreSpecialDatum d = datum_from_json(parse_json_text(datum_json));
        if (auto err = validate(d)) throw DomainError("invalid datum: " + *err);
        if (drop < 1 || drop > d.n) throw DomainError("drop index " + std::to_string(drop) + " out of range");
        PreSpecialDatum p = project(d, drop);
        if (fmt == CMMOD_FORMAT_JSON) {
            *out = dup_string(to_json(canonicalize(p)).dump());
        } else {
            *out = dup_string(component_text(canonicalize(p)) + "\n");
        }
    });
}

cmmod_status cmmod_hom_rank(cmmod_engine* e, const char* c1, const char* c2, int* rank) {
    return guarded(e, [&] {
        need(c1 && c2 && rank, "null argument");
        *rank = hom_rank(parse_constant(c1), parse_constant(c2));
    });
}

} // extern "C"
