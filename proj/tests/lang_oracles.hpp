#pragma once

#include "decide.hpp"
#include "errors.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cmmod::testing {

struct SuiteEntry {
    bool expected = false;
    StructureKind kind = StructureKind::cmod;
    std::string text;
    bool has_orbit = false; // orbit constants: no cmmod run
};

inline std::vector<SuiteEntry> read_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<SuiteEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string expected, kind, rest;
        ss >> expected >> kind;
        std::getline(ss, rest);
        SuiteEntry e;
        e.expected = expected == "true";
        e.kind = kind == "isog-a" ? StructureKind::isog_a : StructureKind::cmod;
        e.text = rest.substr(rest.find_first_not_of(' '));
        e.has_orbit = e.text.find("Orb(") != std::string::npos;
        out.push_back(std::move(e));
    }
    return out;
}

inline SetContext context(StructureKind k) {
    SetContext c;
    c.kind = k;
    return c;
}

inline void collect_constants(const Formula& f, std::vector<ConstantValue>& out) {
    for (const auto& t : f.terms)
        if (t.constant) out.push_back(*t.constant);
    for (const auto& a : f.args) collect_constants(*a, out);
}

// Top-level conjunct forcing the witness w into a finite set determined by
// the assigned variables.
inline bool pins_witness(const Formula& psi, int w) {
    std::vector<const Formula*> conj;
    if (psi.kind == FormulaKind::conjunction)
        for (const auto& a : psi.args) conj.push_back(a.get());
    else
        conj.push_back(&psi);
    for (const Formula* c : conj) {
        if (c->kind != FormulaKind::phi && c->kind != FormulaKind::eq) continue;
        const Term& a = c->terms[0];
        const Term& b = c->terms[1];
        bool aw = a.is_var() && a.var == w, bw = b.is_var() && b.var == w;
        if (aw != bw) return true; // the other side is a constant or another variable
    }
    return false;
}

// Bounded witness search for exists x_w. psi at an assignment of the other
// variables. Candidates: CM points with |D| <= dmax, Hecke images up to level
// 7 of the assigned values and the constants of psi. Returns nullopt when no
// witness turns up and the search cannot rule one out.
struct WitnessSearch {
    std::vector<CMPointId> pool;
    explicit WitnessSearch(long dmax) : pool(enumerate_cm_points(dmax)) {}

    std::optional<bool> operator()(const Formula& psi, std::map<int, ConstantValue> at, int w,
                                   StructureKind kind) const {
        std::vector<ConstantValue> cands(pool.begin(), pool.end());
        for (const auto& [v, c] : at)
            for (std::int64_t l = 1; l <= 7; ++l)
                for (auto& img : hecke_images(l, c)) cands.push_back(img);
        collect_constants(psi, cands);
        for (const auto& c : cands) {
            at[w] = c;
            if (evaluate_on_tuple(psi, at, kind)) return true;
        }
        if (pins_witness(psi, w)) return false;
        return std::nullopt;
    }

    // exists x2. psi(x1, x2) at x1 = value
    std::optional<bool> operator()(const Formula& psi, const ConstantValue& value, StructureKind kind) const {
        return (*this)(psi, {{1, value}}, 2, kind);
    }
};

} // namespace cmmod::testing
