#include "constructible.hpp"

#include "errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace cmmod {

std::string to_string(StructureKind k) {
    switch (k) {
    case StructureKind::cmod: return "cmod";
    case StructureKind::cmmod: return "cmmod";
    case StructureKind::isog_a: return "isog-a";
    }
    return "?";
}

namespace {

// Whether the variety can have points in the universe at all. CM constants
// never lie in the isogeny class of the transcendental base point, and orbit
// constants are never CM.
bool universe_ok(const SpecialVariety& x, StructureKind k) {
    for (const auto& [i, c] : x.datum().pi0) {
        if (k == StructureKind::cmmod && !is_cm(c)) return false;
        if (k == StructureKind::isog_a && is_cm(c)) return false;
    }
    return true;
}

ComponentSet meet(const SpecialVariety& a, const SpecialVariety& b, const SetContext& ctx) {
    if (contains(a, b)) return {b};
    if (contains(b, a)) return {a};
    return intersect(a, b, ctx.limits);
}

bool covered(const SpecialVariety& c, const ComponentSet& by) {
    return std::any_of(by.begin(), by.end(), [&](const SpecialVariety& y) { return contains(y, c); });
}

// Y minus the union of F misses Z entirely.
bool avoids(const SpecialVariety& y, const ComponentSet& f, const SpecialVariety& z, const SetContext& ctx) {
    for (const auto& c : meet(y, z, ctx))
        if (!covered(c, f)) return false;
    return true;
}

// Keeps only the maximal members, sorted.
ComponentSet maximal(ComponentSet cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    ComponentSet out;
    for (size_t i = 0; i < cs.size(); ++i) {
        bool inside = false;
        for (size_t j = 0; j < cs.size() && !inside; ++j)
            inside = j != i && contains(cs[j], cs[i]);
        if (!inside) out.push_back(cs[i]);
    }
    return out;
}

} // namespace

ConstructibleSet empty_set(int n) { return {n, {}}; }

ConstructibleSet full_set(int n) { return {n, {Piece{full_space(n), {}}}}; }

ConstructibleSet closed_set(int n, const ComponentSet& cs, const SetContext& ctx) {
    ConstructibleSet s{n, {}};
    for (const auto& c : cs) {
        if (c.arity() != n) throw DomainError("arity mismatch");
        s.pieces.push_back({c, {}});
    }
    return normalize(s, ctx);
}

ConstructibleSet normalize(const ConstructibleSet& s, const SetContext& ctx) {
    std::vector<Piece> ps;
    for (const auto& p : s.pieces) {
        if (!universe_ok(p.variety, ctx.kind)) continue;
        ComponentSet ex;
        bool empty = false;
        for (const auto& y : p.excluded) {
            if (!universe_ok(y, ctx.kind)) continue;
            if (contains(y, p.variety)) empty = true;
            ex.push_back(y);
        }
        if (empty) continue;
        ps.push_back({p.variety, maximal(std::move(ex))});
    }
    std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) {
        return std::tie(a.variety, a.excluded) < std::tie(b.variety, b.excluded);
    });
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    // Merge (X, E) with (Y, F) when Y is in E and Y minus F misses the rest of E.
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < ps.size() && !changed; ++i)
            for (size_t j = 0; j < ps.size() && !changed; ++j) {
                if (i == j) continue;
                const Piece& p = ps[i];
                const Piece& q = ps[j];
                auto it = std::find(p.excluded.begin(), p.excluded.end(), q.variety);
                if (it == p.excluded.end()) continue;
                bool ok = true;
                for (const auto& z : p.excluded)
                    if (!(z == q.variety) && !avoids(q.variety, q.excluded, z, ctx)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                ComponentSet ex;
                for (const auto& z : p.excluded)
                    if (!(z == q.variety)) ex.push_back(z);
                ex.insert(ex.end(), q.excluded.begin(), q.excluded.end());
                Piece merged{p.variety, maximal(std::move(ex))};
                ps.erase(ps.begin() + static_cast<long>(std::max(i, j)));
                ps.erase(ps.begin() + static_cast<long>(std::min(i, j)));
                ps.push_back(std::move(merged));
                changed = true;
            }
    }

    // Drop a piece whose points another piece already covers.
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t j = 0; j < ps.size() && !changed; ++j)
            for (size_t i = 0; i < ps.size() && !changed; ++i) {
                if (i == j || !contains(ps[i].variety, ps[j].variety)) continue;
                bool inside = true;
                for (const auto& z : ps[i].excluded)
                    if (!avoids(ps[j].variety, ps[j].excluded, z, ctx)) {
                        inside = false;
                        break;
                    }
                if (inside) {
                    ps.erase(ps.begin() + static_cast<long>(j));
                    changed = true;
                }
            }
    }
    std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) {
        return std::tie(a.variety, a.excluded) < std::tie(b.variety, b.excluded);
    });
    return {s.arity, std::move(ps)};
}

ConstructibleSet set_union(const ConstructibleSet& a, const ConstructibleSet& b, const SetContext& ctx) {
    if (a.arity != b.arity) throw DomainError("arity mismatch");
    ConstructibleSet s = a;
    s.pieces.insert(s.pieces.end(), b.pieces.begin(), b.pieces.end());
    return normalize(s, ctx);
}

ConstructibleSet set_intersection(const ConstructibleSet& a, const ConstructibleSet& b, const SetContext& ctx) {
    if (a.arity != b.arity) throw DomainError("arity mismatch");
    ConstructibleSet s{a.arity, {}};
    for (const auto& p : a.pieces)
        for (const auto& q : b.pieces)
            for (const auto& c : meet(p.variety, q.variety, ctx)) {
                if (!universe_ok(c, ctx.kind)) continue;
                ComponentSet ex;
                bool empty = false;
                for (const auto* list : {&p.excluded, &q.excluded})
                    for (const auto& y : *list)
                        for (const auto& d : meet(c, y, ctx)) {
                            if (d == c) empty = true;
                            ex.push_back(d);
                        }
                if (!empty) s.pieces.push_back({c, std::move(ex)});
            }
    return normalize(s, ctx);
}

ConstructibleSet set_complement(const ConstructibleSet& a, const SetContext& ctx) {
    ConstructibleSet out = full_set(a.arity);
    SpecialVariety all = full_space(a.arity);
    for (const auto& p : a.pieces) {
        ConstructibleSet c{a.arity, {}};
        if (!(p.variety == all)) c.pieces.push_back({all, {p.variety}});
        for (const auto& y : p.excluded) c.pieces.push_back({y, {}});
        out = set_intersection(out, normalize(c, ctx), ctx);
        if (out.empty()) break;
    }
    return out;
}

SpecialVariety drop_coordinate(const SpecialVariety& x, int var) {
    if (x.arity() == 1) {
        if (var != 1) throw DomainError("coordinate out of range");
        return canonicalize(PreSpecialDatum{0, {}, {}});
    }
    return canonicalize(project(x.datum(), var));
}

SpecialVariety insert_free_coordinate(const SpecialVariety& x, int var) {
    const PreSpecialDatum& d = x.datum();
    if (var < 1 || var > d.n + 1) throw DomainError("coordinate out of range");
    auto up = [var](int i) { return i >= var ? i + 1 : i; };
    PreSpecialDatum out;
    out.n = d.n + 1;
    for (const auto& [i, c] : d.pi0) out.pi0.emplace(up(i), c);
    for (const auto& b : d.blocks) {
        Block nb;
        for (int i : b.indices) nb.indices.push_back(up(i));
        nb.base = up(b.base);
        for (const auto& [i, g] : b.gamma) nb.gamma.emplace(up(i), g);
        out.blocks.push_back(std::move(nb));
    }
    out.blocks.push_back(Block{{var}, var, {{var, PrimIntMat2::identity()}}});
    return canonicalize(out);
}

ConstructibleSet cylinder(const ConstructibleSet& s, int var) {
    ConstructibleSet out{s.arity + 1, {}};
    for (const auto& p : s.pieces) {
        Piece q{insert_free_coordinate(p.variety, var), {}};
        for (const auto& y : p.excluded) q.excluded.push_back(insert_free_coordinate(y, var));
        std::sort(q.excluded.begin(), q.excluded.end());
        out.pieces.push_back(std::move(q));
    }
    return out;
}

namespace {

// var lies in a block of size >= 2 or is constant: fibers are finite. The
// image is X' minus the points over which every fiber point is excluded.
// Strata: X' itself, images of non-dominant components of X over a stratum,
// and images of (uncovered component) meet Y. On the part of a stratum Z
// outside the strata below it, the answer is the generic one: excluded iff
// every component of X over Z that dominates Z lies in some Y.
std::vector<Piece> project_finite(const Piece& p, int var, const SetContext& ctx) {
    const SpecialVariety& x = p.variety;
    SpecialVariety root = drop_coordinate(x, var);
    if (p.excluded.empty()) return {Piece{root, {}}};
    std::map<SpecialVariety, bool> generic_excluded;
    std::deque<SpecialVariety> work{root};
    std::set<SpecialVariety> queued{root};
    auto push = [&](const SpecialVariety& z) {
        if (queued.insert(z).second) work.push_back(z);
    };
    while (!work.empty()) {
        SpecialVariety z = work.front();
        work.pop_front();
        bool all_covered = true;
        for (const auto& w : meet(x, insert_free_coordinate(z, var), ctx)) {
            SpecialVariety pw = drop_coordinate(w, var);
            if (!(pw == z)) {
                push(pw);
                continue;
            }
            if (covered(w, p.excluded)) continue;
            all_covered = false;
            for (const auto& y : p.excluded)
                for (const auto& c : meet(w, y, ctx)) push(drop_coordinate(c, var));
        }
        generic_excluded[z] = all_covered;
    }
    std::vector<Piece> out;
    for (const auto& [z, ex] : generic_excluded) {
        if (ex) continue;
        ComponentSet below;
        for (const auto& [w, wex] : generic_excluded)
            if (wex && !(w == z) && contains(z, w)) below.push_back(w);
        out.push_back({z, maximal(std::move(below))});
    }
    return out;
}

} // namespace

ConstructibleSet project_constructible(const ConstructibleSet& s, int var, const SetContext& ctx) {
    if (s.arity < 1) throw DomainError("nothing to project");
    if (var < 1 || var > s.arity) throw DomainError("coordinate out of range");
    ConstructibleSet out{s.arity - 1, {}};
    for (const auto& p : s.pieces) {
        const Block* b = p.variety.block_of(var);
        if (b && b->indices.size() == 1) {
            // whole-line fibers: only exclusions that are themselves cylinders
            // over var remove points from the image
            Piece q{drop_coordinate(p.variety, var), {}};
            for (const auto& y : p.excluded) {
                const Block* yb = y.block_of(var);
                if (yb && yb->indices.size() == 1) q.excluded.push_back(drop_coordinate(y, var));
            }
            out.pieces.push_back(std::move(q));
        } else {
            for (auto& q : project_finite(p, var, ctx)) out.pieces.push_back(std::move(q));
        }
    }
    return normalize(out, ctx);
}

bool contains_tuple(const ConstructibleSet& s, const std::vector<ConstantValue>& values) {
    for (const auto& p : s.pieces) {
        if (!contains_point(p.variety, values)) continue;
        bool excluded = false;
        for (const auto& y : p.excluded) excluded = excluded || contains_point(y, values);
        if (!excluded) return true;
    }
    return false;
}

json to_json(const ConstructibleSet& s) {
    json pieces = json::array();
    for (const auto& p : s.pieces) pieces.push_back({{"variety", to_json(p.variety)}, {"excluded", to_json(p.excluded)}});
    return {{"arity", s.arity}, {"pieces", pieces}};
}

} // namespace cmmod
