#include "special.hpp"

#include "errors.hpp"
#include "modpoly.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

namespace cmmod {

namespace {

using Tuple = std::vector<HeckeRep>;

struct OrbitData {
    Tuple canonical;
    std::shared_ptr<const std::vector<Tuple>> members;
};

std::mutex orbit_mutex;
std::map<Tuple, OrbitData> orbit_memo; // every member of a computed orbit is a key

constexpr size_t orbit_cap = 500000;

// Orbit of a coset tuple under the simultaneous right action of SL2(Z),
// generated by S and T. Finite because each coset has a finite orbit.
const OrbitData& orbit_of(const Tuple& t) {
    std::lock_guard<std::mutex> lock(orbit_mutex);
    auto it = orbit_memo.find(t);
    if (it != orbit_memo.end()) return it->second;
    std::set<Tuple> seen{t};
    std::deque<Tuple> queue{t};
    while (!queue.empty()) {
        Tuple cur = std::move(queue.front());
        queue.pop_front();
        Tuple s = cur, tt = cur;
        for (auto& h : s) h = right_S(h);
        for (auto& h : tt) h = right_T(h);
        for (Tuple* nb : {&s, &tt})
            if (seen.insert(*nb).second) queue.push_back(*nb);
        if (seen.size() > orbit_cap) throw ResourceError("coset orbit larger than the configured cap");
    }
    auto members = std::make_shared<const std::vector<Tuple>>(seen.begin(), seen.end());
    OrbitData data{*seen.begin(), members};
    for (const auto& m : *members) orbit_memo.emplace(m, data);
    return orbit_memo.at(t);
}

HeckeRep relative(const PrimIntMat2& x, const PrimIntMat2& y) { return coset_of(x.mat() * y.mat().adj()); }

// Coset tuple of the block restricted to idx (sorted), rerooted at idx[0].
Tuple rooted_tuple(const Block& b, const std::vector<int>& idx) {
    Tuple t;
    const PrimIntMat2& root = b.gamma.at(idx.front());
    for (int k : idx) t.push_back(relative(b.gamma.at(k), root));
    return t;
}

Block block_from_tuple(const std::vector<int>& idx, const Tuple& t) {
    Block b;
    b.indices = idx;
    b.base = idx.front();
    for (size_t p = 0; p < idx.size(); ++p) b.gamma.emplace(idx[p], t[p].prim());
    return b;
}

Block canonical_block(const Block& b) {
    std::vector<int> idx = b.indices;
    std::sort(idx.begin(), idx.end());
    return block_from_tuple(idx, orbit_of(rooted_tuple(b, idx)).canonical);
}

ConstantValue normalize_constant(const ConstantValue& c) {
    if (const auto* p = std::get_if<CMPointId>(&c)) {
        if (p->b * p->b - 4 * p->a * p->c != p->disc)
            throw DomainError("CM constant with inconsistent discriminant");
        return cm_id_of(p->point());
    }
    return c;
}

// Does (values[k])_k lie on the curve of block b? b must be canonical.
bool point_in_block(const Block& b, const std::map<int, ConstantValue>& values) {
    const auto& orbit = *orbit_of(rooted_tuple(b, b.indices)).members;
    const ConstantValue& zb = values.at(b.indices.front());
    for (const auto& u : orbit) {
        bool ok = true;
        for (size_t p = 1; p < b.indices.size() && ok; ++p)
            ok = act_on(u[p].mat(), zb) == values.at(b.indices[p]);
        if (ok) return true;
    }
    return false;
}

std::string idx_str(int i) { return std::to_string(i); }

} // namespace

std::optional<std::string> validate(const PreSpecialDatum& d) {
    if (d.n < 0) return "negative arity";
    std::vector<int> seen(static_cast<size_t>(d.n) + 1, 0);
    auto mark = [&](int i) -> std::optional<std::string> {
        if (i < 1 || i > d.n) return "index " + idx_str(i) + " out of range";
        if (seen[static_cast<size_t>(i)]++) return "index " + idx_str(i) + " assigned twice";
        return std::nullopt;
    };
    for (const auto& [i, c] : d.pi0) {
        if (auto e = mark(i)) return e;
        if (const auto* p = std::get_if<CMPointId>(&c)) {
            if (p->disc >= 0 || p->b * p->b - 4 * p->a * p->c != p->disc)
                return "constant at index " + idx_str(i) + " is not a CM form of its discriminant";
        }
    }
    for (const auto& b : d.blocks) {
        if (b.indices.empty()) return std::string("empty block");
        for (int i : b.indices)
            if (auto e = mark(i)) return e;
        if (std::find(b.indices.begin(), b.indices.end(), b.base) == b.indices.end())
            return "base " + idx_str(b.base) + " not in its block";
        for (int i : b.indices)
            if (!b.gamma.count(i)) return "index " + idx_str(i) + " of a block has no gamma";
        for (const auto& [i, g] : b.gamma)
            if (std::find(b.indices.begin(), b.indices.end(), i) == b.indices.end())
                return "gamma given for index " + idx_str(i) + " outside its block";
        if (b.gamma.at(b.base).mat() != IntMat2::identity())
            return "gamma of the base index " + idx_str(b.base) + " is not the identity";
    }
    for (int i = 1; i <= d.n; ++i)
        if (!seen[static_cast<size_t>(i)]) return "index " + idx_str(i) + " not assigned";
    return std::nullopt;
}

VarietyKind SpecialVariety::kind() const {
    for (const auto& [i, c] : d_.pi0)
        if (!is_cm(c)) return VarietyKind::weakly_special;
    return VarietyKind::special;
}

const Block* SpecialVariety::block_of(int i) const {
    for (const auto& b : d_.blocks)
        if (std::binary_search(b.indices.begin(), b.indices.end(), i)) return &b;
    return nullptr;
}

const ConstantValue* SpecialVariety::constant_at(int i) const {
    auto it = d_.pi0.find(i);
    return it == d_.pi0.end() ? nullptr : &it->second;
}

SpecialVariety canonicalize(const PreSpecialDatum& d) {
    if (auto e = validate(d)) throw DomainError("invalid datum: " + *e);
    SpecialVariety v;
    v.d_.n = d.n;
    for (const auto& [i, c] : d.pi0) v.d_.pi0.emplace(i, normalize_constant(c));
    for (const auto& b : d.blocks) v.d_.blocks.push_back(canonical_block(b));
    std::sort(v.d_.blocks.begin(), v.d_.blocks.end(),
              [](const Block& x, const Block& y) { return x.indices.front() < y.indices.front(); });
    return v;
}

SpecialVariety full_space(int n) {
    PreSpecialDatum d;
    d.n = n;
    for (int i = 1; i <= n; ++i) d.blocks.push_back(Block{{i}, i, {{i, PrimIntMat2::identity()}}});
    return canonicalize(d);
}

SpecialVariety point_variety(const std::vector<ConstantValue>& values) {
    PreSpecialDatum d;
    d.n = static_cast<int>(values.size());
    for (int i = 1; i <= d.n; ++i) d.pi0.emplace(i, values[static_cast<size_t>(i - 1)]);
    return canonicalize(d);
}

EquationSystem equations_of(const PreSpecialDatum& d) {
    if (auto e = validate(d)) throw DomainError("invalid datum: " + *e);
    EquationSystem s;
    s.n = d.n;
    for (const auto& [i, c] : d.pi0) s.atoms.push_back(ConstEq{i, c});
    for (const auto& b : d.blocks) {
        std::vector<int> idx = b.indices;
        std::sort(idx.begin(), idx.end());
        for (size_t p = 0; p < idx.size(); ++p)
            for (size_t q = p + 1; q < idx.size(); ++q) {
                BigInt l = level(b.gamma.at(idx[q]).mat() * b.gamma.at(idx[p]).mat().adj());
                s.atoms.push_back(PhiEq{l.get_si(), idx[p], idx[q]});
            }
    }
    return s;
}

BigComplex orbit_base_tau(int precision_bits) {
    mpfr_prec_t p = precision_bits + 16;
    BigFloat re = BigFloat::pi(p) - BigFloat(3, p);
    BigFloat e(p);
    BigFloat one(1, p);
    mpfr_exp(e.get(), one.get(), MPFR_RNDN);
    return {re, e / BigFloat(2, p)};
}

namespace {

BigComplex mobius(const IntMat2& g, const BigComplex& tau) {
    mpfr_prec_t p = tau.prec();
    return (BigComplex(g.a, p) * tau + BigComplex(g.b, p)) / (BigComplex(g.c, p) * tau + BigComplex(g.d, p));
}

} // namespace

BigComplex constant_numeric(const ConstantValue& c, int precision_bits) {
    if (const auto* p = std::get_if<CMPointId>(&c)) return j_numeric(p->point(), precision_bits);
    const HeckeRep& m = std::get<OrbitPoint>(c).m;
    return j_numeric(mobius(m.mat(), orbit_base_tau(precision_bits)), precision_bits);
}

std::vector<BigComplex> parameterize_numeric(const PreSpecialDatum& d, const std::map<int, BigComplex>& sample,
                                             int precision_bits) {
    if (auto e = validate(d)) throw DomainError("invalid datum: " + *e);
    std::vector<BigComplex> out(static_cast<size_t>(d.n), BigComplex(precision_bits));
    for (const auto& [i, c] : d.pi0) out[static_cast<size_t>(i - 1)] = constant_numeric(c, precision_bits);
    for (const auto& b : d.blocks) {
        auto it = sample.find(b.base);
        if (it == sample.end()) throw DomainError("no sample point for the block based at " + idx_str(b.base));
        BigComplex tau = it->second.with_prec(precision_bits + 32);
        for (int k : b.indices)
            out[static_cast<size_t>(k - 1)] = j_numeric(mobius(b.gamma.at(k).mat(), tau), precision_bits);
    }
    return out;
}

PreSpecialDatum project(const PreSpecialDatum& d, int drop) {
    if (auto e = validate(d)) throw DomainError("invalid datum: " + *e);
    if (d.n <= 1) throw DomainError("projection needs arity > 1; decide emptiness of an arity-1 set instead");
    if (drop < 1 || drop > d.n) throw DomainError("coordinate " + idx_str(drop) + " out of range");
    PreSpecialDatum out;
    out.n = d.n - 1;
    auto renum = [drop](int i) { return i > drop ? i - 1 : i; };
    for (const auto& [i, c] : d.pi0)
        if (i != drop) out.pi0.emplace(renum(i), c);
    for (const auto& b : d.blocks) {
        bool has = std::find(b.indices.begin(), b.indices.end(), drop) != b.indices.end();
        if (has && b.indices.size() == 1) continue; // a free coordinate disappears
        Block nb;
        int base = b.base;
        if (base == drop) {
            // reroot at the least remaining index
            base = std::numeric_limits<int>::max();
            for (int i : b.indices)
                if (i != drop) base = std::min(base, i);
        }
        const PrimIntMat2& root = b.gamma.at(base);
        for (int i : b.indices) {
            if (i == drop) continue;
            nb.indices.push_back(renum(i));
            nb.gamma.emplace(renum(i), PrimIntMat2::primitive_part(b.gamma.at(i).mat() * root.mat().adj()));
        }
        std::sort(nb.indices.begin(), nb.indices.end());
        nb.base = renum(base);
        out.blocks.push_back(std::move(nb));
    }
    return out;
}

bool equal(const SpecialVariety& x, const SpecialVariety& y) { return x == y; }

bool contains(const SpecialVariety& x, const SpecialVariety& y) {
    if (x.arity() != y.arity()) throw DomainError("arity mismatch");
    for (const auto& [i, c] : x.datum().pi0) {
        const ConstantValue* yc = y.constant_at(i);
        if (!yc || !(*yc == c)) return false;
    }
    for (const auto& b : x.datum().blocks) {
        if (b.indices.size() == 1) continue;
        bool all_const = true;
        for (int i : b.indices) all_const = all_const && y.constant_at(i);
        if (all_const) {
            std::map<int, ConstantValue> vals;
            for (int i : b.indices) vals.emplace(i, *y.constant_at(i));
            if (!point_in_block(b, vals)) return false;
            continue;
        }
        const Block* yb = y.block_of(b.indices.front());
        if (!yb) return false;
        for (int i : b.indices)
            if (y.block_of(i) != yb) return false;
        Tuple restricted = orbit_of(rooted_tuple(*yb, b.indices)).canonical;
        if (restricted != rooted_tuple(b, b.indices)) return false;
    }
    return true;
}

bool contains_point(const SpecialVariety& x, const std::vector<ConstantValue>& values) {
    if (static_cast<int>(values.size()) != x.arity()) throw DomainError("arity mismatch");
    std::map<int, ConstantValue> vals;
    for (int i = 1; i <= x.arity(); ++i) vals.emplace(i, normalize_constant(values[static_cast<size_t>(i - 1)]));
    for (const auto& [i, c] : x.datum().pi0)
        if (!(vals.at(i) == c)) return false;
    for (const auto& b : x.datum().blocks)
        if (b.indices.size() > 1 && !point_in_block(b, vals)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Components of constraint systems.

namespace {

struct PhiC {
    std::int64_t l;
    int i, j;
};
struct ConstC {
    int i;
    ConstantValue v;
};
struct BlockC {
    Block block; // canonical, at least two indices
};
using Constraint = std::variant<PhiC, ConstC, BlockC>;

std::vector<int> vertices_of(const Constraint& c) {
    if (const auto* p = std::get_if<PhiC>(&c)) return {p->i, p->j};
    if (const auto* k = std::get_if<ConstC>(&c)) return {k->i};
    return std::get<BlockC>(c).block.indices;
}

struct Edge {
    int u, v;
    std::int64_t level;
};

using Assignment = std::map<int, ConstantValue>;

// Either a point (values on the piece) or a curve (one block on the piece).
struct PieceComp {
    Assignment point;
    std::optional<Block> curve;
};

struct Tree {
    std::vector<int> order;                       // insertion order, root first
    std::map<int, std::pair<int, std::int64_t>> parent; // vertex -> (parent, level)
};

class PieceSolver {
public:
    PieceSolver(std::vector<int> verts, std::vector<Constraint> cs, const Limits& lim)
        : verts_(std::move(verts)), cs_(std::move(cs)), lim_(lim) {
        for (const auto& c : cs_) {
            if (const auto* p = std::get_if<PhiC>(&c)) {
                if (p->i != p->j) edges_.push_back({p->i, p->j, p->l});
            } else if (const auto* b = std::get_if<BlockC>(&c)) {
                const auto& idx = b->block.indices;
                for (size_t x = 0; x < idx.size(); ++x)
                    for (size_t y = x + 1; y < idx.size(); ++y) {
                        BigInt l = level(b->block.gamma.at(idx[y]).mat() * b->block.gamma.at(idx[x]).mat().adj());
                        edges_.push_back({idx[x], idx[y], l.get_si()});
                    }
            }
        }
    }

    std::vector<PieceComp> solve() {
        for (const auto& c : cs_)
            if (const auto* k = std::get_if<ConstC>(&c)) {
                std::vector<PieceComp> out;
                for (auto& a : solve_seeded(k->i, k->v)) out.push_back({std::move(a), std::nullopt});
                return out;
            }
        return solve_generic();
    }

private:
    // Spanning tree grown by cheapest edge first, so branching stays small.
    Tree tree_from(int root) const {
        Tree t;
        std::set<int> seen{root};
        t.order.push_back(root);
        for (;;) {
            const Edge* best = nullptr;
            int from = 0, to = 0;
            for (const auto& e : edges_) {
                bool in_u = seen.count(e.u) > 0, in_v = seen.count(e.v) > 0;
                if (in_u == in_v) continue;
                if (!best || e.level < best->level) {
                    best = &e;
                    from = in_u ? e.u : e.v;
                    to = in_u ? e.v : e.u;
                }
            }
            if (!best) break;
            seen.insert(to);
            t.parent[to] = {from, best->level};
            t.order.push_back(to);
        }
        return t;
    }

    // Constraints grouped by the tree position at which they become checkable.
    std::vector<std::vector<const Constraint*>> schedule(const Tree& t) const {
        std::map<int, size_t> pos;
        for (size_t p = 0; p < t.order.size(); ++p) pos[t.order[p]] = p;
        std::vector<std::vector<const Constraint*>> at(t.order.size());
        for (const auto& c : cs_) {
            size_t m = 0;
            for (int v : vertices_of(c)) m = std::max(m, pos.at(v));
            at[m].push_back(&c);
        }
        return at;
    }

    void tick() {
        if (++work_ > lim_.branch_cap) throw ResourceError("component enumeration exceeded the branch cap");
    }

    static bool holds_exactly(const Constraint& c, const Assignment& a) {
        if (const auto* p = std::get_if<PhiC>(&c)) return phi_holds(p->l, a.at(p->i), a.at(p->j));
        if (const auto* k = std::get_if<ConstC>(&c)) return a.at(k->i) == k->v;
        return point_in_block(std::get<BlockC>(c).block, a);
    }

    std::vector<Assignment> solve_seeded(int seed, const ConstantValue& value) {
        Tree t = tree_from(seed);
        auto at = schedule(t);
        std::vector<Assignment> out;
        Assignment a;
        std::function<void(size_t)> rec = [&](size_t pos) {
            if (pos == t.order.size()) {
                out.push_back(a);
                return;
            }
            int v = t.order[pos];
            std::vector<ConstantValue> cands;
            if (pos == 0) {
                cands.push_back(value);
            } else {
                auto [par, l] = t.parent.at(v);
                cands = hecke_images(l, a.at(par));
            }
            for (const auto& c : cands) {
                tick();
                a[v] = c;
                bool ok = true;
                for (const Constraint* k : at[pos])
                    if (!holds_exactly(*k, a)) {
                        ok = false;
                        break;
                    }
                if (ok) rec(pos + 1);
            }
            a.erase(v);
        };
        rec(0);
        return out;
    }

    // Discriminants of fixed points of primitive integral matrices whose
    // determinant divides n by a square: D f^2 = t^2 - 4 n.
    static std::set<long> fixed_point_discs(std::int64_t n) {
        std::set<long> out;
        for (long t = 0; t * t < 4 * n; ++t) {
            long m = 4 * n - t * t;
            for (long f = 1; f * f <= m; ++f) {
                if (m % (f * f) != 0) continue;
                long d = -(m / (f * f));
                long r = ((d % 4) + 4) % 4;
                if (d <= -3 && (r == 0 || r == 1)) out.insert(d);
            }
        }
        return out;
    }

    std::vector<PieceComp> solve_generic() {
        int root = verts_.front();
        Tree t = tree_from(root);
        auto at = schedule(t);
        std::set<Tuple> curves; // canonical tuples over t.order sorted
        std::set<std::pair<int, std::int64_t>> candidates; // (vertex, N)
        std::map<int, HeckeRep> g;
        std::vector<int> sorted = verts_;
        std::sort(sorted.begin(), sorted.end());

        // Returns false and records candidates when c fails identically.
        auto generic_check = [&](const Constraint& c) -> bool {
            if (const auto* p = std::get_if<PhiC>(&c)) {
                if (p->i == p->j) {
                    if (p->l == 1) return true;
                    candidates.insert({p->i, p->l});
                    return false;
                }
                BigInt k = level(g.at(p->j).mat() * g.at(p->i).mat().adj());
                if (k == p->l) return true;
                candidates.insert({p->i, k.get_si() * p->l});
                return false;
            }
            const Block& b = std::get<BlockC>(c).block;
            Tuple mine;
            int vi = b.indices.front();
            for (int k : b.indices) mine.push_back(coset_of(g.at(k).mat() * g.at(vi).mat().adj()));
            if (orbit_of(mine).canonical == rooted_tuple(b, b.indices)) return true;
            for (size_t p = 1; p < b.indices.size(); ++p) {
                std::int64_t n = mine[p].level() * b.gamma.at(b.indices[p]).det().get_si();
                candidates.insert({vi, n});
            }
            return false;
        };

        std::function<void(size_t)> rec = [&](size_t pos) {
            if (pos == t.order.size()) {
                Block b;
                b.indices = sorted;
                b.base = root;
                for (int v : sorted) b.gamma.emplace(v, g.at(v).prim());
                curves.insert(rooted_tuple(canonical_block(b), sorted));
                return;
            }
            int v = t.order[pos];
            std::vector<HeckeRep> cands;
            if (pos == 0) {
                cands.push_back(HeckeRep{});
            } else {
                auto [par, l] = t.parent.at(v);
                for (const auto& h : hecke_representatives(l)) cands.push_back(coset_of(h.mat() * g.at(par).mat()));
            }
            for (const auto& h : cands) {
                tick();
                g[v] = h;
                bool ok = true;
                for (const Constraint* k : at[pos])
                    if (!generic_check(*k)) {
                        ok = false;
                        break;
                    }
                if (ok) rec(pos + 1);
            }
            g.erase(v);
        };
        rec(0);

        std::vector<PieceComp> out;
        std::vector<Block> curve_blocks;
        for (const auto& c : curves) {
            curve_blocks.push_back(block_from_tuple(sorted, c));
            out.push_back({{}, curve_blocks.back()});
        }
        std::set<Assignment> points;
        std::set<std::pair<int, long>> done;
        for (const auto& [v, n] : candidates)
            for (long d : fixed_point_discs(n)) {
                if (!done.insert({v, d}).second) continue;
                for (const auto& p : cm_points_of_disc(d))
                    for (auto& a : solve_seeded(v, p)) points.insert(std::move(a));
            }
        for (const auto& p : points) {
            bool on_curve = false;
            for (const auto& b : curve_blocks) on_curve = on_curve || point_in_block(b, p);
            if (!on_curve) out.push_back({p, std::nullopt});
        }
        return out;
    }

    std::vector<int> verts_;
    std::vector<Constraint> cs_;
    std::vector<Edge> edges_;
    const Limits& lim_;
    long work_ = 0;
};

ComponentSet solve_constraints(int n, const std::vector<Constraint>& cs, const Limits& lim) {
    if (n > lim.nmax)
        throw ResourceError("arity " + idx_str(n) + " exceeds the configured nmax = " + idx_str(lim.nmax));
    std::vector<int> parent(static_cast<size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
    };
    for (const auto& c : cs) {
        auto vs = vertices_of(c);
        for (int v : vs) parent[static_cast<size_t>(find(v))] = find(vs.front());
    }
    std::map<int, std::vector<int>> pieces;
    for (int i = 1; i <= n; ++i) pieces[find(i)].push_back(i);
    std::map<int, std::vector<Constraint>> piece_cs;
    for (const auto& c : cs) piece_cs[find(vertices_of(c).front())].push_back(c);

    std::vector<std::vector<PieceComp>> per_piece;
    double combos = 1;
    for (auto& [r, verts] : pieces) {
        PieceSolver solver(verts, piece_cs[r], lim);
        auto comps = solver.solve();
        if (comps.empty()) return {};
        combos *= static_cast<double>(comps.size());
        if (combos > static_cast<double>(lim.branch_cap))
            throw ResourceError("component product exceeded the branch cap");
        per_piece.push_back(std::move(comps));
    }

    std::set<SpecialVariety> out;
    std::vector<size_t> choice(per_piece.size(), 0);
    for (;;) {
        PreSpecialDatum d;
        d.n = n;
        for (size_t p = 0; p < per_piece.size(); ++p) {
            const PieceComp& c = per_piece[p][choice[p]];
            if (c.curve)
                d.blocks.push_back(*c.curve);
            else
                for (const auto& [i, v] : c.point) d.pi0.emplace(i, v);
        }
        out.insert(canonicalize(d));
        size_t p = 0;
        while (p < choice.size() && ++choice[p] == per_piece[p].size()) choice[p++] = 0;
        if (p == choice.size()) break;
    }
    return ComponentSet(out.begin(), out.end());
}

void add_variety_constraints(const SpecialVariety& x, std::vector<Constraint>& cs) {
    for (const auto& [i, c] : x.datum().pi0) cs.push_back(ConstC{i, c});
    for (const auto& b : x.datum().blocks)
        if (b.indices.size() > 1) cs.push_back(BlockC{b});
}

} // namespace

ComponentSet components_of(const EquationSystem& s, const Limits& limits) {
    std::vector<Constraint> cs;
    for (const auto& a : s.atoms) {
        if (const auto* p = std::get_if<PhiEq>(&a)) {
            if (p->l < 1) throw DomainError("level must be positive");
            if (p->l > limits.lmax)
                throw ResourceError("level " + std::to_string(p->l) + " exceeds the configured lmax = " +
                                    std::to_string(limits.lmax));
            if (p->i < 1 || p->i > s.n || p->j < 1 || p->j > s.n) throw DomainError("atom index out of range");
            cs.push_back(PhiC{p->l, p->i, p->j});
        } else {
            const auto& k = std::get<ConstEq>(a);
            if (k.i < 1 || k.i > s.n) throw DomainError("atom index out of range");
            cs.push_back(ConstC{k.i, normalize_constant(k.value)});
        }
    }
    return solve_constraints(s.n, cs, limits);
}

ComponentSet intersect(const SpecialVariety& x, const SpecialVariety& y, const Limits& limits) {
    if (x.arity() != y.arity()) throw DomainError("arity mismatch");
    if (x == y) return {x};
    std::vector<Constraint> cs;
    add_variety_constraints(x, cs);
    add_variety_constraints(y, cs);
    return solve_constraints(x.arity(), cs, limits);
}

} // namespace cmmod
