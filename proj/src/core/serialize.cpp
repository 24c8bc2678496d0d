#include "serialize.hpp"

#include "errors.hpp"

namespace cmmod {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError("bad JSON: " + what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int small_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(bigint_from_json(j));
    if (!j.is_string()) bad("matrix entry must be an integer or \"p/q\"");
    Rational r;
    if (r.set_str(j.get<std::string>(), 10) != 0) bad("unreadable rational \"" + j.get<std::string>() + "\"");
    if (r.get_den() == 0) bad("zero denominator");
    r.canonicalize();
    return r;
}

} // namespace

json to_json(const BigInt& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) != 0) bad("unreadable integer \"" + j.get<std::string>() + "\"");
        return v;
    }
    bad("expected an integer");
}

json to_json(const CMPointId& p) { return {{"d", to_json(p.disc)}, {"f", {to_json(p.a), to_json(p.b), to_json(p.c)}}}; }

json to_json(const ConstantValue& v) {
    if (const auto* p = std::get_if<CMPointId>(&v)) return {{"cm", to_json(*p)}};
    return {{"orb", to_json(std::get<OrbitPoint>(v).m.mat())}};
}

json to_json(const IntMat2& m) { return {{to_json(m.a), to_json(m.b)}, {to_json(m.c), to_json(m.d)}}; }

json to_json(const PreSpecialDatum& d) {
    json pi0 = json::object();
    for (const auto& [i, c] : d.pi0) pi0[std::to_string(i)] = to_json(c);
    json blocks = json::array();
    for (const auto& b : d.blocks) {
        json gamma = json::object();
        for (const auto& [i, g] : b.gamma) gamma[std::to_string(i)] = to_json(g.mat());
        blocks.push_back({{"indices", b.indices}, {"base", b.base}, {"gamma", gamma}});
    }
    return {{"n", d.n}, {"pi0", pi0}, {"blocks", blocks}};
}

json to_json(const SpecialVariety& x) { return to_json(x.datum()); }

json to_json(const ComponentSet& cs) {
    json out = json::array();
    for (const auto& x : cs) out.push_back(to_json(x));
    return out;
}

json to_json(const EquationSystem& s) {
    json atoms = json::array();
    for (const auto& a : s.atoms) {
        if (const auto* p = std::get_if<PhiEq>(&a))
            atoms.push_back({{"phi", p->l}, {"i", p->i}, {"j", p->j}});
        else
            atoms.push_back({{"const", to_json(std::get<ConstEq>(a).value)}, {"i", std::get<ConstEq>(a).i}});
    }
    return {{"n", s.n}, {"atoms", atoms}};
}

CMPointId cm_point_from_json(const json& j) {
    const json& f = field(j, "f");
    if (!f.is_array() || f.size() != 3) bad("\"f\" must be [a, b, c]");
    CMPointId p{bigint_from_json(field(j, "d")), bigint_from_json(f[0]), bigint_from_json(f[1]),
                bigint_from_json(f[2])};
    if (p.b * p.b - 4 * p.a * p.c != p.disc) bad("form does not have the stated discriminant");
    if (p.disc >= 0 || p.a <= 0) bad("not a positive definite form");
    return cm_id_of(p.point());
}

ConstantValue constant_from_json(const json& j) {
    if (j.is_object() && j.contains("cm")) return cm_point_from_json(j.at("cm"));
    if (j.is_object() && j.contains("orb")) return OrbitPoint{coset_of(prim_matrix_from_json(j.at("orb")).mat())};
    bad("constant must be {\"cm\": ...} or {\"orb\": ...}");
}

PrimIntMat2 prim_matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        bad("matrix must be [[a,b],[c,d]]");
    try {
        RatMat2 m(rational_from_json(j[0][0]), rational_from_json(j[0][1]), rational_from_json(j[1][0]),
                  rational_from_json(j[1][1]));
        return primitive_integral_form(m).first;
    } catch (const DomainError& e) {
        bad(e.what());
    }
}

PreSpecialDatum datum_from_json(const json& j) {
    PreSpecialDatum d;
    d.n = small_int(field(j, "n"), "\"n\"");
    if (j.contains("pi0")) {
        const json& pi0 = j.at("pi0");
        if (!pi0.is_object()) bad("\"pi0\" must be an object");
        for (const auto& [k, v] : pi0.items()) {
            int i;
            try {
                i = std::stoi(k);
            } catch (const std::exception&) {
                bad("pi0 key \"" + k + "\" is not an index");
            }
            d.pi0.emplace(i, constant_from_json(v));
        }
    }
    if (j.contains("blocks")) {
        const json& blocks = j.at("blocks");
        if (!blocks.is_array()) bad("\"blocks\" must be an array");
        for (const auto& bj : blocks) {
            Block b;
            const json& idx = field(bj, "indices");
            if (!idx.is_array()) bad("\"indices\" must be an array");
            for (const auto& i : idx) b.indices.push_back(small_int(i, "block index"));
            std::sort(b.indices.begin(), b.indices.end());
            b.base = bj.contains("base") ? small_int(bj.at("base"), "\"base\"")
                                         : (b.indices.empty() ? 0 : b.indices.front());
            if (bj.contains("gamma")) {
                if (!bj.at("gamma").is_object()) bad("\"gamma\" must be an object");
                for (const auto& [k, v] : bj.at("gamma").items()) {
                    int i;
                    try {
                        i = std::stoi(k);
                    } catch (const std::exception&) {
                        bad("gamma key \"" + k + "\" is not an index");
                    }
                    b.gamma.emplace(i, prim_matrix_from_json(v));
                }
            }
            // omitted gamma entries default to the identity
            for (int i : b.indices) b.gamma.emplace(i, PrimIntMat2::identity());
            d.blocks.push_back(std::move(b));
        }
    }
    return d;
}

EquationSystem system_from_json(const json& j) {
    EquationSystem s;
    s.n = small_int(field(j, "n"), "\"n\"");
    const json& atoms = field(j, "atoms");
    if (!atoms.is_array()) bad("\"atoms\" must be an array");
    for (const auto& a : atoms) {
        if (a.contains("phi"))
            s.atoms.push_back(PhiEq{small_int(a.at("phi"), "level"), small_int(field(a, "i"), "\"i\""),
                                    small_int(field(a, "j"), "\"j\"")});
        else if (a.contains("const"))
            s.atoms.push_back(ConstEq{small_int(field(a, "i"), "\"i\""), constant_from_json(a.at("const"))});
        else
            bad("atom must have \"phi\" or \"const\"");
    }
    return s;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

} // namespace cmmod
