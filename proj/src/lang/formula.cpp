#include "formula.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace cmmod {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr bare(FormulaKind k) {
    Formula f;
    f.kind = k;
    return make(std::move(f));
}

} // namespace

FormulaPtr f_true() { return bare(FormulaKind::truth); }
FormulaPtr f_false() { return bare(FormulaKind::falsity); }

FormulaPtr f_phi(std::int64_t l, Term a, Term b) {
    Formula f;
    f.kind = FormulaKind::phi;
    f.level = l;
    f.terms = {std::move(a), std::move(b)};
    return make(std::move(f));
}

FormulaPtr f_eq(Term a, Term b) {
    Formula f;
    f.kind = FormulaKind::eq;
    f.terms = {std::move(a), std::move(b)};
    return make(std::move(f));
}

FormulaPtr f_component(const SpecialVariety& x, std::vector<Term> terms) {
    if (static_cast<int>(terms.size()) != x.arity()) throw DomainError("component atom arity mismatch");
    Formula f;
    f.kind = FormulaKind::component;
    f.variety = x;
    f.terms = std::move(terms);
    return make(std::move(f));
}

FormulaPtr f_not(FormulaPtr a) {
    Formula f;
    f.kind = FormulaKind::negation;
    f.args = {std::move(a)};
    return make(std::move(f));
}

namespace {

FormulaPtr junction(FormulaKind kind, std::vector<FormulaPtr> args) {
    std::vector<FormulaPtr> flat;
    for (auto& a : args) {
        if (a->kind == kind)
            flat.insert(flat.end(), a->args.begin(), a->args.end());
        else
            flat.push_back(std::move(a));
    }
    if (flat.empty()) return kind == FormulaKind::conjunction ? f_true() : f_false();
    if (flat.size() == 1) return flat.front();
    Formula f;
    f.kind = kind;
    f.args = std::move(flat);
    return make(std::move(f));
}

} // namespace

FormulaPtr f_and(std::vector<FormulaPtr> args) { return junction(FormulaKind::conjunction, std::move(args)); }
FormulaPtr f_or(std::vector<FormulaPtr> args) { return junction(FormulaKind::disjunction, std::move(args)); }

FormulaPtr f_exists(int var, FormulaPtr body) {
    Formula f;
    f.kind = FormulaKind::exists;
    f.var = var;
    f.args = {std::move(body)};
    return make(std::move(f));
}

FormulaPtr f_forall(int var, FormulaPtr body) {
    Formula f;
    f.kind = FormulaKind::forall;
    f.var = var;
    f.args = {std::move(body)};
    return make(std::move(f));
}

bool is_quantifier_free(const Formula& f) {
    if (f.kind == FormulaKind::exists || f.kind == FormulaKind::forall) return false;
    return std::all_of(f.args.begin(), f.args.end(), [](const FormulaPtr& a) { return is_quantifier_free(*a); });
}

std::set<int> free_vars(const Formula& f) {
    std::set<int> out;
    for (const auto& t : f.terms)
        if (t.is_var()) out.insert(t.var);
    for (const auto& a : f.args) {
        auto s = free_vars(*a);
        out.insert(s.begin(), s.end());
    }
    if (f.kind == FormulaKind::exists || f.kind == FormulaKind::forall) out.erase(f.var);
    return out;
}

int max_var(const Formula& f) {
    int m = f.var;
    for (const auto& t : f.terms) m = std::max(m, t.var);
    for (const auto& a : f.args) m = std::max(m, max_var(*a));
    return m;
}

bool same_formula(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.level != b.level || a.var != b.var || !(a.terms == b.terms) ||
        a.variety != b.variety || a.args.size() != b.args.size())
        return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!same_formula(*a.args[i], *b.args[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string render_term(const Term& t) { return t.is_var() ? "x" + std::to_string(t.var) : to_string(*t.constant); }

std::string render_matrix(const IntMat2& m) {
    std::ostringstream os;
    os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
    return os.str();
}

std::string render_datum(const PreSpecialDatum& d) {
    // items in order of their least index
    std::map<int, std::string> items;
    for (const auto& [i, c] : d.pi0) items[i] = std::to_string(i) + "=" + to_string(c);
    for (const auto& b : d.blocks) {
        std::string s = "{";
        for (size_t k = 0; k < b.indices.size(); ++k) {
            int i = b.indices[k];
            if (k) s += ",";
            s += std::to_string(i);
            const IntMat2& g = b.gamma.at(i).mat();
            if (i != b.base || g != IntMat2::identity()) s += ":" + render_matrix(g);
        }
        items[b.indices.front()] = s + "}";
    }
    std::string out;
    for (const auto& [i, s] : items) out += (out.empty() ? "" : ";") + s;
    return out;
}

int precedence(FormulaKind k) {
    switch (k) {
    case FormulaKind::exists:
    case FormulaKind::forall: return 0;
    case FormulaKind::disjunction: return 1;
    case FormulaKind::conjunction: return 2;
    case FormulaKind::negation: return 3;
    default: return 4;
    }
}

std::string render_at(const Formula& f, int ctx) {
    std::string s;
    switch (f.kind) {
    case FormulaKind::truth: s = "true"; break;
    case FormulaKind::falsity: s = "false"; break;
    case FormulaKind::phi:
        s = "Phi[" + std::to_string(f.level) + "](" + render_term(f.terms[0]) + "," + render_term(f.terms[1]) + ")=0";
        break;
    case FormulaKind::eq: s = render_term(f.terms[0]) + " = " + render_term(f.terms[1]); break;
    case FormulaKind::component: {
        s = "Sp(" + render_datum(f.variety->datum()) + ")(";
        for (size_t i = 0; i < f.terms.size(); ++i) s += (i ? "," : "") + render_term(f.terms[i]);
        s += ")";
        break;
    }
    case FormulaKind::negation: s = "!" + render_at(*f.args[0], 3); break;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction: {
        int p = precedence(f.kind);
        const char* op = f.kind == FormulaKind::conjunction ? " & " : " | ";
        for (size_t i = 0; i < f.args.size(); ++i) s += (i ? op : "") + render_at(*f.args[i], p + 1);
        break;
    }
    case FormulaKind::exists:
    case FormulaKind::forall:
        s = std::string(f.kind == FormulaKind::exists ? "exists" : "forall") + " x" + std::to_string(f.var) + ". " +
            render_at(*f.args[0], 0);
        break;
    }
    return precedence(f.kind) < ctx ? "(" + s + ")" : s;
}

} // namespace

std::string render(const Formula& f) { return render_at(f, 0); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { ident, number, punct, end };

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::ident, src.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            size_t j = i + 1;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::number, src.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (std::string("().,;=&|![]{}:").find(c) != std::string::npos) {
            out.push_back({Tok::punct, std::string(1, c), l, cl});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const Limits& limits) : toks_(lex(text)), limits_(limits) {}

    FormulaPtr parse() {
        auto f = formula();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after formula");
        return f;
    }

    ConstantValue parse_constant() {
        auto c = constant();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after constant");
        return c;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(const std::string& s) const { return peek().kind != Tok::end && peek().text == s; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.kind == Tok::end ? msg + " (end of input)" : msg, t.line, t.column);
    }

    void expect(const std::string& s) {
        if (!at(s)) fail("expected '" + s + "'" + (peek().kind == Tok::end ? "" : ", found '" + peek().text + "'"));
        take();
    }

    BigInt integer() {
        if (peek().kind != Tok::number) fail("expected an integer");
        return BigInt(take().text);
    }

    int small_nat(const char* what) {
        if (peek().kind != Tok::number) fail(std::string("expected ") + what);
        const Token& t = peek();
        if (t.text.size() > 6 || t.text[0] == '-' || std::stoi(t.text) < 1) fail(std::string("expected ") + what);
        return std::stoi(take().text);
    }

    int variable() {
        if (peek().kind != Tok::ident || peek().text.size() < 2 || peek().text[0] != 'x' ||
            !std::all_of(peek().text.begin() + 1, peek().text.end(), [](char c) { return std::isdigit(c); }) ||
            peek().text.size() > 7 || peek().text[1] == '0')
            fail("expected a variable x1, x2, ...");
        return std::stoi(take().text.substr(1));
    }

    FormulaPtr formula() {
        if (at("exists") || at("forall")) {
            bool ex = take().text == "exists";
            int v = variable();
            expect(".");
            auto body = formula();
            return ex ? f_exists(v, body) : f_forall(v, body);
        }
        return disjunction();
    }

    FormulaPtr disjunction() {
        std::vector<FormulaPtr> parts{conjunction()};
        while (at("|")) {
            take();
            parts.push_back(conjunction());
        }
        return parts.size() == 1 ? parts[0] : f_or(parts);
    }

    FormulaPtr conjunction() {
        std::vector<FormulaPtr> parts{unary()};
        while (at("&")) {
            take();
            parts.push_back(unary());
        }
        return parts.size() == 1 ? parts[0] : f_and(parts);
    }

    FormulaPtr unary() {
        if (at("!")) {
            take();
            return f_not(unary());
        }
        if (at("exists") || at("forall")) return formula();
        if (at("(")) {
            take();
            auto f = formula();
            expect(")");
            return f;
        }
        if (at("true")) {
            take();
            return f_true();
        }
        if (at("false")) {
            take();
            return f_false();
        }
        if (at("Phi")) return phi_atom();
        if (at("Sp")) return component_atom();
        Term a = term();
        expect("=");
        Term b = term();
        return f_eq(a, b);
    }

    FormulaPtr phi_atom() {
        take();
        expect("[");
        const Token lt = peek();
        int l = small_nat("a positive level");
        if (l > limits_.formula_lmax)
            throw ResourceError("level " + std::to_string(l) + " at line " + std::to_string(lt.line) + ", column " +
                                std::to_string(lt.column) + " exceeds the configured formula level bound " +
                                std::to_string(limits_.formula_lmax) + " (raise --lmax)");
        expect("]");
        expect("(");
        Term a = term();
        expect(",");
        Term b = term();
        expect(")");
        expect("=");
        if (peek().kind != Tok::number || peek().text != "0") fail("expected '0'");
        take();
        return f_phi(l, a, b);
    }

    Term term() {
        if (at("CM") || at("Orb")) return Term::named(constant());
        return Term::variable(variable());
    }

    IntMat2 matrix() {
        expect("[");
        expect("[");
        BigInt a = integer();
        expect(",");
        BigInt b = integer();
        expect("]");
        expect(",");
        expect("[");
        BigInt c = integer();
        expect(",");
        BigInt d = integer();
        expect("]");
        expect("]");
        return {a, b, c, d};
    }

    ConstantValue constant() {
        const Token start = peek();
        auto here = [&](const std::string& msg) { return ParseError(msg, start.line, start.column); };
        if (take().text == "CM") {
            expect("(");
            BigInt d = integer();
            expect(";");
            BigInt a = integer();
            expect(",");
            BigInt b = integer();
            expect(",");
            BigInt c = integer();
            expect(")");
            if (b * b - 4 * a * c != d) throw here("CM form does not have discriminant " + d.get_str());
            if (d >= 0 || a <= 0) throw here("CM form must be positive definite");
            try {
                return cm_id_of(UHPQuadPoint(a, b, c));
            } catch (const DomainError& e) {
                throw here(std::string("bad CM form: ") + e.what());
            }
        }
        expect("(");
        IntMat2 m = matrix();
        expect(")");
        if (m.det() <= 0) throw here("orbit matrix must have positive determinant");
        return OrbitPoint::of(m);
    }

    FormulaPtr component_atom() {
        const Token start = take();
        expect("(");
        PreSpecialDatum d;
        for (;;) {
            if (at("{")) {
                take();
                Block b;
                for (;;) {
                    int i = small_nat("an index");
                    b.indices.push_back(i);
                    IntMat2 g;
                    if (at(":")) {
                        take();
                        g = matrix();
                    }
                    if (g.det() <= 0) fail("block matrix must have positive determinant");
                    b.gamma.emplace(i, PrimIntMat2::primitive_part(g));
                    if (!at(",")) break;
                    take();
                }
                expect("}");
                std::sort(b.indices.begin(), b.indices.end());
                b.base = b.indices.front();
                // rebase at the least index whatever was written
                IntMat2 inv = b.gamma.at(b.base).mat().adj();
                for (auto& [i, g] : b.gamma) g = PrimIntMat2::primitive_part(g.mat() * inv);
                d.blocks.push_back(std::move(b));
            } else {
                int i = small_nat("an index");
                expect("=");
                d.pi0.emplace(i, constant());
            }
            if (!at(";")) break;
            take();
        }
        expect(")");
        expect("(");
        std::vector<Term> terms{term()};
        while (at(",")) {
            take();
            terms.push_back(term());
        }
        expect(")");
        d.n = static_cast<int>(terms.size());
        if (auto e = validate(d)) throw ParseError("invalid component: " + *e, start.line, start.column);
        return f_component(canonicalize(d), std::move(terms));
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    const Limits& limits_;
};

} // namespace

FormulaPtr parse_formula(const std::string& text, const Limits& limits) { return Parser(text, limits).parse(); }

ConstantValue parse_constant(const std::string& text) { return Parser(text, Limits{}).parse_constant(); }

} // namespace cmmod
