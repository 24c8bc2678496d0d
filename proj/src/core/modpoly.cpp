#include "modpoly.hpp"

#include "errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

namespace cmmod {

bool ModPoly::is_symmetric() const {
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (c[i][j] != c[j][i]) return false;
    return true;
}

bool ModPoly::is_monic() const {
    size_t n = static_cast<size_t>(psi);
    if (c.size() != n + 1) return false;
    if (c[n][0] != 1) return false;
    for (size_t j = 1; j <= n; ++j)
        if (sgn(c[n][j]) != 0) return false;
    return true;
}

bool ModPoly::kronecker_congruence() const {
    // (x^p - y)(x - y^p) = x^(p+1) - x^p y^p - x y + y^(p+1)
    BigInt p = level;
    size_t n = static_cast<size_t>(psi);
    if (static_cast<std::int64_t>(n) != level + 1) return false;
    auto expected = [&](size_t i, size_t j) -> long {
        if (i == n && j == 0) return 1;
        if (i == 0 && j == n) return 1;
        if (i + 1 == n && j + 1 == n) return -1;
        if (i == 1 && j == 1) return -1;
        return 0;
    };
    for (size_t i = 0; i <= n; ++i)
        for (size_t j = 0; j <= n; ++j) {
            BigInt diff = c[i][j] - expected(i, j);
            if (!mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t())) return false;
        }
    return true;
}

IntPoly ModPoly::diagonal() const {
    std::vector<BigInt> d(2 * c.size());
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j) d[i + j] += c[i][j];
    return IntPoly(std::move(d));
}

std::vector<IntPoly> ModPoly::in_y() const {
    std::vector<IntPoly> out;
    for (size_t j = 0; j < c.size(); ++j) {
        std::vector<BigInt> col;
        for (size_t i = 0; i < c.size(); ++i) col.push_back(c[i][j]);
        out.emplace_back(std::move(col));
    }
    return out;
}

BigInt ModPoly::eval(const BigInt& x, const BigInt& y) const {
    BigInt r = 0;
    for (size_t i = c.size(); i-- > 0;) {
        BigInt row = 0;
        for (size_t j = c.size(); j-- > 0;) row = row * y + c[i][j];
        r = r * x + row;
    }
    return r;
}

BigComplex ModPoly::eval(const BigComplex& x, const BigComplex& y) const {
    mpfr_prec_t p = std::max(x.prec(), y.prec());
    BigComplex r(p);
    for (size_t i = c.size(); i-- > 0;) {
        BigComplex row(p);
        for (size_t j = c.size(); j-- > 0;) row = row * y + BigComplex(c[i][j], p);
        r = r * x + row;
    }
    return r;
}

BigFloat ModPoly::residual(const BigComplex& x, const BigComplex& y) const {
    mpfr_prec_t p = std::max(x.prec(), y.prec());
    BigFloat ax = x.abs(), ay = y.abs();
    BigFloat scale(p);
    for (size_t i = c.size(); i-- > 0;) {
        BigFloat row(p);
        for (size_t j = c.size(); j-- > 0;) row = row * ay + BigFloat(BigInt(abs(c[i][j])), p);
        scale = scale * ax + row;
    }
    BigFloat num = eval(x, y).abs();
    // near a zero of every term (j = 0 with c00 = 0) fall back to absolute size
    BigFloat one(1, p);
    return num / (scale < one ? one : scale);
}

size_t ModPoly::term_count() const {
    size_t n = 0;
    for (const auto& row : c)
        for (const auto& v : row)
            if (sgn(v) != 0) ++n;
    return n;
}

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

int moebius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

using SeriesPoly = std::vector<QExpansion>; // coefficient of X^k at index k

SeriesPoly multiply(const SeriesPoly& x, const SeriesPoly& y) {
    std::vector<std::optional<QExpansion>> acc(x.size() + y.size() - 1);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) {
            QExpansion t = x[i] * y[j];
            acc[i + j] = acc[i + j] ? *acc[i + j] + t : t;
        }
    SeriesPoly out;
    for (auto& v : acc) out.push_back(std::move(*v));
    return out;
}

// Sum over the Hecke cosets (a, b, d), b admissible, of j((a tau + b)/d)^k,
// given the q-expansion of j^k. The roots of unity sum to the integer
// R(n) = sum_{e | gcd(a,d)} mu(e) (d/e) [d/e divides n], and the surviving
// exponents a n / d are integral.
QExpansion group_power_sum(const QExpansion& jk, long a, long d) {
    long g = std::gcd(a, d);
    std::vector<std::pair<long, int>> divs;
    for (long e = 1; e <= g; ++e)
        if (g % e == 0 && moebius(e) != 0) divs.push_back({e, moebius(e)});
    long start = floor_div(a * jk.start(), d);
    long prec = ceil_div(a * jk.prec(), d);
    std::vector<BigInt> c(static_cast<size_t>(std::max(0L, prec - start)));
    for (long n = jk.start(); n < jk.prec(); ++n) {
        long r = 0;
        for (auto [e, mu] : divs)
            if (n % (d / e) == 0) r += mu * (d / e);
        if (r == 0) continue;
        if ((a * n) % d != 0) throw Error("non-integral exponent in a Hecke power sum");
        long ex = a * n / d;
        c[static_cast<size_t>(ex - start)] += r * jk.coeff(n);
    }
    return QExpansion(start, prec, std::move(c));
}

// nullopt when the truncation was too short for the guard.
std::optional<ModPoly> attempt_modular_polynomial(std::int64_t l, int guard, long order) {
    std::int64_t psi_l = psi(l);
    std::map<std::pair<long, long>, long> groups;
    for (const auto& h : hecke_representatives(l)) ++groups[{static_cast<long>(h.a), static_cast<long>(h.d)}];

    QExpansion j = j_q_expansion(order);
    std::vector<QExpansion> jpow{QExpansion::constant(1, j.prec() + 1)};
    for (std::int64_t k = 1; k <= psi_l; ++k) jpow.push_back(jpow.back() * j);

    long big = j.prec() + 2 * psi_l + 2;
    SeriesPoly total{QExpansion::constant(1, big)};
    for (const auto& [ad, size] : groups) {
        auto [a, d] = ad;
        std::vector<QExpansion> p(static_cast<size_t>(size + 1));
        for (long k = 1; k <= size; ++k) p[static_cast<size_t>(k)] = group_power_sum(jpow[static_cast<size_t>(k)], a, d);
        // Newton: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i
        std::vector<QExpansion> e{QExpansion::constant(1, big)};
        for (long k = 1; k <= size; ++k) {
            std::optional<QExpansion> s;
            for (long i = 1; i <= k; ++i) {
                QExpansion t = e[static_cast<size_t>(k - i)] * p[static_cast<size_t>(i)];
                if (i % 2 == 0) t = -t;
                s = s ? *s + t : t;
            }
            e.push_back(s->divexact(k));
        }
        SeriesPoly group(static_cast<size_t>(size + 1));
        for (long k = 0; k <= size; ++k)
            group[static_cast<size_t>(size - k)] = k % 2 == 0 ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)];
        total = multiply(total, group);
    }

    ModPoly out;
    out.level = l;
    out.psi = psi_l;
    out.c.assign(static_cast<size_t>(psi_l + 1), std::vector<BigInt>(static_cast<size_t>(psi_l + 1)));
    for (std::int64_t k = 0; k <= psi_l; ++k) {
        QExpansion s = total[static_cast<size_t>(k)];
        if (s.prec() <= guard) return std::nullopt;
        // Peel off the polar part and the constant by powers of j.
        while (!s.is_zero() && s.valuation() <= 0) {
            long v = -s.valuation();
            if (v > psi_l) throw Error("modular polynomial coefficient of too high degree in j");
            BigInt lead = s.coeff(s.valuation());
            out.c[static_cast<size_t>(k)][static_cast<size_t>(v)] = lead;
            s = s - lead * jpow[static_cast<size_t>(v)];
        }
        if (s.prec() <= guard) return std::nullopt;
        if (!s.is_zero()) throw Error("modular polynomial guard terms do not cancel");
    }
    return out;
}

} // namespace

ModPoly compute_modular_polynomial(std::int64_t l, int guard) {
    if (l < 1) throw DomainError("level must be positive");
    std::int64_t psi_l = psi(l);
    long order = static_cast<long>(l * (psi_l + guard + 2));
    for (int tries = 0; tries < 8; ++tries, order *= 2)
        if (auto p = attempt_modular_polynomial(l, guard, order)) return *p;
    throw ResourceError("modular polynomial truncation did not converge for level " + std::to_string(l));
}

std::string modpoly_to_json(const ModPoly& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j <= i; ++j)
            if (sgn(p.c[i][j]) != 0) coeffs.push_back({i, j, p.c[i][j].get_str()});
    nlohmann::json doc = {{"version", 1}, {"l", p.level}, {"psi", p.psi}, {"coeffs", coeffs}};
    return doc.dump();
}

ModPoly modpoly_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("modular polynomial file: ") + e.what());
    }
    try {
        if (doc.at("version").get<int>() != 1) throw ParseError("unsupported modular polynomial file version");
        ModPoly p;
        p.level = doc.at("l").get<std::int64_t>();
        p.psi = doc.at("psi").get<std::int64_t>();
        if (p.level < 2 || p.psi != psi(p.level)) throw ParseError("inconsistent level and psi");
        size_t n = static_cast<size_t>(p.psi) + 1;
        p.c.assign(n, std::vector<BigInt>(n));
        for (const auto& t : doc.at("coeffs")) {
            size_t i = t.at(0).get<size_t>(), j = t.at(1).get<size_t>();
            if (i >= n || j > i) throw ParseError("coefficient index out of range");
            BigInt v(t.at(2).get<std::string>());
            p.c[i][j] = v;
            p.c[j][i] = v;
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("modular polynomial file: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ParseError("modular polynomial file: bad integer literal");
    }
}

namespace {

std::mutex phi_mutex;
std::map<std::int64_t, std::unique_ptr<ModPoly>> phi_memo;

std::optional<ModPoly> load_cached(const std::filesystem::path& path, std::int64_t l) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        ModPoly p = modpoly_from_json(ss.str());
        if (p.level != l || !p.is_monic()) return std::nullopt;
        return p;
    } catch (const ParseError&) {
        return std::nullopt; // a broken cache entry is recomputed
    }
}

void store_cached(const std::filesystem::path& dir, const ModPoly& p) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto final_path = dir / ("phi_" + std::to_string(p.level) + ".json");
    auto tmp = dir / ("phi_" + std::to_string(p.level) + ".json.tmp");
    {
        std::ofstream out(tmp);
        if (!out) return; // read-only cache: memo only
        out << modpoly_to_json(p) << "\n";
        if (!out) return;
    }
    std::filesystem::rename(tmp, final_path, ec);
}

} // namespace

const ModPoly& modular_polynomial(std::int64_t l, const Limits& limits) {
    if (l < 1) throw DomainError("level must be positive");
    if (l > limits.lmax)
        throw ResourceError("level " + std::to_string(l) + " exceeds the configured lmax = " +
                            std::to_string(limits.lmax));
    std::lock_guard<std::mutex> lock(phi_mutex);
    auto it = phi_memo.find(l);
    if (it != phi_memo.end()) return *it->second;
    std::optional<ModPoly> p;
    if (l > 1 && !limits.cache_dir.empty())
        p = load_cached(std::filesystem::path(limits.cache_dir) / ("phi_" + std::to_string(l) + ".json"), l);
    if (!p) {
        p = compute_modular_polynomial(l);
        if (l > 1 && !limits.cache_dir.empty()) store_cached(limits.cache_dir, *p);
    }
    auto [pos, _] = phi_memo.emplace(l, std::make_unique<ModPoly>(std::move(*p)));
    return *pos->second;
}

Rational j_alg(const Rational& g2, const Rational& g3) {
    Rational g2c = g2 * g2 * g2;
    Rational delta = g2c - 27 * g3 * g3;
    if (sgn(delta) == 0) throw DomainError("not an elliptic curve: g2^3 - 27 g3^2 = 0");
    return 1728 * g2c / delta;
}

namespace {

// Numeric reduction into the fundamental domain.
BigComplex reduce_numeric(BigComplex tau) {
    BigFloat one(1, tau.prec());
    for (int it = 0; it < 100000; ++it) {
        BigFloat shift(BigInt((tau.re + BigFloat(Rational(1, 2), tau.prec())).floor()), tau.prec());
        tau.re = tau.re - shift;
        if (!(tau.norm() < one)) return tau;
        tau = BigComplex(-1, tau.prec()) / tau;
    }
    throw ResourceError("numeric reduction did not terminate");
}

BigComplex j_of_reduced(const BigComplex& tau, int precision_bits) {
    // log2 |j| ~ 2 pi Im(tau) log2(e)
    double im = tau.im.to_double();
    long mag_bits = static_cast<long>(2 * 3.141592653589793 * im * 1.4426950408889634) + 2;
    mpfr_prec_t wp = precision_bits + 64 + mag_bits;
    BigComplex t = tau.with_prec(wp);
    BigComplex q = exp_2pi_i(t);
    double bits_per_term = 2 * 3.141592653589793 * im * 1.4426950408889634;
    long terms = static_cast<long>(static_cast<double>(wp) / bits_per_term) + 12;

    // E4 = 1 + 240 sum sigma3(n) q^n
    std::vector<BigInt> sigma3(static_cast<size_t>(terms + 1));
    for (long d = 1; d <= terms; ++d)
        for (long m = d; m <= terms; m += d) sigma3[static_cast<size_t>(m)] += BigInt(d) * d * d;
    std::vector<BigComplex> qp{BigComplex(1, wp)};
    for (long n = 1; n <= terms; ++n) qp.push_back(qp.back() * q);
    BigComplex e4(1, wp);
    for (long n = 1; n <= terms; ++n)
        e4 = e4 + BigComplex(BigInt(240 * sigma3[static_cast<size_t>(n)]), wp) * qp[static_cast<size_t>(n)];
    // prod (1 - q^n) via pentagonal numbers
    BigComplex eta(1, wp);
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > terms) break;
        BigComplex s = qp[static_cast<size_t>(e1)];
        if (e2 <= terms) s = s + qp[static_cast<size_t>(e2)];
        eta = k % 2 == 0 ? eta + s : eta - s;
    }
    BigComplex eta2 = eta * eta, eta4 = eta2 * eta2, eta8 = eta4 * eta4, eta16 = eta8 * eta8;
    BigComplex delta = q * eta16 * eta8;
    BigComplex j = e4 * e4 * e4 / delta;
    return j.with_prec(precision_bits + mag_bits);
}

} // namespace

BigComplex j_numeric(const BigComplex& tau, int precision_bits) {
    if (precision_bits < 64) throw DomainError("precision must be at least 64 bits");
    if (tau.im.sign() <= 0) throw DomainError("tau must lie in the upper half-plane");
    return j_of_reduced(reduce_numeric(tau.with_prec(precision_bits + 64)), precision_bits);
}

BigComplex j_numeric(const UHPQuadPoint& tau, int precision_bits) {
    if (precision_bits < 64) throw DomainError("precision must be at least 64 bits");
    UHPQuadPoint r = reduce_to_fundamental_domain(tau).point;
    long extra = static_cast<long>(mpz_sizeinbase(r.c().get_mpz_t(), 2)) + 64;
    return j_of_reduced(BigComplex::of(r, precision_bits + extra), precision_bits);
}

namespace {

std::mutex hilbert_mutex;
std::map<BigInt, IntPoly> hilbert_memo;

std::optional<IntPoly> round_class_polynomial(const std::vector<CMPointId>& forms, int prec) {
    std::vector<BigComplex> poly{BigComplex(1, prec)}; // ascending
    for (const auto& f : forms) {
        BigComplex root = j_numeric(f.point(), prec);
        std::vector<BigComplex> next(poly.size() + 1, BigComplex(prec));
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = next[k + 1] + poly[k];
            next[k] = next[k] - poly[k] * root;
        }
        poly = std::move(next);
    }
    BigFloat tol(prec);
    mpfr_set_ui_2exp(tol.get(), 1, -32, MPFR_RNDN);
    std::vector<BigInt> out;
    for (const auto& c : poly) {
        BigInt r = c.re.round();
        BigFloat err = (c.re - BigFloat(r, prec)).abs();
        if (!(err < tol) || !(c.im.abs() < tol)) return std::nullopt;
        out.push_back(r);
    }
    return IntPoly(std::move(out));
}

} // namespace

IntPoly hilbert_class_polynomial(const BigInt& disc, const Limits& limits) {
    if (abs(disc) > limits.dmax)
        throw ResourceError("|D| = " + BigInt(abs(disc)).get_str() + " exceeds the configured dmax = " +
                            std::to_string(limits.dmax));
    auto forms = cm_points_of_disc(disc);
    {
        std::lock_guard<std::mutex> lock(hilbert_mutex);
        auto it = hilbert_memo.find(disc);
        if (it != hilbert_memo.end()) return it->second;
    }
    // Coefficient size: sum over roots of log2(1 + |j|) ~ pi sqrt|D| / a / ln 2.
    double bits = 0;
    double sq = std::sqrt(std::fabs(disc.get_d()));
    for (const auto& f : forms) bits += 3.141592653589793 * sq / f.a.get_d() * 1.4426950408889634 + 12;
    int prec = std::max(limits.precision_bits, static_cast<int>(bits) + 96);
    for (; prec <= limits.max_precision_bits; prec *= 2) {
        if (auto p = round_class_polynomial(forms, prec)) {
            std::lock_guard<std::mutex> lock(hilbert_mutex);
            hilbert_memo.emplace(disc, *p);
            return *p;
        }
    }
    throw ResourceError("class polynomial rounding unstable below the precision cap of " +
                        std::to_string(limits.max_precision_bits) + " bits");
}

bool phi_vanishes_at_cm(std::int64_t l, const CMPointId& p, const CMPointId& q, const Limits& limits) {
    if (l < 1) throw DomainError("level must be positive");
    if (l > limits.lmax)
        throw ResourceError("level " + std::to_string(l) + " exceeds the configured lmax = " +
                            std::to_string(limits.lmax));
    return has_cyclic_isogeny(p, q, l);
}

bool phi_vanishes_on_classes(std::int64_t l, const BigInt& dp, const BigInt& dq, const Limits& limits) {
    const ModPoly& phi = modular_polynomial(l, limits);
    IntPoly hp = hilbert_class_polynomial(dp, limits);
    IntPoly hq = hilbert_class_polynomial(dq, limits);
    // Res_y(H_q(y), Phi(x, y)) as a polynomial in x
    std::vector<IntPoly> hq_y;
    for (const auto& v : hq.coeffs()) hq_y.push_back(IntPoly({v}));
    IntPoly r = resultant(hq_y, phi.in_y());
    // Res_x(H_p(x), r(x)) over constant coefficients
    std::vector<IntPoly> hp_x, r_x;
    for (const auto& v : hp.coeffs()) hp_x.push_back(IntPoly({v}));
    for (const auto& v : r.coeffs()) r_x.push_back(IntPoly({v}));
    if (r.is_zero()) return true;
    return resultant(hp_x, r_x).is_zero();
}

} // namespace cmmod
