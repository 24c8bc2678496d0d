#include "qimath.hpp"

#include "errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cmmod {

std::strong_ordering operator<=>(const CMPointId& x, const CMPointId& y) {
    BigInt ax = abs(x.disc), ay = abs(y.disc);
    if (auto r = compare(ax, ay); r != 0) return r;
    if (auto r = compare(x.a, y.a); r != 0) return r;
    return compare(x.b, y.b);
}

std::ostream& operator<<(std::ostream& os, const CMPointId& p) {
    return os << "CM(" << p.disc << ";" << p.a << "," << p.b << "," << p.c << ")";
}

Reduction reduce_to_fundamental_domain(const UHPQuadPoint& tau) {
    BigInt a = tau.a(), b = tau.b(), c = tau.c();
    IntMat2 gamma;
    for (;;) {
        // Translate so that b lies in [-a, a), i.e. Re tau in (-1/2, 1/2].
        BigInt k, t = b + a, two_a = 2 * a;
        mpz_fdiv_q(k.get_mpz_t(), t.get_mpz_t(), two_a.get_mpz_t());
        if (sgn(k) != 0) {
            // tau + k is the root of f(x - k)
            c = a * k * k - b * k + c;
            b = b - 2 * a * k;
            gamma = IntMat2::T(k) * gamma;
        }
        // |tau|^2 = c / a
        if (c < a || (c == a && sgn(b) > 0)) {
            // tau -> -1/tau sends (a, b, c) to (c, -b, a)
            std::swap(a, c);
            b = -b;
            gamma = IntMat2::S() * gamma;
            continue;
        }
        break;
    }
    return {UHPQuadPoint(a, b, c), gamma};
}

CMPointId cm_id_of(const UHPQuadPoint& tau) {
    Reduction r = reduce_to_fundamental_domain(tau);
    BigInt a = r.point.a(), b = r.point.b(), c = r.point.c();
    // The domain representative has b in [-a, a) and b <= 0 when a = c; the
    // reduced-form name flips the boundary cases to b >= 0.
    if (b == -a) {
        b = a;
    } else if (a == c && sgn(b) < 0) {
        b = -b;
    }
    return {b * b - 4 * a * c, a, b, c};
}

namespace {

void forms_of_disc(long d, std::vector<CMPointId>& out) {
    long n = -d;
    for (long a = 1; 3 * a * a <= n; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b + n;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            out.push_back({BigInt(d), BigInt(a), BigInt(b), BigInt(c)});
        }
    }
}

bool is_disc(long d) {
    long r = ((d % 4) + 4) % 4;
    return d < 0 && (r == 0 || r == 1);
}

} // namespace

std::vector<CMPointId> enumerate_cm_points(long dmax) {
    std::vector<CMPointId> out;
    for (long n = 3; n <= dmax; ++n)
        if (is_disc(-n)) forms_of_disc(-n, out);
    return out;
}

std::vector<CMPointId> cm_points_of_disc(const BigInt& disc) {
    if (!disc.fits_slong_p()) throw ResourceError("discriminant out of range");
    long d = disc.get_si();
    if (!is_disc(d)) throw DomainError("not a negative discriminant: " + disc.get_str());
    std::vector<CMPointId> out;
    forms_of_disc(d, out);
    return out;
}

BigInt cm_field_kernel(const BigInt& disc) {
    BigInt n = abs(disc), kernel = 1;
    for (BigInt p = 2; p * p <= n; ++p) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e % 2 == 1) kernel *= p;
    }
    return kernel * n;
}

bool has_cyclic_isogeny(const CMPointId& p, const CMPointId& q, std::int64_t l) {
    if (cm_field_kernel(p.disc) != cm_field_kernel(q.disc)) return false;
    UHPQuadPoint tau = p.point();
    for (const HeckeRep& h : hecke_representatives(l))
        if (cm_id_of(act(h.mat(), tau)) == q) return true;
    return false;
}

std::set<std::int64_t> cyclic_isogeny_levels(const CMPointId& p, const CMPointId& q,
                                             std::int64_t lmax) {
    std::set<std::int64_t> out;
    if (cm_field_kernel(p.disc) != cm_field_kernel(q.disc)) return out;
    for (std::int64_t l = 1; l <= lmax; ++l)
        if (has_cyclic_isogeny(p, q, l)) out.insert(l);
    return out;
}

int hom_rank(const ConstantValue& x, const ConstantValue& y) {
    const auto* px = std::get_if<CMPointId>(&x);
    const auto* py = std::get_if<CMPointId>(&y);
    if (px && py) return cm_field_kernel(px->disc) == cm_field_kernel(py->disc) ? 2 : 0;
    if (!px && !py) return 1;
    return 0;
}

ConstantValue act_on(const IntMat2& g, const ConstantValue& v) {
    if (const auto* p = std::get_if<CMPointId>(&v)) return cm_id_of(act(g, p->point()));
    return OrbitPoint::of(g * std::get<OrbitPoint>(v).m.mat());
}

std::vector<ConstantValue> hecke_images(std::int64_t l, const ConstantValue& v) {
    std::vector<ConstantValue> out;
    for (const HeckeRep& h : hecke_representatives(l)) out.push_back(act_on(h.mat(), v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool phi_holds(std::int64_t l, const ConstantValue& x, const ConstantValue& y) {
    const auto* px = std::get_if<CMPointId>(&x);
    const auto* py = std::get_if<CMPointId>(&y);
    if (px && py) return has_cyclic_isogeny(*px, *py, l);
    if (px || py) return false;
    // Generic base point: only the level of the connecting matrix matters.
    IntMat2 rel = std::get<OrbitPoint>(y).m.mat() * std::get<OrbitPoint>(x).m.mat().adj();
    return level(rel) == l;
}

std::string to_string(const ConstantValue& v) {
    std::ostringstream os;
    if (const auto* p = std::get_if<CMPointId>(&v)) {
        os << *p;
    } else {
        const HeckeRep& h = std::get<OrbitPoint>(v).m;
        os << "Orb([[" << h.a << "," << h.b << "],[0," << h.d << "]])";
    }
    return os.str();
}

} // namespace cmmod
