#include "ramcov/unipoly.hpp"

#include "ramcov/multipoly.hpp"

namespace ramcov {

Rat content_rat(const MultiPoly<Rat>& p) {
    if (p.is_zero()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    return make_rat(num_gcd, den_lcm);
}

void zp_normalize(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int zp_deg(const ZPoly& a) { return (int)a.size() - 1; }

Int zp_content(const ZPoly& a) {
    Int g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly zp_primitive(const ZPoly& a) {
    Int c = zp_content(a);
    if (sgn(c) == 0) return {};
    ZPoly r = a;
    for (auto& x : r) x /= c;
    return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    zp_normalize(r);
    return r;
}

ZPoly zp_neg(const ZPoly& a) {
    ZPoly r = a;
    for (auto& x : r) x = -x;
    return r;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    zp_normalize(r);
    return r;
}

bool zp_divides(const ZPoly& d, const ZPoly& a, ZPoly* quotient) {
    if (a.empty()) {
        if (quotient) quotient->clear();
        return true;
    }
    if (d.empty() || zp_deg(a) < zp_deg(d)) return false;
    ZPoly rem = a;
    ZPoly quo((std::size_t)(zp_deg(a) - zp_deg(d)) + 1, Int(0));
    for (int i = zp_deg(a) - zp_deg(d); i >= 0; --i) {
        const Int& top = rem[(std::size_t)(i + zp_deg(d))];
        if (sgn(top) != 0) {
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), d.back().get_mpz_t());
            if (sgn(r) != 0) return false;
            quo[(std::size_t)i] = q;
            for (std::size_t j = 0; j < d.size(); ++j)
                rem[(std::size_t)i + j] -= q * d[j];
        }
    }
    for (const auto& c : rem)
        if (sgn(c) != 0) return false;
    if (quotient) {
        zp_normalize(quo);
        *quotient = std::move(quo);
    }
    return true;
}

UniPoly<Fp> zp_mod_p(const ZPoly& a, std::uint64_t p) {
    std::vector<Fp> c;
    c.reserve(a.size());
    for (const auto& x : a) c.push_back(Fp::from_int(x, p));
    return UniPoly<Fp>::from_coeffs(std::move(c));
}

namespace {

Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// symmetric representative of v modulo m, |result| <= m/2
Int symmetric_mod(const Int& v, const Int& m) {
    Int r = v % m;
    if (sgn(r) < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

} // namespace

bool zp_coprime_probe(const ZPoly& a, const ZPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return false;
    if (sgn(a.back() % Int(p)) == 0 || sgn(b.back() % Int(p)) == 0) return false;
    auto g = gcd_euclid(zp_mod_p(a, p), zp_mod_p(b, p));
    return g.deg() == 0;
}

ZPoly zp_gcd(const ZPoly& a_in, const ZPoly& b_in) {
    ZPoly a = a_in, b = b_in;
    zp_normalize(a);
    zp_normalize(b);
    auto pos_lc = [](ZPoly v) {
        if (!v.empty() && sgn(v.back()) < 0)
            for (auto& x : v) x = -x;
        return v;
    };
    if (a.empty()) return pos_lc(b);
    if (b.empty()) return pos_lc(a);

    Int ca = zp_content(a), cb = zp_content(b);
    Int gc = int_gcd(ca, cb);
    ZPoly A = pos_lc(zp_primitive(a)), B = pos_lc(zp_primitive(b));
    if (zp_deg(A) == 0 || zp_deg(B) == 0) return {gc};

    Int d = int_gcd(A.back(), B.back());
    Int lcprod = A.back() * B.back();

    Int modulus = 0;
    ZPoly acc; // symmetric CRT accumulation of d * monic-gcd images
    int acc_deg = -1;
    std::uint64_t p = (1ull << 62);
    for (int tries = 0; tries < 10000; ++tries) {
        p = next_prime_u64(p);
        if (sgn(lcprod % Int(p)) == 0) continue;
        auto gp = gcd_euclid(zp_mod_p(A, p), zp_mod_p(B, p));
        if (gp.deg() == 0) return {gc};
        gp = gp * Fp::from_int(d, p);
        if (acc_deg < 0 || gp.deg() < acc_deg) {
            acc_deg = gp.deg();
            modulus = Int(p);
            acc.assign((std::size_t)gp.deg() + 1, Int(0));
            for (int i = 0; i <= gp.deg(); ++i)
                acc[(std::size_t)i] = symmetric_mod(Int(gp.coeff(i).value()), modulus);
        } else if (gp.deg() > acc_deg) {
            continue; // unlucky prime
        } else {
            Int pnew(p);
            Int minv;
            if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pnew.get_mpz_t()) == 0)
                continue;
            Int combined_mod = modulus * pnew;
            for (int i = 0; i <= acc_deg; ++i) {
                Int target(gp.coeff(i).value());
                Int diff = (target - acc[(std::size_t)i]) % pnew;
                if (sgn(diff) < 0) diff += pnew;
                Int k = (diff * minv) % pnew;
                acc[(std::size_t)i] = symmetric_mod(acc[(std::size_t)i] + k * modulus, combined_mod);
            }
            modulus = combined_mod;
        }
        ZPoly cand = acc;
        zp_normalize(cand);
        cand = pos_lc(zp_primitive(cand));
        if (!cand.empty() && zp_divides(cand, A) && zp_divides(cand, B)) {
            ZPoly out = cand;
            for (auto& x : out) x *= gc;
            return out;
        }
    }
    throw std::runtime_error("zp_gcd: modular reconstruction did not stabilize");
}

ZPoly rat_poly_to_z(const UniPoly<Rat>& a, Int* den) {
    Int L = 1;
    for (const auto& c : a.coeffs()) {
        Int g = int_gcd(L, c.get_den());
        L = L / g * c.get_den();
    }
    ZPoly r;
    r.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) r.push_back(c.get_num() * (L / c.get_den()));
    if (den) *den = L;
    zp_normalize(r);
    return r;
}

UniPoly<Rat> z_to_rat_poly(const ZPoly& a) {
    std::vector<Rat> c;
    c.reserve(a.size());
    for (const auto& x : a) c.push_back(Rat(x));
    return UniPoly<Rat>::from_coeffs(std::move(c));
}

UniPoly<Rat> gcd_rat(const UniPoly<Rat>& a, const UniPoly<Rat>& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    ZPoly za = rat_poly_to_z(a), zb = rat_poly_to_z(b);
    return z_to_rat_poly(zp_gcd(za, zb)).monic();
}

} // namespace ramcov
