#include "ramcov/lifting.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ramcov {

CrtResult crt_combine(const ResidueSet& rs) {
    std::map<std::uint64_t, std::uint64_t> seen;
    for (auto [p, r] : rs.residues) {
        if (p < 2) throw std::invalid_argument("crt_combine: modulus below 2");
        if (r >= p) throw std::invalid_argument("crt_combine: residue out of range");
        auto it = seen.find(p);
        if (it != seen.end()) {
            if (it->second != r)
                throw std::invalid_argument("crt_combine: inconsistent residues for prime " +
                                            std::to_string(p));
            continue;
        }
        seen.emplace(p, r);
    }
    if (seen.empty()) throw std::invalid_argument("crt_combine: empty residue set");
    Int x(0), M(1);
    for (auto [p, r] : seen) {
        Int pz(p), rz(r);
        // solve y = x (mod M), y = r (mod p): y = x + M * ((r - x) / M mod p)
        Int minv;
        if (mpz_invert(minv.get_mpz_t(), M.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw std::invalid_argument("crt_combine: moduli not coprime");
        Int diff = (rz - x) % pz;
        if (sgn(diff) < 0) diff += pz;
        Int k = (diff * minv) % pz;
        x += k * M;
        M *= pz;
    }
    return {x, M};
}

std::optional<Rat> rational_reconstruct(const Int& residue, const Int& M, const Int& bound) {
    if (sgn(M) <= 0 || sgn(residue) < 0 || residue >= M)
        throw std::invalid_argument("rational_reconstruct: residue out of range");
    if (sgn(bound) <= 0) throw std::invalid_argument("rational_reconstruct: bound must be positive");
    Int r0 = M, r1 = residue;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (sgn(t1) == 0) return std::nullopt;
    Int n = r1, d = t1;
    if (sgn(d) < 0) {
        n = -n;
        d = -d;
    }
    if (d > bound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), M.get_mpz_t());
    if (g != 1) return std::nullopt;
    return make_rat(n, d);
}

std::optional<Rat> rational_reconstruct(const Int& residue, const Int& M) {
    Int half = M / 2;
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    if (sgn(bound) <= 0) bound = 1;
    return rational_reconstruct(residue, M, bound);
}

Rat dot_product(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot_product: length mismatch");
    Int s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return Rat(s);
}

Int det_int(std::vector<IntVec> m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det_int: matrix not square");
    // fraction-free Bareiss elimination
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && sgn(m[piv][k]) == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return n == 0 ? Int(1) : Int(sign) * m[n - 1][n - 1];
}

namespace {

struct Gso {
    std::vector<std::vector<Rat>> mu; // mu[i][j], j < i
    std::vector<Rat> norm2;           // |b*_i|^2
};

Gso gram_schmidt(const std::vector<IntVec>& b) {
    std::size_t n = b.size();
    Gso g;
    g.mu.assign(n, std::vector<Rat>(n, Rat(0)));
    g.norm2.assign(n, Rat(0));
    std::vector<std::vector<Rat>> bstar(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> v(b[i].size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = Rat(b[i][k]);
        for (std::size_t j = 0; j < i; ++j) {
            Rat num(0);
            for (std::size_t k = 0; k < v.size(); ++k) num += Rat(b[i][k]) * bstar[j][k];
            if (sgn(g.norm2[j]) == 0)
                throw std::invalid_argument("lll_reduce: linearly dependent rows");
            Rat m = num / g.norm2[j];
            g.mu[i][j] = m;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= m * bstar[j][k];
        }
        Rat n2(0);
        for (const auto& x : v) n2 += x * x;
        if (sgn(n2) == 0) throw std::invalid_argument("lll_reduce: linearly dependent rows");
        g.norm2[i] = n2;
        bstar[i] = std::move(v);
    }
    return g;
}

Int round_nearest(const Rat& q) {
    // floor(q + 1/2)
    Rat s = q + make_rat(1, 2);
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return r;
}

void row_axpy(IntVec& dst, const Int& c, const IntVec& src) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= c * src[k];
}

} // namespace

LllResult lll_reduce(const IntLatticeBasis& basis) {
    std::vector<IntVec> b = basis.rows;
    std::size_t n = b.size();
    if (n == 0) throw std::invalid_argument("lll_reduce: empty basis");
    std::size_t dim = b[0].size();
    for (const auto& row : b)
        if (row.size() != dim) throw std::invalid_argument("lll_reduce: ragged rows");
    if (n > dim) throw std::invalid_argument("lll_reduce: more rows than dimension");

    std::vector<IntVec> U(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;

    Gso g = gram_schmidt(b); // also certifies independence

    const Rat threequarters = make_rat(3, 4);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            if (2 * abs(g.mu[k][j]) > 1) {
                Int q = round_nearest(g.mu[k][j]);
                row_axpy(b[k], q, b[j]);
                row_axpy(U[k], q, U[j]);
                g = gram_schmidt(b);
            }
        }
        if (k >= 1 && g.norm2[k] < (threequarters - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1]) {
            std::swap(b[k], b[k - 1]);
            std::swap(U[k], U[k - 1]);
            g = gram_schmidt(b);
            k = std::max<std::size_t>(1, k - 1);
        } else {
            ++k;
        }
    }

    LllResult out;
    out.reduced.rows = std::move(b);
    out.transform = std::move(U);
    out.transform_unimodular = false;
    Int d = det_int(out.transform);
    out.transform_unimodular = (d == 1 || d == -1);
    return out;
}

IntLatticeBasis lift_lattice(const std::vector<Int>& residues, const Int& M) {
    std::size_t k = residues.size();
    IntLatticeBasis B;
    IntVec first(k + 1, Int(0));
    for (std::size_t i = 0; i < k; ++i) first[i] = residues[i];
    B.rows.push_back(std::move(first));
    for (std::size_t i = 0; i < k; ++i) {
        IntVec row(k + 1, Int(0));
        row[i] = M;
        row[k] = 1;
        B.rows.push_back(std::move(row));
    }
    return B;
}

MultiPoly<Fp> reduce_mod_p(const MultiPoly<Rat>& poly, std::uint64_t p) {
    MultiPoly<Fp> out(poly.vars());
    for (const auto& [e, c] : poly.terms()) out.add_term(e, Fp::from_rat(c, p));
    return out;
}

namespace {

std::string denominator_diagnostic(const std::vector<Rat>& coeffs) {
    std::set<unsigned long> factors;
    Int max_den(1);
    for (const auto& c : coeffs) {
        Int d = c.get_den();
        if (d > max_den) max_den = d;
        unsigned long f = 2;
        Int rest = d;
        while (rest > 1 && Int(f) * Int(f) <= rest) {
            if (mpz_divisible_ui_p(rest.get_mpz_t(), f)) {
                factors.insert(f);
                while (mpz_divisible_ui_p(rest.get_mpz_t(), f))
                    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), f);
            }
            ++f;
        }
        if (rest > 1) factors.insert(rest.get_ui());
    }
    std::string s = "denominator factors {";
    bool first = true;
    for (auto f : factors) {
        if (!first) s += ",";
        s += std::to_string(f);
        first = false;
    }
    s += "}, max denominator " + max_den.get_str();
    return s;
}

} // namespace

PolyLift lift_polynomial(const std::vector<MultiPoly<Fp>>& images) {
    PolyLift out;
    if (images.empty()) {
        out.diagnostic = "no images";
        return out;
    }
    const VarTablePtr vars = images[0].vars();
    std::vector<std::uint64_t> primes;
    for (const auto& im : images) {
        std::uint64_t p = 0;
        for (const auto& [e, c] : im.terms()) {
            p = c.modulus();
            break;
        }
        if (p == 0) {
            out.diagnostic = "an image is identically zero; its prime is unknown";
            return out;
        }
        if (std::find(primes.begin(), primes.end(), p) != primes.end()) {
            out.diagnostic = "duplicate prime " + std::to_string(p);
            return out;
        }
        primes.push_back(p);
    }
    out.prime_count = primes.size();

    // union of supports, zero-filled
    std::set<Exp> support;
    for (const auto& im : images)
        for (const auto& [e, c] : im.terms()) support.insert(e);

    Int M(1);
    for (auto p : primes) M *= Int(p);

    std::vector<Exp> monomials(support.begin(), support.end());
    std::vector<Int> combined(monomials.size());
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        ResidueSet rs;
        for (std::size_t j = 0; j < images.size(); ++j) {
            const auto& terms = images[j].terms();
            auto it = terms.find(monomials[i]);
            std::uint64_t r = (it == terms.end()) ? 0 : it->second.value();
            rs.residues.emplace_back(primes[j], r);
        }
        combined[i] = crt_combine(rs).residue;
    }

    std::vector<Rat> coeffs(monomials.size());
    bool direct_ok = true;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        auto r = rational_reconstruct(combined[i], M);
        if (!r) {
            direct_ok = false;
            break;
        }
        coeffs[i] = *r;
    }

    if (!direct_ok) {
        // joint lattice lift: short vector (d*c_i mod M ..., -sum q_i) with
        // the multiplier d sitting in the transform row over the residue row
        auto red = lll_reduce(lift_lattice(combined, M));
        bool found = false;
        std::vector<std::pair<Rat, std::size_t>> by_norm;
        for (std::size_t i = 0; i < red.reduced.rows.size(); ++i)
            by_norm.emplace_back(dot_product(red.reduced.rows[i], red.reduced.rows[i]), i);
        std::sort(by_norm.begin(), by_norm.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& entry : by_norm) {
            std::size_t idx = entry.second;
            const Int& d = red.transform[idx][0];
            if (sgn(d) == 0) continue;
            Int g;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), M.get_mpz_t());
            if (g != 1) continue;
            for (std::size_t i = 0; i < monomials.size(); ++i)
                coeffs[i] = make_rat(red.reduced.rows[idx][i], d);
            found = true;
            out.path = LiftPath::lll;
            break;
        }
        if (!found) {
            out.diagnostic = "no usable short vector in the lift lattice";
            return out;
        }
    }

    MultiPoly<Rat> value(vars);
    for (std::size_t i = 0; i < monomials.size(); ++i)
        value.add_term(monomials[i], coeffs[i]);

    // verification: re-reduce modulo every source prime
    for (std::size_t j = 0; j < images.size(); ++j) {
        MultiPoly<Fp> back(vars);
        try {
            back = reduce_mod_p(value, primes[j]);
        } catch (const std::domain_error&) {
            out.diagnostic = "lifted denominator divisible by prime " + std::to_string(primes[j]);
            return out;
        }
        if (!(back == images[j])) {
            out.diagnostic = "lift does not reproduce the image mod " + std::to_string(primes[j]);
            return out;
        }
    }

    out.ok = true;
    out.value = std::move(value);
    out.diagnostic = denominator_diagnostic(coeffs) +
                     (out.path == LiftPath::lll ? "; path: lattice" : "; path: direct") +
                     "; agreeing primes: " + std::to_string(primes.size());
    return out;
}

} // namespace ramcov
