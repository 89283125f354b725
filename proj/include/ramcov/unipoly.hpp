#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ramcov/fp.hpp"
#include "ramcov/int_rat.hpp"

namespace ramcov {

// Scalar customization points. Elements of some coefficient fields carry
// context (a modulus, a radicand), so constants are built "like" an existing
// element rather than out of thin air.
inline bool kis_zero(const Rat& q) { return sgn(q) == 0; }
inline Rat kzero_like(const Rat&) { return Rat(0); }
inline Rat kone_like(const Rat&) { return Rat(1); }
inline Rat kfrom_int_like(long n, const Rat&) { return Rat(n); }
inline Rat kfrom_rat_like(const Rat& q, const Rat&) { return q; }
inline std::string kstr(const Rat& q) { return rat_str(q); }

inline bool kis_zero(const Fp& a) { return a.is_zero(); }
inline Fp kzero_like(const Fp& a) { return Fp(0, a.modulus()); }
inline Fp kone_like(const Fp& a) { return Fp(1, a.modulus()); }
inline Fp kfrom_int_like(long n, const Fp& a) { return Fp::from_int(Int(n), a.modulus()); }
inline Fp kfrom_rat_like(const Rat& q, const Fp& a) { return Fp::from_rat(q, a.modulus()); }
inline std::string kstr(const Fp& a) { return a.str(); }

// Dense univariate polynomial over a field K, coefficients stored in
// ascending order with no trailing zeros (the zero polynomial is empty).
template <class K>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(const K& c) {
        if (!kis_zero(c)) c_.push_back(c);
    }

    static UniPoly monomial(const K& c, int k) {
        UniPoly r;
        if (kis_zero(c)) return r;
        r.c_.assign((std::size_t)k + 1, kzero_like(c));
        r.c_.back() = c;
        return r;
    }
    static UniPoly from_coeffs(std::vector<K> asc) {
        UniPoly r;
        r.c_ = std::move(asc);
        r.normalize();
        return r;
    }

    bool is_zero() const { return c_.empty(); }
    int deg() const { return (int)c_.size() - 1; }
    const K& lc() const { return c_.back(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int i) const {
        if (i < 0 || (std::size_t)i >= c_.size())
            return c_.empty() ? K{} : kzero_like(c_.front());
        return c_[(std::size_t)i];
    }
    // A coefficient to clone context from; only valid on nonzero polys.
    const K& model() const { return c_.front(); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    UniPoly operator+(const UniPoly& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        UniPoly r;
        const auto &a = c_, &b = o.c_;
        r.c_.reserve(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
            if (i < a.size() && i < b.size())
                r.c_.push_back(a[i] + b[i]);
            else if (i < a.size())
                r.c_.push_back(a[i]);
            else
                r.c_.push_back(b[i]);
        }
        r.normalize();
        return r;
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        UniPoly r;
        K z = kzero_like(c_.front());
        r.c_.assign(c_.size() + o.c_.size() - 1, z);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (kis_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (kis_zero(o.c_[j])) continue;
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
            }
        }
        r.normalize();
        return r;
    }
    UniPoly operator*(const K& s) const {
        if (kis_zero(s)) return UniPoly();
        UniPoly r = *this;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }
    UniPoly operator/(const K& s) const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = x / s;
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    bool operator==(const UniPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly shifted(int k) const { // multiply by x^k
        if (is_zero() || k == 0) return *this;
        UniPoly r;
        r.c_.assign((std::size_t)k, kzero_like(c_.front()));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    UniPoly derivative() const {
        UniPoly r;
        if (c_.size() <= 1) return r;
        r.c_.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(c_[i] * kfrom_int_like((long)i, c_[i]));
        r.normalize();
        return r;
    }

    K eval(const K& x) const {
        if (is_zero()) return kzero_like(x);
        K acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly pow(unsigned long e) const {
        if (e == 0) {
            if (is_zero()) throw std::domain_error("UniPoly::pow: 0^0 without context");
            return UniPoly(kone_like(c_.front()));
        }
        UniPoly acc, base = *this;
        bool first = true;
        while (e) {
            if (e & 1) {
                acc = first ? base : acc * base;
                first = false;
            }
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this / lc();
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (kis_zero(c_[i])) continue;
            if (!out.empty()) out += " + ";
            out += "(" + kstr(c_[i]) + ")";
            if (i > 0) {
                out += "*" + var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void normalize() {
        while (!c_.empty() && kis_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
std::pair<UniPoly<K>, UniPoly<K>> divrem(const UniPoly<K>& a, const UniPoly<K>& b) {
    if (b.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    if (a.deg() < b.deg()) return {UniPoly<K>(), a};
    std::vector<K> rem(a.coeffs());
    K z = kzero_like(b.lc());
    std::vector<K> quo((std::size_t)(a.deg() - b.deg()) + 1, z);
    const auto& bc = b.coeffs();
    for (int i = a.deg() - b.deg(); i >= 0; --i) {
        K q = rem[(std::size_t)(i + b.deg())] / b.lc();
        quo[(std::size_t)i] = q;
        if (kis_zero(q)) continue;
        for (int j = 0; j <= b.deg(); ++j)
            rem[(std::size_t)(i + j)] = rem[(std::size_t)(i + j)] - q * bc[(std::size_t)j];
    }
    rem.resize((std::size_t)std::max(b.deg(), 0));
    return {UniPoly<K>::from_coeffs(std::move(quo)), UniPoly<K>::from_coeffs(std::move(rem))};
}

template <class K>
UniPoly<K> exact_div(const UniPoly<K>& a, const UniPoly<K>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("exact_div: nonzero remainder");
    return q;
}

template <class K>
bool divides(const UniPoly<K>& b, const UniPoly<K>& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    if (a.deg() < b.deg()) return false;
    return divrem(a, b).second.is_zero();
}

// Monic gcd by the Euclidean algorithm; any field K.
template <class K>
UniPoly<K> gcd_euclid(UniPoly<K> a, UniPoly<K> b) {
    while (!b.is_zero()) {
        auto r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Fast gcd over Q via integer polynomials and modular images (unipoly.cpp).
UniPoly<Rat> gcd_rat(const UniPoly<Rat>& a, const UniPoly<Rat>& b);

template <class K>
UniPoly<K> gcd(const UniPoly<K>& a, const UniPoly<K>& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if constexpr (std::is_same_v<K, Rat>)
        return gcd_rat(a, b);
    else
        return gcd_euclid(a, b);
}

// Yun's squarefree decomposition (characteristic zero): returns the list of
// (monic squarefree factor, multiplicity) with multiplicities increasing;
// trivial factors are skipped. Product of f_i^{m_i} equals input up to lc.
template <class K>
std::vector<std::pair<UniPoly<K>, int>> squarefree_decomposition(const UniPoly<K>& f) {
    std::vector<std::pair<UniPoly<K>, int>> out;
    if (f.deg() <= 0) return out;
    UniPoly<K> a = f.monic();
    UniPoly<K> g = gcd(a, a.derivative());
    UniPoly<K> w = exact_div(a, g);
    int mult = 1;
    while (w.deg() > 0) {
        UniPoly<K> y = gcd(w, g);
        UniPoly<K> piece = exact_div(w, y);
        if (piece.deg() > 0) out.emplace_back(piece, mult);
        w = std::move(y);
        g = exact_div(g, w);
        ++mult;
    }
    return out;
}

template <class K>
UniPoly<K> squarefree_part(const UniPoly<K>& f) {
    if (f.deg() <= 0) return f.monic();
    return exact_div(f.monic(), gcd(f, f.derivative()));
}

// Exact k-th root of a monic polynomial (characteristic zero): the monic P
// with P^k == m, found coefficient by coefficient from the top and certified
// by expanding P^k again. Throws std::domain_error when m is not a perfect
// k-th power.
template <class K>
UniPoly<K> exact_poly_root(const UniPoly<K>& m, long k) {
    if (k <= 0) throw std::invalid_argument("exact_poly_root: exponent must be positive");
    if (m.is_zero() || k == 1) return m;
    K one = kone_like(m.lc());
    if (!kis_zero(m.lc() - one)) throw std::domain_error("exact_poly_root: input is not monic");
    if (m.deg() % k != 0) throw std::domain_error("exact_poly_root: degree not divisible by the exponent");
    long d = m.deg() / (int)k;
    K kk = kfrom_int_like(k, one);
    UniPoly<K> p = UniPoly<K>::monomial(one, (int)d);
    // The coefficient of x^(kd-j) in P^k is k*p_{d-j} plus terms in the
    // already-fixed higher coefficients, so each step is a linear solve.
    for (long j = 1; j <= d; ++j) {
        UniPoly<K> r = p.pow((unsigned long)k);
        K delta = m.coeff((int)(k * d - j)) - r.coeff((int)(k * d - j));
        if (!kis_zero(delta)) p += UniPoly<K>::monomial(delta / kk, (int)(d - j));
    }
    if (p.pow((unsigned long)k) != m) throw std::domain_error("exact_poly_root: not a perfect power");
    return p;
}

// Lagrange interpolation through distinct nodes xs: the unique polynomial of
// degree < xs.size() with p(xs[i]) == ys[i].
template <class K>
UniPoly<K> lagrange_interpolate(const std::vector<K>& xs, const std::vector<K>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("lagrange_interpolate: size mismatch");
    if (xs.empty()) return UniPoly<K>();
    // Newton form: divided differences, then expand.
    std::vector<K> dd = ys;
    for (std::size_t level = 1; level < xs.size(); ++level)
        for (std::size_t i = xs.size(); i-- > level;) {
            K denom = xs[i] - xs[i - level];
            if (kis_zero(denom))
                throw std::invalid_argument("lagrange_interpolate: repeated node");
            dd[i] = (dd[i] - dd[i - 1]) / denom;
        }
    UniPoly<K> acc(dd.back());
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
        UniPoly<K> shift = UniPoly<K>::from_coeffs({-xs[i], kone_like(xs[i])});
        acc = acc * shift + UniPoly<K>(dd[i]);
    }
    return acc;
}

// Homogenized evaluation: deg_bound >= deg(a); returns
// sum a_i * N^i * D^{deg_bound - i}, i.e. D^deg_bound * a(N/D).
template <class K>
UniPoly<K> homogeneous_eval(const UniPoly<K>& a, const UniPoly<K>& num, const UniPoly<K>& den,
                            int deg_bound) {
    if (a.is_zero()) return UniPoly<K>();
    if (deg_bound < a.deg()) throw std::invalid_argument("homogeneous_eval: bound below degree");
    UniPoly<K> acc(a.coeff(a.deg()));
    for (int i = a.deg() - 1; i >= 0; --i) {
        acc = acc * num;
        UniPoly<K> term(a.coeff(i));
        if (!term.is_zero()) acc = acc + term * den.pow((unsigned long)(a.deg() - i));
    }
    if (deg_bound > a.deg()) acc = acc * den.pow((unsigned long)(deg_bound - a.deg()));
    return acc;
}

// ---- integer polynomial layer (used by the fast rational gcd and lifting) --

using ZPoly = std::vector<Int>; // ascending, no trailing zeros

void zp_normalize(ZPoly& a);
int zp_deg(const ZPoly& a);
Int zp_content(const ZPoly& a);            // nonnegative; 0 for zero poly
ZPoly zp_primitive(const ZPoly& a);        // content removed, sign of lc kept
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
bool zp_divides(const ZPoly& d, const ZPoly& a, ZPoly* quotient = nullptr);
UniPoly<Fp> zp_mod_p(const ZPoly& a, std::uint64_t p);

// Primitive gcd over Z by Brown's modular algorithm (CRT images, symmetric
// lift, division check). Deterministic for fixed inputs.
ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);

// One-prime coprimality certificate: true means provably coprime over Q
// (gcd of the mod-p images has degree 0 and p divides neither leading
// coefficient); false is inconclusive.
bool zp_coprime_probe(const ZPoly& a, const ZPoly& b, std::uint64_t p);

// Conversions. rat_to_z scales by the lcm of denominators (returned in den).
ZPoly rat_poly_to_z(const UniPoly<Rat>& a, Int* den = nullptr);
UniPoly<Rat> z_to_rat_poly(const ZPoly& a);

} // namespace ramcov
