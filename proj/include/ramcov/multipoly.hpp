#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ramcov/unipoly.hpp"

namespace ramcov {

// Variable table shared by all polynomials of one ring: names plus the
// weights used for weighted degrees.
struct VarTable {
    std::vector<std::string> names;
    std::vector<int> weights;

    std::size_t size() const { return names.size(); }
    int index(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return (int)i;
        return -1;
    }
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_var_table(std::vector<std::string> names, std::vector<int> weights) {
    if (names.size() != weights.size())
        throw std::invalid_argument("make_var_table: names/weights size mismatch");
    auto t = std::make_shared<VarTable>();
    t->names = std::move(names);
    t->weights = std::move(weights);
    return t;
}

using Exp = std::vector<std::uint16_t>; // one exponent per table variable

inline long weighted_degree(const Exp& e, const VarTable& vars) {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += (long)e[i] * vars.weights[i];
    return d;
}

inline bool exp_divides(const Exp& a, const Exp& b) { // a | b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exp exp_mul(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (std::uint16_t)(a[i] + b[i]);
    return r;
}

inline Exp exp_div(const Exp& a, const Exp& b) { // a / b, assumes b | a
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (std::uint16_t)(a[i] - b[i]);
    return r;
}

inline Exp exp_lcm(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

// Sparse multivariate polynomial over a field K. Terms are kept in a map
// with lexicographic key order (fixed, independent of any monomial order an
// algorithm may impose); coefficients are always nonzero.
template <class K>
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static MultiPoly zero(VarTablePtr vars) { return MultiPoly(std::move(vars)); }
    static MultiPoly constant(VarTablePtr vars, const K& c) {
        MultiPoly r(std::move(vars));
        if (!kis_zero(c)) r.terms_[Exp(r.vars_->size(), 0)] = c;
        return r;
    }
    static MultiPoly monomial(VarTablePtr vars, const Exp& e, const K& c) {
        MultiPoly r(std::move(vars));
        if (e.size() != r.vars_->size())
            throw std::invalid_argument("MultiPoly::monomial: exponent size mismatch");
        if (!kis_zero(c)) r.terms_[e] = c;
        return r;
    }
    static MultiPoly variable(VarTablePtr vars, int i, const K& one) {
        Exp e(vars->size(), 0);
        e[(std::size_t)i] = 1;
        return monomial(std::move(vars), e, one);
    }

    const VarTablePtr& vars() const { return vars_; }
    const std::map<Exp, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (auto v : terms_.begin()->first)
            if (v) return false;
        return true;
    }
    K constant_coeff(const K& zero_model) const {
        Exp e(vars_->size(), 0);
        auto it = terms_.find(e);
        return it == terms_.end() ? kzero_like(zero_model) : it->second;
    }

    long wdeg() const { // -1 for the zero polynomial
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, weighted_degree(e, *vars_));
        return d;
    }
    bool is_weighted_homogeneous() const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long w = weighted_degree(e, *vars_);
            if (d == -1) d = w;
            else if (d != w) return false;
        }
        return true;
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, (int)e[(std::size_t)var]);
        return d;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        check_vars(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }
    MultiPoly operator*(const MultiPoly& o) const {
        if (is_zero()) return *this;
        if (o.is_zero()) return o;
        check_vars(o);
        MultiPoly r(vars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) r.add_term(exp_mul(e1, e2), c1 * c2);
        return r;
    }
    MultiPoly operator*(const K& s) const {
        if (kis_zero(s)) return MultiPoly(vars_);
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = c * s;
        return r;
    }
    MultiPoly operator/(const K& s) const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = c / s;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin(), jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (it->first != jt->first || !(it->second == jt->second)) return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly pow(unsigned long n) const {
        if (n == 0) {
            if (is_zero()) throw std::domain_error("MultiPoly::pow: 0^0 without context");
            return constant(vars_, kone_like(terms_.begin()->second));
        }
        MultiPoly acc, base = *this;
        bool first = true;
        while (n) {
            if (n & 1) {
                acc = first ? base : acc * base;
                first = false;
            }
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            int k = e[(std::size_t)var];
            if (k == 0) continue;
            Exp e2 = e;
            e2[(std::size_t)var] = (std::uint16_t)(k - 1);
            r.add_term(e2, c * kfrom_int_like(k, c));
        }
        return r;
    }

    // Substitute one variable by a polynomial of the same ring.
    MultiPoly subst_var(int var, const MultiPoly& value) const {
        check_vars(value);
        MultiPoly r(vars_);
        std::vector<MultiPoly> powers; // value^0, value^1, ...
        for (const auto& [e, c] : terms_) {
            int k = e[(std::size_t)var];
            while ((int)powers.size() <= k) {
                if (powers.empty())
                    powers.push_back(constant(vars_, kone_like(c)));
                else
                    powers.push_back(powers.back() * value);
            }
            Exp e2 = e;
            e2[(std::size_t)var] = 0;
            r += monomial(vars_, e2, c) * powers[(std::size_t)k];
        }
        return r;
    }

    // Full evaluation into a ring R: embed maps K into R, vals gives the
    // image of every variable.
    template <class R, class Embed>
    R eval_full(const std::vector<R>& vals, Embed&& embed, const R& zero) const {
        R acc = zero;
        for (const auto& [e, c] : terms_) {
            R term = embed(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < (int)e[i]; ++k) term = term * vals[i];
            acc = acc + term;
        }
        return acc;
    }

    // Coefficients of powers of one variable (that variable removed).
    std::map<int, MultiPoly> collect_in(int var) const {
        std::map<int, MultiPoly> out;
        for (const auto& [e, c] : terms_) {
            int k = e[(std::size_t)var];
            Exp e2 = e;
            e2[(std::size_t)var] = 0;
            auto it = out.find(k);
            if (it == out.end()) it = out.emplace(k, MultiPoly(vars_)).first;
            it->second.add_term(e2, c);
        }
        return out;
    }

    // Largest term in plain lexicographic key order (used by exact division).
    const std::pair<const Exp, K>& lex_leading() const {
        if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no terms");
        return *terms_.rbegin();
    }

    void add_term(const Exp& e, const K& c) {
        if (kis_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (kis_zero(it->second)) terms_.erase(it);
        }
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += "(" + kstr(it->second) + ")";
            for (std::size_t i = 0; i < it->first.size(); ++i) {
                if (it->first[i] == 0) continue;
                out += "*" + vars_->names[i];
                if (it->first[i] > 1) out += "^" + std::to_string(it->first[i]);
            }
        }
        return out;
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (vars_ != o.vars_ && !(vars_ && o.vars_ && vars_->names == o.vars_->names &&
                                  vars_->weights == o.vars_->weights))
            throw std::logic_error("MultiPoly: mixing distinct variable tables");
    }

    VarTablePtr vars_;
    std::map<Exp, K> terms_;
};

// Exact division in K[x1..xn]: returns q with a = q*b, throws when b does
// not divide a. Works by cancelling lex-leading terms, which is valid in any
// monomial order, so no order object is needed.
template <class K>
MultiPoly<K> exact_div(const MultiPoly<K>& a, const MultiPoly<K>& b) {
    if (b.is_zero()) throw std::domain_error("MultiPoly exact_div: division by zero");
    MultiPoly<K> rem = a, quo(a.vars());
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.lex_leading();
        const auto& [be, bc] = b.lex_leading();
        if (!exp_divides(be, re))
            throw std::domain_error("MultiPoly exact_div: not divisible");
        Exp qe = exp_div(re, be);
        K qc = rc / bc;
        MultiPoly<K> t = MultiPoly<K>::monomial(a.vars(), qe, qc);
        quo += t;
        rem -= t * b;
    }
    return quo;
}

template <class K>
bool try_exact_div(const MultiPoly<K>& a, const MultiPoly<K>& b, MultiPoly<K>* quotient) {
    if (b.is_zero()) return false;
    MultiPoly<K> rem = a, quo(a.vars());
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.lex_leading();
        const auto& [be, bc] = b.lex_leading();
        if (!exp_divides(be, re)) return false;
        MultiPoly<K> t = MultiPoly<K>::monomial(a.vars(), exp_div(re, be), rc / bc);
        quo += t;
        rem -= t * b;
    }
    if (quotient) *quotient = std::move(quo);
    return true;
}

// Positive rational content (gcd of numerators over lcm of denominators).
Rat content_rat(const MultiPoly<Rat>& p);
inline MultiPoly<Rat> primitive_part(const MultiPoly<Rat>& p) {
    if (p.is_zero()) return p;
    return p / content_rat(p);
}

} // namespace ramcov
