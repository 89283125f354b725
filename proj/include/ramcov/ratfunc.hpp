#pragma once

#include <optional>
#include <string>

#include "ramcov/unipoly.hpp"

namespace ramcov {

// Element of Q(t): reduced fraction of rational-coefficient polynomials with
// monic denominator. Always kept canonical, so equality is componentwise.
class Qt {
public:
    Qt() : num_(), den_(one_poly()) {}
    explicit Qt(const Rat& c) : num_(c), den_(one_poly()) {}
    explicit Qt(long c) : num_(Rat(c)), den_(one_poly()) {}
    explicit Qt(UniPoly<Rat> n) : num_(std::move(n)), den_(one_poly()) {}
    Qt(UniPoly<Rat> n, UniPoly<Rat> d) { assign_reduced(std::move(n), std::move(d)); }

    static Qt t() { return Qt(UniPoly<Rat>::monomial(Rat(1), 1)); }

    const UniPoly<Rat>& num() const { return num_; }
    const UniPoly<Rat>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.deg() <= 0 && den_.deg() == 0; }
    bool is_polynomial() const { return den_.deg() == 0; }
    Rat constant_value() const {
        if (!is_constant()) throw std::domain_error("Qt: not a constant");
        return num_.is_zero() ? Rat(0) : num_.coeff(0);
    }

    Qt operator-() const {
        Qt r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Qt operator+(const Qt& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        return Qt(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Qt operator-(const Qt& o) const { return *this + (-o); }
    Qt operator*(const Qt& o) const {
        if (is_zero() || o.is_zero()) return Qt();
        // cross-cancel first so the final fraction is already reduced
        UniPoly<Rat> g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
        UniPoly<Rat> n = exact_div(num_, g1) * exact_div(o.num_, g2);
        UniPoly<Rat> d = exact_div(den_, g2) * exact_div(o.den_, g1);
        Qt r;
        Rat lead = d.lc();
        r.num_ = n / lead;
        r.den_ = d / lead;
        return r;
    }
    Qt operator/(const Qt& o) const {
        if (o.is_zero()) throw std::domain_error("Qt: division by zero");
        Qt inv;
        inv.num_ = o.den_;
        inv.den_ = o.num_;
        Rat lead = inv.den_.lc();
        inv.num_ = inv.num_ / lead;
        inv.den_ = inv.den_ / lead;
        return *this * inv;
    }
    Qt& operator+=(const Qt& o) { return *this = *this + o; }
    Qt& operator-=(const Qt& o) { return *this = *this - o; }
    Qt& operator*=(const Qt& o) { return *this = *this * o; }
    Qt& operator/=(const Qt& o) { return *this = *this / o; }

    bool operator==(const Qt& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Qt& o) const { return !(*this == o); }

    Qt derivative() const {
        if (is_polynomial()) return Qt(num_.derivative()); // den is monic, so it is 1
        return Qt(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    Qt pow(long e) const {
        if (e == 0) return Qt(Rat(1));
        if (e < 0) return (Qt(Rat(1)) / *this).pow(-e);
        Qt r;
        r.num_ = num_.pow((unsigned long)e);
        r.den_ = den_.pow((unsigned long)e);
        return r; // powers of a reduced fraction stay reduced
    }

    // Evaluate at a rational point; nullopt when the denominator vanishes.
    std::optional<Rat> eval(const Rat& t0) const {
        Rat d = den_.eval(t0);
        if (sgn(d) == 0) return std::nullopt;
        return num_.eval(t0) / d;
    }

    // Substitute t -> v(t) for a rational function v.
    Qt subst(const Qt& v) const {
        if (is_zero()) return Qt();
        int p = num_.deg(), q = den_.deg();
        UniPoly<Rat> hn = homogeneous_eval(num_, v.num_, v.den_, p);
        UniPoly<Rat> hd = homogeneous_eval(den_, v.num_, v.den_, q);
        if (q > p)
            return Qt(hn * v.den_.pow((unsigned long)(q - p)), hd);
        if (p > q)
            return Qt(hn, hd * v.den_.pow((unsigned long)(p - q)));
        return Qt(hn, hd);
    }

    std::string str(const std::string& var = "t") const {
        if (is_polynomial()) {
            if (den_.coeff(0) == Rat(1)) return num_.str(var);
            return "(" + num_.str(var) + ")/(" + rat_str(den_.coeff(0)) + ")";
        }
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    static const UniPoly<Rat>& one_poly() {
        static const UniPoly<Rat> one{Rat(1)};
        return one;
    }
    void assign_reduced(UniPoly<Rat> n, UniPoly<Rat> d) {
        if (d.is_zero()) throw std::domain_error("Qt: zero denominator");
        if (n.is_zero()) {
            num_ = UniPoly<Rat>();
            den_ = one_poly();
            return;
        }
        if (d.deg() > 0) {
            UniPoly<Rat> g = gcd(n, d);
            if (g.deg() > 0) {
                n = exact_div(n, g);
                d = exact_div(d, g);
            }
        }
        Rat lead = d.lc();
        num_ = n / lead;
        den_ = d / lead;
    }

    UniPoly<Rat> num_;
    UniPoly<Rat> den_; // monic
};

inline bool kis_zero(const Qt& a) { return a.is_zero(); }
inline Qt kzero_like(const Qt&) { return Qt(); }
inline Qt kone_like(const Qt&) { return Qt(Rat(1)); }
inline Qt kfrom_int_like(long n, const Qt&) { return Qt(Rat(n)); }
inline Qt kfrom_rat_like(const Rat& q, const Qt&) { return Qt(q); }
inline std::string kstr(const Qt& a) { return a.str(); }

} // namespace ramcov
