#pragma once

#include <vector>

#include "ramcov/unipoly.hpp"

namespace ramcov {

// Truncated power series: coefficients of x^0 .. x^(order-1) over a field K.
// Binary operations truncate to the shorter operand's order.
template <class K>
class Series {
public:
    Series() = default;
    Series(std::vector<K> coeffs) : c_(std::move(coeffs)) {}
    static Series constant(const K& v, std::size_t order) {
        std::vector<K> c(order, kzero_like(v));
        if (order) c[0] = v;
        return Series(std::move(c));
    }
    static Series from_poly(const UniPoly<K>& p, std::size_t order, const K& model) {
        std::vector<K> c(order, kzero_like(model));
        for (std::size_t i = 0; i < order; ++i)
            if ((int)i <= p.deg()) c[i] = p.coeff((int)i);
        return Series(std::move(c));
    }

    std::size_t order() const { return c_.size(); }
    const K& coeff(std::size_t i) const { return c_.at(i); }
    const std::vector<K>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!kis_zero(x)) return false;
        return true;
    }

    Series truncated(std::size_t order) const {
        std::vector<K> c(c_.begin(), c_.begin() + (std::ptrdiff_t)std::min(order, c_.size()));
        return Series(std::move(c));
    }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Series operator+(const Series& o) const {
        std::size_t n = std::min(order(), o.order());
        std::vector<K> c;
        c.reserve(n);
        for (std::size_t i = 0; i < n; ++i) c.push_back(c_[i] + o.c_[i]);
        return Series(std::move(c));
    }
    Series operator-(const Series& o) const { return *this + (-o); }
    Series operator*(const Series& o) const {
        std::size_t n = std::min(order(), o.order());
        if (n == 0) return Series();
        K z = kzero_like(c_[0]);
        std::vector<K> c(n, z);
        for (std::size_t i = 0; i < n; ++i) {
            if (kis_zero(c_[i])) continue;
            for (std::size_t j = 0; i + j < n && j < o.c_.size(); ++j) {
                if (kis_zero(o.c_[j])) continue;
                c[i + j] = c[i + j] + c_[i] * o.c_[j];
            }
        }
        return Series(std::move(c));
    }
    Series operator*(const K& s) const {
        Series r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    // Multiplicative inverse; requires a unit constant term.
    Series inverse() const {
        if (c_.empty() || kis_zero(c_[0]))
            throw std::domain_error("Series::inverse: constant term is zero");
        std::vector<K> r(c_.size(), kzero_like(c_[0]));
        K u = kone_like(c_[0]) / c_[0];
        r[0] = u;
        for (std::size_t n = 1; n < c_.size(); ++n) {
            K s = kzero_like(c_[0]);
            for (std::size_t k = 1; k <= n; ++k)
                if (k < c_.size()) s = s + c_[k] * r[n - k];
            r[n] = -(s * u);
        }
        return Series(std::move(r));
    }
    Series operator/(const Series& o) const { return *this * o.inverse(); }

    // Composition f(g) for g with zero constant term.
    Series compose(const Series& g) const {
        std::size_t n = std::min(order(), g.order());
        if (n == 0) return Series();
        if (!kis_zero(g.c_[0]))
            throw std::domain_error("Series::compose: inner series must vanish at 0");
        K z = kzero_like(c_[0]);
        Series acc = Series::constant(z, n); // zero
        Series gt = g.truncated(n);
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * gt;
            std::vector<K> add(n, z);
            add[0] = c_[i];
            acc = acc + Series(std::move(add));
        }
        return acc;
    }

    bool operator==(const Series& o) const {
        if (order() != o.order()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }

private:
    std::vector<K> c_;
};

// Gauss hypergeometric series 2F1(a, b; c; x) truncated to `order` terms,
// coefficients embedded into K via the model element. Term ratio:
// t_{k+1}/t_k = (a+k)(b+k) / ((c+k)(k+1)).
template <class K>
Series<K> hpg_series(const Rat& a, const Rat& b, const Rat& c, std::size_t order, const K& model) {
    std::vector<K> coeffs;
    coeffs.reserve(order);
    Rat term(1);
    for (std::size_t k = 0; k < order; ++k) {
        coeffs.push_back(kfrom_rat_like(term, model));
        Rat kk((long)k);
        Rat denom = (c + kk) * (kk + 1);
        if (sgn(denom) == 0)
            throw std::domain_error("hpg_series: lower parameter hit a nonpositive integer");
        term = term * (a + kk) * (b + kk) / denom;
    }
    return Series<K>(std::move(coeffs));
}

// Binomial series (1 + u*x)^e for rational exponent e.
template <class K>
Series<K> binomial_series(const K& u, const Rat& e, std::size_t order) {
    std::vector<K> coeffs;
    coeffs.reserve(order);
    Rat binom(1);
    K upow = kone_like(u);
    for (std::size_t k = 0; k < order; ++k) {
        coeffs.push_back(kfrom_rat_like(binom, u) * upow);
        binom = binom * (e - Rat((long)k)) / Rat((long)k + 1);
        upow = upow * u;
    }
    return Series<K>(std::move(coeffs));
}

} // namespace ramcov
