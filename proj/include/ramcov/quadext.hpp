#pragma once

#include <memory>
#include <string>

#include "ramcov/ratfunc.hpp"

namespace ramcov {

// Context of a quadratic extension Q(t)(w) with w^2 = r for a fixed
// non-square r in Q(t). Shared by all elements living in the extension.
struct QuadCtx {
    Qt radicand;
    std::string wname = "w";
};

using QuadCtxPtr = std::shared_ptr<const QuadCtx>;

inline QuadCtxPtr make_quad_ctx(Qt radicand, std::string wname = "w") {
    auto c = std::make_shared<QuadCtx>();
    c->radicand = std::move(radicand);
    c->wname = std::move(wname);
    return c;
}

// Element a + b*w of Q(t) or of a quadratic extension of it. A null context
// means the element lies in plain Q(t) (b must be zero); elements promote to
// the other operand's extension automatically, but distinct radicands clash.
class QElem {
public:
    QElem() = default;
    explicit QElem(Qt a) : a_(std::move(a)) {}
    explicit QElem(const Rat& c) : a_(Qt(c)) {}
    explicit QElem(long c) : a_(Qt(c)) {}
    QElem(Qt a, Qt b, QuadCtxPtr ctx) : a_(std::move(a)), b_(std::move(b)), ctx_(std::move(ctx)) {
        if (!ctx_ && !b_.is_zero())
            throw std::logic_error("QElem: w-part without an extension context");
    }
    static QElem w(const QuadCtxPtr& ctx) { return QElem(Qt(), Qt(Rat(1)), ctx); }

    const Qt& rational_part() const { return a_; }
    const Qt& w_part() const { return b_; }
    const QuadCtxPtr& ctx() const { return ctx_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }
    Qt require_rational(const char* what) const {
        if (!is_rational())
            throw std::domain_error(std::string(what) + ": value has a nonzero w-part");
        return a_;
    }

    QElem operator-() const { return QElem(-a_, -b_, ctx_); }
    QElem operator+(const QElem& o) const {
        return QElem(a_ + o.a_, b_ + o.b_, merged_ctx(*this, o));
    }
    QElem operator-(const QElem& o) const { return *this + (-o); }
    QElem operator*(const QElem& o) const {
        QuadCtxPtr c = merged_ctx(*this, o);
        if (b_.is_zero() && o.b_.is_zero()) return QElem(a_ * o.a_, Qt(), c);
        Qt r = c->radicand;
        return QElem(a_ * o.a_ + b_ * o.b_ * r, a_ * o.b_ + b_ * o.a_, c);
    }
    QElem inverse() const {
        if (is_zero()) throw std::domain_error("QElem: division by zero");
        if (b_.is_zero()) return QElem(Qt(Rat(1)) / a_, Qt(), ctx_);
        Qt n = a_ * a_ - b_ * b_ * ctx_->radicand;
        if (n.is_zero())
            throw std::domain_error("QElem: radicand is a square, ring is not a field");
        return QElem(a_ / n, -(b_ / n), ctx_);
    }
    QElem operator/(const QElem& o) const { return *this * o.inverse(); }
    QElem& operator+=(const QElem& o) { return *this = *this + o; }
    QElem& operator-=(const QElem& o) { return *this = *this - o; }
    QElem& operator*=(const QElem& o) { return *this = *this * o; }
    QElem& operator/=(const QElem& o) { return *this = *this / o; }

    bool operator==(const QElem& o) const {
        if (!(a_ == o.a_ && b_ == o.b_)) return false;
        if (b_.is_zero()) return true;
        return compatible(ctx_, o.ctx_);
    }
    bool operator!=(const QElem& o) const { return !(*this == o); }

    QElem conj() const { return QElem(a_, -b_, ctx_); }
    Qt norm() const { return ctx_ ? a_ * a_ - b_ * b_ * ctx_->radicand : a_ * a_; }

    // d/dt with w treated as sqrt(r(t)): w' = r'/(2r) * w.
    QElem derivative() const {
        if (b_.is_zero()) return QElem(a_.derivative(), Qt(), ctx_);
        Qt r = ctx_->radicand;
        Qt half(make_rat(1, 2));
        return QElem(a_.derivative(), b_.derivative() + b_ * r.derivative() * half / r, ctx_);
    }

    QElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QElem acc(Qt(Rat(1)), Qt(), ctx_);
        QElem base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    // Substitute t -> v(t) in both parts; the radicand transforms too, so the
    // result lives in a fresh context with radicand r(v).
    QElem subst(const Qt& v) const {
        if (b_.is_zero()) return QElem(a_.subst(v), Qt(), nullptr);
        QuadCtxPtr c = make_quad_ctx(ctx_->radicand.subst(v), ctx_->wname);
        return QElem(a_.subst(v), b_.subst(v), c);
    }

    std::string str(const std::string& var = "t") const {
        if (b_.is_zero()) return a_.str(var);
        std::string wn = ctx_ ? ctx_->wname : "w";
        if (a_.is_zero()) return "(" + b_.str(var) + ")*" + wn;
        return a_.str(var) + " + (" + b_.str(var) + ")*" + wn;
    }

    static bool compatible(const QuadCtxPtr& x, const QuadCtxPtr& y) {
        if (!x || !y || x == y) return true;
        return x->radicand == y->radicand;
    }

private:
    static QuadCtxPtr merged_ctx(const QElem& x, const QElem& y) {
        if (!x.ctx_) return y.ctx_;
        if (!y.ctx_ || x.ctx_ == y.ctx_) return x.ctx_;
        if (x.ctx_->radicand == y.ctx_->radicand) return x.ctx_;
        throw std::logic_error("QElem: mixing distinct quadratic extensions");
    }

    Qt a_;
    Qt b_;
    QuadCtxPtr ctx_;
};

inline bool kis_zero(const QElem& a) { return a.is_zero(); }
inline QElem kzero_like(const QElem& a) { return QElem(Qt(), Qt(), a.ctx()); }
inline QElem kone_like(const QElem& a) { return QElem(Qt(Rat(1)), Qt(), a.ctx()); }
inline QElem kfrom_int_like(long n, const QElem& a) { return QElem(Qt(Rat(n)), Qt(), a.ctx()); }
inline QElem kfrom_rat_like(const Rat& q, const QElem& a) { return QElem(Qt(q), Qt(), a.ctx()); }
inline std::string kstr(const QElem& a) { return a.str(); }

} // namespace ramcov
