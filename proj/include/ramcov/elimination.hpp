#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramcov/fp.hpp"
#include "ramcov/multipoly.hpp"
#include "ramcov/ratfunc.hpp"
#include "ramcov/unipoly.hpp"

namespace ramcov {

// ---------------------------------------------------------------------------
// Monomial order: weighted total degree, ties broken reverse-lexicographically
// along an explicit variable precedence list (highest-precedence first).
//
// With grevlex the least-precedence variable z has the property that, for a
// weighted-homogeneous polynomial, z divides the leading term iff z divides
// the whole polynomial. detect_divisible relies on this.
// ---------------------------------------------------------------------------
struct MonomialOrder {
    VarTablePtr vars;
    std::vector<int> precedence; // permutation of 0..n-1, highest precedence first

    long wdeg(const Exp& e) const { return weighted_degree(e, *vars); }

    // +1 if a comes after b in the term order (a is "larger"), -1 if smaller.
    int compare(const Exp& a, const Exp& b) const {
        long da = wdeg(a), db = wdeg(b);
        if (da != db) return da < db ? -1 : 1;
        // reverse lexicographic: scan from the least-precedence variable; the
        // first variable with differing exponent decides, larger exponent
        // meaning a *smaller* monomial.
        for (auto it = precedence.rbegin(); it != precedence.rend(); ++it) {
            std::uint16_t ea = a[(std::size_t)*it], eb = b[(std::size_t)*it];
            if (ea != eb) return ea > eb ? -1 : 1;
        }
        return 0;
    }
    bool greater(const Exp& a, const Exp& b) const { return compare(a, b) > 0; }

    int least_variable() const { return precedence.back(); }
};

// Build an order from variable names listed highest-precedence first. Every
// variable of the table must appear exactly once.
MonomialOrder make_order(const VarTablePtr& vars, const std::vector<std::string>& names_desc);

template <class K>
Exp order_leading_exp(const MultiPoly<K>& f, const MonomialOrder& ord) {
    if (f.is_zero()) throw std::domain_error("order_leading_exp: zero polynomial");
    const Exp* best = nullptr;
    for (const auto& [e, c] : f.terms())
        if (!best || ord.greater(e, *best)) best = &e;
    return *best;
}

// ---------------------------------------------------------------------------
// Resultants via the Sylvester matrix, evaluated by fraction-free (Bareiss)
// elimination so only exact divisions occur. Works over any integral domain
// given a division functor.
// ---------------------------------------------------------------------------
template <class R, class Div, class IsZero>
R bareiss_determinant(std::vector<std::vector<R>> m, R one, Div div, IsZero iszero) {
    std::size_t n = m.size();
    if (n == 0) return one;
    R denom = one;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && iszero(m[piv][k])) ++piv;
        if (piv == n) return m[0][0] - m[0][0]; // a zero column: determinant 0
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = div(m[k][k] * m[i][j] - m[i][k] * m[k][j], denom);
            m[i][k] = m[k][k] - m[k][k]; // zero of the ring
        }
        denom = m[k][k];
    }
    R det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// f, g as ascending coefficient vectors of length deg+1 (nonzero lead).
template <class R, class Div, class IsZero>
R sylvester_resultant(const std::vector<R>& f, const std::vector<R>& g, R zero, R one, Div div,
                      IsZero iszero) {
    std::size_t m = f.size() - 1, n = g.size() - 1;
    if (m == 0 && n == 0)
        throw std::invalid_argument("resultant: both inputs are constant");
    std::size_t size = m + n;
    std::vector<std::vector<R>> mat(size, std::vector<R>(size, zero));
    for (std::size_t r = 0; r < n; ++r) // n rows of f coefficients
        for (std::size_t j = 0; j <= m; ++j) mat[r][r + m - j] = f[j];
    for (std::size_t r = 0; r < m; ++r) // m rows of g coefficients
        for (std::size_t j = 0; j <= n; ++j) mat[n + r][r + n - j] = g[j];
    return bareiss_determinant(std::move(mat), one, div, iszero);
}

// Resultant of univariate polynomials over a field.
template <class K>
K resultant(const UniPoly<K>& f, const UniPoly<K>& g) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant: inputs must be nonzero");
    std::vector<K> fc, gc;
    for (int i = 0; i <= f.deg(); ++i) fc.push_back(f.coeff(i));
    for (int i = 0; i <= g.deg(); ++i) gc.push_back(g.coeff(i));
    K one = kone_like(fc.back());
    K zero = kzero_like(fc.back());
    return sylvester_resultant(
        fc, gc, zero, one, [](const K& a, const K& b) { return a / b; },
        [](const K& a) { return kis_zero(a); });
}

// Resultant of two multivariate polynomials with respect to one variable;
// the result no longer involves that variable.
template <class K>
MultiPoly<K> resultant_in_var(const MultiPoly<K>& f, const MultiPoly<K>& g, int var) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant_in_var: inputs must be nonzero");
    using R = MultiPoly<K>;
    auto coeffs = [&](const R& p) {
        std::vector<R> asc((std::size_t)p.degree_in(var) + 1, R::zero(p.vars()));
        for (auto& [k, c] : p.collect_in(var)) asc[(std::size_t)k] = c;
        return asc;
    };
    const K& model = f.terms().begin()->second;
    R zero = R::zero(f.vars());
    R one = R::constant(f.vars(), kone_like(model));
    return sylvester_resultant(
        coeffs(f), coeffs(g), zero, one, [](const R& a, const R& b) { return exact_div(a, b); },
        [](const R& a) { return a.is_zero(); });
}

// ---------------------------------------------------------------------------
// Linear elimination: the equations must be jointly linear in the selected
// variables (every monomial contains at most one of them, to the first
// power). With r the rank of the coefficient matrix, each subset of r + 1
// equations contributes the determinant of its bordered coefficient matrix
// as a variable-free eliminant, with the cofactor expansion as an explicit
// combination certificate over the full ring:
//   sum_j certificate[j]*eqs[j] == content * eliminant.
// ---------------------------------------------------------------------------
struct LinearEliminant {
    MultiPoly<Rat> eliminant; // primitive: rational content removed
    Rat content;              // raw combination value = content * eliminant
    std::vector<MultiPoly<Rat>> certificate;
};

struct LinearEliminationResult {
    std::vector<LinearEliminant> eliminants;
    std::vector<int> pivot_vars; // variables that actually received a pivot
};

LinearEliminationResult linear_eliminate(const std::vector<MultiPoly<Rat>>& eqs,
                                         const std::vector<int>& vars);

bool check_linear_certificate(const std::vector<MultiPoly<Rat>>& eqs, const LinearEliminant& el);

// Divide out listed polynomial factors (with multiplicity) and the rational
// content. Used to discard degenerate-solution components of eliminants.
struct FactorStrip {
    MultiPoly<Rat> stripped;
    std::vector<std::pair<MultiPoly<Rat>, int>> removed;
};
FactorStrip strip_factors(const MultiPoly<Rat>& p, const std::vector<MultiPoly<Rat>>& factors);

// Gcd of bivariate polynomials (only main_var and param_var alive) by
// evaluation and interpolation: specialize param_var at rational points,
// take fast univariate gcds in main_var, normalize leading coefficients by
// the exact gcd of the inputs' leading coefficients, interpolate, and strip
// the param-content.  The result is the gcd over Q(param)[main] made
// primitive in Q[param][main]; a common factor involving only param_var is
// param-content and is deliberately not part of it.  Certified by exact
// trial division into every input; a Euclidean descent over Q(param) is
// never run, so coefficient blowup cannot occur.
MultiPoly<Rat> interpolated_gcd(const std::vector<MultiPoly<Rat>>& polys, int main_var,
                                int param_var);

// ---------------------------------------------------------------------------
// Degree-bounded Buchberger over a prime field.
// ---------------------------------------------------------------------------
struct GradedIdeal {
    std::vector<MultiPoly<Fp>> generators; // weighted-homogeneous
    MonomialOrder order;
    long degree_bound = 0;
};

struct BoundedBasis {
    std::vector<MultiPoly<Fp>> basis;     // monic, minimal, tail-reduced
    std::map<long, long> basis_by_degree; // wdeg -> count of basis elements
    std::map<long, long> quotient_dims;   // wdeg in 0..bound -> dim (R/J)_wdeg
    MonomialOrder order;
    long degree_bound = 0;
};

BoundedBasis buchberger_bounded(const GradedIdeal& ideal);

// Full normal form against a basis (leading and lower terms reduced).
MultiPoly<Fp> normal_form(const MultiPoly<Fp>& f, const std::vector<MultiPoly<Fp>>& basis,
                          const MonomialOrder& order);

// Monomial counts of the free ring per weighted degree 0..bound.
std::map<long, long> free_ring_dims(const VarTablePtr& vars, long bound);

// Plain-text aligned columns: degree, free-ring dimension, basis elements up
// to that degree, quotient dimension.
std::string hilbert_table(const BoundedBasis& basis, long from_deg, long to_deg);

// Basis elements whose leading term the factor's leading term divides,
// divided exactly by the factor. An inexact division despite the leading-term
// match signals that the order does not have the divisibility property for
// this factor.
std::vector<MultiPoly<Fp>> detect_divisible(const std::vector<MultiPoly<Fp>>& basis,
                                            const MonomialOrder& order,
                                            const MultiPoly<Fp>& factor);

// ---------------------------------------------------------------------------
// Syzygies A*U2 + B*V2 + C*W2 = 0 in prescribed degree windows.
//
// By default Delta = deg A + deg B + deg C + delta (required even); a caller
// may prescribe a different even Delta to widen or narrow the windows. With
// a = deg A, b = deg B, c = deg C the component degree caps are
//   delta = 0:  deg U2 <= Delta/2 - a, deg V2 <= Delta/2 - b,
//               deg W2 <= Delta/2 - c - 1;
//   delta > 0:  deg U2 <= floor((Delta+delta)/2) - a - 1,
//               deg V2 <= floor((Delta+delta)/2) - b - 1,
//               deg W2 <= floor((Delta-delta)/2) - c.
// ---------------------------------------------------------------------------
template <class K>
struct SyzygyT {
    UniPoly<K> U2, V2, W2;
    UniPoly<K> A, B, C;
    long delta = 0;
    long Delta = 0;
    int nullity = 0; // dimension of the solution space inside the window
};
using Syzygy = SyzygyT<Qt>;

template <class K>
SyzygyT<K> syzygy_solve(const UniPoly<K>& A, const UniPoly<K>& B, const UniPoly<K>& C,
                        long delta, long Delta_override = -1) {
    if (A.is_zero() || B.is_zero() || C.is_zero())
        throw std::invalid_argument("syzygy_solve: A, B, C must be nonzero");
    if (delta < 0) throw std::invalid_argument("syzygy_solve: delta must be nonnegative");
    long a = A.deg(), b = B.deg(), c = C.deg();
    long Delta = Delta_override >= 0 ? Delta_override : a + b + c + delta;
    if (Delta % 2 != 0)
        throw std::invalid_argument("syzygy_solve: Delta must be even");
    long du, dv, dw;
    if (delta == 0) {
        du = Delta / 2 - a;
        dv = Delta / 2 - b;
        dw = Delta / 2 - c - 1;
    } else {
        du = (Delta + delta) / 2 - a - 1;
        dv = (Delta + delta) / 2 - b - 1;
        dw = (Delta - delta) / 2 - c;
    }
    long nu = du >= 0 ? du + 1 : 0, nv = dv >= 0 ? dv + 1 : 0, nw = dw >= 0 ? dw + 1 : 0;
    long cols = nu + nv + nw;
    if (cols == 0) throw std::runtime_error("syzygy_solve: empty degree window");

    K one = kone_like(A.coeff(A.deg()));
    K kzero = kzero_like(one);
    long rows = 0;
    if (nu) rows = std::max(rows, a + du + 1);
    if (nv) rows = std::max(rows, b + dv + 1);
    if (nw) rows = std::max(rows, c + dw + 1);

    // columns: U2 coefficients, then V2, then W2; row r = coefficient of x^r
    std::vector<std::vector<K>> m((std::size_t)rows, std::vector<K>((std::size_t)cols, kzero));
    auto fill = [&](const UniPoly<K>& P, long shift_count, long col0) {
        for (long k = 0; k < shift_count; ++k)
            for (int i = 0; i <= P.deg(); ++i) m[(std::size_t)(i + k)][(std::size_t)(col0 + k)] = P.coeff(i);
    };
    fill(A, nu, 0);
    fill(B, nv, nu);
    fill(C, nw, nu + nv);

    // Gaussian elimination tracking pivot columns.
    std::vector<long> pivot_col_of_row;
    std::vector<bool> col_is_pivot((std::size_t)cols, false);
    long r = 0;
    for (long col = 0; col < cols && r < rows; ++col) {
        long pr = -1;
        for (long i = r; i < rows; ++i)
            if (!kis_zero(m[(std::size_t)i][(std::size_t)col])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[(std::size_t)r], m[(std::size_t)pr]);
        K inv = one / m[(std::size_t)r][(std::size_t)col];
        for (long j = col; j < cols; ++j)
            m[(std::size_t)r][(std::size_t)j] = m[(std::size_t)r][(std::size_t)j] * inv;
        for (long i = 0; i < rows; ++i) {
            if (i == r) continue;
            K f = m[(std::size_t)i][(std::size_t)col];
            if (kis_zero(f)) continue;
            for (long j = col; j < cols; ++j)
                m[(std::size_t)i][(std::size_t)j] =
                    m[(std::size_t)i][(std::size_t)j] - f * m[(std::size_t)r][(std::size_t)j];
        }
        pivot_col_of_row.push_back(col);
        col_is_pivot[(std::size_t)col] = true;
        ++r;
    }
    long rank = r;
    int nullity = (int)(cols - rank);
    if (nullity <= 0)
        throw std::runtime_error("syzygy_solve: no nonzero syzygy in the prescribed degree window");

    // solution from the first free column
    long free_col = -1;
    for (long j = 0; j < cols; ++j)
        if (!col_is_pivot[(std::size_t)j]) {
            free_col = j;
            break;
        }
    std::vector<K> sol((std::size_t)cols, kzero);
    sol[(std::size_t)free_col] = one;
    for (long i = 0; i < rank; ++i) {
        long pc = pivot_col_of_row[(std::size_t)i];
        sol[(std::size_t)pc] = kzero - m[(std::size_t)i][(std::size_t)free_col];
    }

    auto build = [&](long col0, long count) {
        std::vector<K> cs;
        for (long k = 0; k < count; ++k) cs.push_back(sol[(std::size_t)(col0 + k)]);
        return UniPoly<K>::from_coeffs(cs);
    };
    SyzygyT<K> s;
    s.U2 = build(0, nu);
    s.V2 = build(nu, nv);
    s.W2 = build(nu + nv, nw);
    s.A = A;
    s.B = B;
    s.C = C;
    s.delta = delta;
    s.Delta = Delta;
    s.nullity = nullity;

    // normalize: lowest-index nonzero component becomes monic
    const UniPoly<K>* lead = nullptr;
    for (const UniPoly<K>* p : {&s.U2, &s.V2, &s.W2})
        if (!p->is_zero()) {
            lead = p;
            break;
        }
    if (!lead) throw std::logic_error("syzygy_solve: produced the zero syzygy");
    K scale = one / lead->coeff(lead->deg());
    s.U2 = s.U2 * scale;
    s.V2 = s.V2 * scale;
    s.W2 = s.W2 * scale;

    if (!(A * s.U2 + B * s.V2 + C * s.W2).is_zero())
        throw std::logic_error("syzygy_solve: solution fails the exact identity check");
    return s;
}

} // namespace ramcov
