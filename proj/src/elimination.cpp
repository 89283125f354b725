#include "ramcov/elimination.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <tuple>

namespace ramcov {

MonomialOrder make_order(const VarTablePtr& vars, const std::vector<std::string>& names_desc) {
    if (!vars) throw std::invalid_argument("make_order: null variable table");
    if (names_desc.size() != vars->size())
        throw std::invalid_argument("make_order: precedence list must cover every variable");
    MonomialOrder ord;
    ord.vars = vars;
    std::vector<bool> seen(vars->size(), false);
    for (const auto& name : names_desc) {
        int i = vars->index(name);
        if (i < 0) throw std::invalid_argument("make_order: unknown variable " + name);
        if (seen[(std::size_t)i]) throw std::invalid_argument("make_order: duplicate variable " + name);
        seen[(std::size_t)i] = true;
        ord.precedence.push_back(i);
    }
    return ord;
}

// ---------------------------------------------------------------------------
// linear elimination
// ---------------------------------------------------------------------------
namespace {

Rat rat_gcd(const Rat& a, const Rat& b) {
    // gcd of numerators over lcm of denominators; positive
    Int gn = gcd(a.get_num(), b.get_num());
    Int ld = lcm(a.get_den(), b.get_den());
    return make_rat(gn, ld);
}

struct LinRow {
    std::vector<MultiPoly<Rat>> coef; // one per eliminated variable
    MultiPoly<Rat> rest;
    std::vector<MultiPoly<Rat>> comb; // one per input equation
    bool used_as_pivot = false;
};

void row_strip_content(LinRow& row) {
    Rat content(0);
    auto absorb = [&](const MultiPoly<Rat>& p) {
        if (p.is_zero()) return;
        Rat c = content_rat(p);
        content = sgn(content) == 0 ? c : rat_gcd(content, c);
    };
    for (const auto& p : row.coef) absorb(p);
    absorb(row.rest);
    for (const auto& p : row.comb) absorb(p);
    if (sgn(content) == 0 || content == Rat(1)) return;
    for (auto& p : row.coef) p = p / content;
    row.rest = row.rest / content;
    for (auto& p : row.comb) p = p / content;
}

} // namespace

LinearEliminationResult linear_eliminate(const std::vector<MultiPoly<Rat>>& eqs,
                                         const std::vector<int>& vars) {
    if (eqs.empty()) throw std::invalid_argument("linear_eliminate: no equations");
    const VarTablePtr& table = eqs.front().vars();
    std::vector<bool> is_elim(table->size(), false);
    for (int v : vars) {
        if (v < 0 || (std::size_t)v >= table->size())
            throw std::invalid_argument("linear_eliminate: variable index out of range");
        is_elim[(std::size_t)v] = true;
    }

    // decompose each equation as sum_j coef_j * var_j + rest, requiring joint
    // linearity: every monomial contains at most one eliminated variable, to
    // the first power
    std::vector<LinRow> rows;
    for (const auto& eq : eqs) {
        LinRow row;
        row.coef.assign(vars.size(), MultiPoly<Rat>::zero(table));
        row.rest = MultiPoly<Rat>::zero(table);
        row.comb.assign(eqs.size(), MultiPoly<Rat>::zero(table));
        for (const auto& [e, c] : eq.terms()) {
            int hits = 0, which = -1;
            for (std::size_t j = 0; j < vars.size(); ++j) {
                std::uint16_t k = e[(std::size_t)vars[j]];
                if (k == 0) continue;
                hits += k;
                which = (int)j;
            }
            if (hits > 1)
                throw std::invalid_argument("linear_eliminate: equation nonlinear in variable " +
                                            table->names[(std::size_t)vars[(std::size_t)which]]);
            if (hits == 1) {
                Exp e2 = e;
                e2[(std::size_t)vars[(std::size_t)which]] = 0;
                row.coef[(std::size_t)which].add_term(e2, c);
            } else {
                row.rest.add_term(e, c);
            }
        }
        row.comb[rows.size()] = MultiPoly<Rat>::constant(table, Rat(1));
        rows.push_back(std::move(row));
    }

    // snapshot of the coefficient matrix and the variable-free parts, before
    // the pivot pass mutates the rows
    const std::size_t m = eqs.size();
    const std::size_t nv = vars.size();
    std::vector<std::vector<MultiPoly<Rat>>> A;
    std::vector<MultiPoly<Rat>> d;
    for (const LinRow& row : rows) {
        A.push_back(row.coef);
        d.push_back(row.rest);
    }

    // a fraction-free pivot pass determines the rank of the coefficient
    // matrix over the fraction field and which variables carry a pivot
    LinearEliminationResult result;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        // pick the structurally smallest available pivot for this column
        long best = -1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].used_as_pivot || rows[i].coef[j].is_zero()) continue;
            if (best < 0 ||
                std::make_pair(rows[i].coef[j].num_terms(), rows[i].coef[j].wdeg()) <
                    std::make_pair(rows[(std::size_t)best].coef[j].num_terms(),
                                   rows[(std::size_t)best].coef[j].wdeg()))
                best = (long)i;
        }
        if (best < 0) continue;
        rows[(std::size_t)best].used_as_pivot = true;
        result.pivot_vars.push_back(vars[j]);
        const LinRow& piv = rows[(std::size_t)best];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if ((long)i == best || rows[i].coef[j].is_zero()) continue;
            LinRow& row = rows[i];
            MultiPoly<Rat> a = piv.coef[j], b = row.coef[j];
            for (std::size_t k = 0; k < vars.size(); ++k)
                row.coef[k] = a * row.coef[k] - b * piv.coef[k];
            row.rest = a * row.rest - b * piv.rest;
            for (std::size_t k = 0; k < eqs.size(); ++k)
                row.comb[k] = a * row.comb[k] - b * piv.comb[k];
            row_strip_content(row);
        }
    }
    const std::size_t r = result.pivot_vars.size();
    if (m < r + 1) return result;

    // Every variable-free combination we report is a Cramer-style minor: pick
    // r + 1 equations S and r variable columns T, and expand det [A_ST | d_S]
    // along the d column.  The cofactors kill each variable column of the
    // subset outright (duplicated column) and every other variable column
    // because an (r+1)-minor of a rank-r matrix vanishes, so the expansion is
    // a certified variable-free combination of the chosen equations.  Unlike
    // chained cross-multiplication this keeps each eliminant free of the
    // pivot coefficients of the others, so no spurious common factors appear.
    const MultiPoly<Rat> zero_poly = MultiPoly<Rat>::zero(table);
    const MultiPoly<Rat> one_poly = MultiPoly<Rat>::constant(table, Rat(1));
    auto det_of = [&](std::vector<std::vector<MultiPoly<Rat>>> mat) {
        return bareiss_determinant(
            std::move(mat), one_poly,
            [](const MultiPoly<Rat>& a, const MultiPoly<Rat>& b) { return exact_div(a, b); },
            [](const MultiPoly<Rat>& a) { return a.is_zero(); });
    };
    auto proportional = [](const MultiPoly<Rat>& p, const MultiPoly<Rat>& q) {
        const auto& [qe, qc] = q.lex_leading();
        auto it = p.terms().find(qe);
        if (it == p.terms().end()) return false;
        return p * qc == q * it->second;
    };

    std::vector<std::size_t> cols(r), subset(r + 1);
    auto next_combination = [](std::vector<std::size_t>& c, std::size_t n) {
        std::size_t k = c.size();
        for (std::size_t i = k; i-- > 0;) {
            if (c[i] + (k - i) < n) {
                ++c[i];
                for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    do {
        for (std::size_t i = 0; i < r + 1; ++i) subset[i] = i;
        do {
            std::vector<std::vector<MultiPoly<Rat>>> mat;
            for (std::size_t i = 0; i <= r; ++i) {
                std::vector<MultiPoly<Rat>> row;
                for (std::size_t j = 0; j < r; ++j) row.push_back(A[subset[i]][cols[j]]);
                row.push_back(d[subset[i]]);
                mat.push_back(std::move(row));
            }
            MultiPoly<Rat> det = det_of(mat);
            if (det.is_zero()) continue;
            bool seen = false;
            for (const LinearEliminant& prev : result.eliminants)
                if ((seen = proportional(prev.eliminant, det))) break;
            if (seen) continue;

            LinearEliminant el;
            el.certificate.assign(m, zero_poly);
            for (std::size_t i = 0; i <= r; ++i) {
                std::vector<std::vector<MultiPoly<Rat>>> minor;
                for (std::size_t i2 = 0; i2 <= r; ++i2) {
                    if (i2 == i) continue;
                    std::vector<MultiPoly<Rat>> row;
                    for (std::size_t j = 0; j < r; ++j) row.push_back(A[subset[i2]][cols[j]]);
                    minor.push_back(std::move(row));
                }
                MultiPoly<Rat> cof = det_of(std::move(minor));
                el.certificate[subset[i]] = ((i + r) % 2 == 0) ? cof : zero_poly - cof;
            }
            MultiPoly<Rat> check = zero_poly;
            for (std::size_t i2 = 0; i2 < m; ++i2) check += el.certificate[i2] * eqs[i2];
            if (!(check == det))
                throw std::logic_error("linear_eliminate: combination certificate failed");
            el.content = content_rat(det);
            if (sgn(det.lex_leading().second) < 0) el.content = -el.content;
            el.eliminant = det / el.content;
            result.eliminants.push_back(std::move(el));
        } while (next_combination(subset, m));
    } while (r > 0 && next_combination(cols, nv));
    return result;
}

bool check_linear_certificate(const std::vector<MultiPoly<Rat>>& eqs, const LinearEliminant& el) {
    if (eqs.empty() || el.certificate.size() != eqs.size()) return false;
    MultiPoly<Rat> acc = MultiPoly<Rat>::zero(eqs.front().vars());
    for (std::size_t k = 0; k < eqs.size(); ++k) acc += el.certificate[k] * eqs[k];
    return acc == el.eliminant * el.content;
}

FactorStrip strip_factors(const MultiPoly<Rat>& p, const std::vector<MultiPoly<Rat>>& factors) {
    FactorStrip out;
    out.stripped = p;
    for (const auto& f : factors) {
        int count = 0;
        MultiPoly<Rat> q(p.vars());
        while (!out.stripped.is_zero() && try_exact_div(out.stripped, f, &q)) {
            out.stripped = q;
            ++count;
        }
        if (count > 0) out.removed.emplace_back(f, count);
    }
    if (!out.stripped.is_zero()) out.stripped = primitive_part(out.stripped);
    return out;
}

namespace {

// Bivariate polynomial split into main-variable coefficients, each a
// univariate polynomial in the parameter variable.
std::vector<UniPoly<Rat>> split_bivariate(const MultiPoly<Rat>& f, int main_var, int param_var) {
    std::vector<UniPoly<Rat>> out((std::size_t)f.degree_in(main_var) + 1);
    for (const auto& [k, c] : f.collect_in(main_var)) {
        std::vector<Rat> cs;
        for (const auto& [j, cc] : c.collect_in(param_var)) {
            if (!cc.is_constant())
                throw std::invalid_argument("interpolated_gcd: extra variables alive");
            if ((long)cs.size() <= j) cs.resize((std::size_t)j + 1, Rat(0));
            cs[(std::size_t)j] = cc.constant_coeff(Rat(0));
        }
        out[(std::size_t)k] = UniPoly<Rat>::from_coeffs(std::move(cs));
    }
    return out;
}

}  // namespace

MultiPoly<Rat> interpolated_gcd(const std::vector<MultiPoly<Rat>>& polys, int main_var,
                                int param_var) {
    if (polys.empty()) throw std::invalid_argument("interpolated_gcd: no inputs");
    const VarTablePtr& vars = polys.front().vars();
    std::vector<std::vector<UniPoly<Rat>>> split;
    long dmax_param = 0;
    for (const auto& p : polys) {
        if (p.is_zero()) throw std::invalid_argument("interpolated_gcd: zero input");
        split.push_back(split_bivariate(p, main_var, param_var));
        dmax_param = std::max(dmax_param, (long)p.degree_in(param_var));
    }

    // The true gcd's leading main-coefficient divides each input's, hence
    // their univariate gcd gamma; scaling the monic pointwise gcds by
    // gamma(v) makes them consistent specializations of one polynomial
    // (gamma / lc(G)) * G whose parameter degree is at most
    // deg gamma + dmax_param.  The surplus factor is parameter-only content
    // and is stripped after interpolation.
    UniPoly<Rat> gamma;
    for (std::size_t i = 0; i < split.size(); ++i)
        gamma = (i == 0) ? split[i].back() : gcd(gamma, split[i].back());
    const std::size_t need = (std::size_t)(gamma.deg() + dmax_param + 1);

    std::vector<Rat> xs;
    std::vector<std::vector<Rat>> rows; // per point: gamma(v) * monic gcd coefficients
    long dmin = -1;
    for (long trial = 0; xs.size() < need; ++trial) {
        if ((std::size_t)trial > 4 * need + 64)
            throw std::runtime_error("interpolated_gcd: ran out of sample points");
        Rat v(trial);
        bool lc_vanishes = false;
        for (const auto& sp : split)
            if (sp.back().eval(v) == Rat(0)) {
                lc_vanishes = true;
                break;
            }
        if (lc_vanishes) continue;

        UniPoly<Rat> g;
        for (std::size_t i = 0; i < split.size(); ++i) {
            std::vector<Rat> cs;
            cs.reserve(split[i].size());
            for (const auto& c : split[i]) cs.push_back(c.eval(v));
            UniPoly<Rat> u = UniPoly<Rat>::from_coeffs(std::move(cs));
            g = (i == 0) ? u : gcd(g, u);
            if (g.deg() == 0) break;
        }
        if (dmin < 0 || g.deg() < dmin) {
            dmin = g.deg();
            xs.clear();
            rows.clear();
        }
        if (g.deg() > dmin) continue; // unlucky specialization, gcd too large
        if (dmin == 0) return MultiPoly<Rat>::constant(vars, Rat(1));
        Rat gv = gamma.eval(v);
        g = g.monic();
        std::vector<Rat> row;
        row.reserve((std::size_t)dmin + 1);
        for (long k = 0; k <= dmin; ++k) row.push_back(g.coeff((int)k) * gv);
        xs.push_back(v);
        rows.push_back(std::move(row));
    }

    std::vector<UniPoly<Rat>> coeffs((std::size_t)dmin + 1);
    UniPoly<Rat> content;
    bool first = true;
    for (long k = 0; k <= dmin; ++k) {
        std::vector<Rat> ys;
        ys.reserve(xs.size());
        for (const auto& row : rows) ys.push_back(row[(std::size_t)k]);
        coeffs[(std::size_t)k] = lagrange_interpolate(xs, ys);
        if (coeffs[(std::size_t)k].is_zero()) continue;
        content = first ? coeffs[(std::size_t)k] : gcd(content, coeffs[(std::size_t)k]);
        first = false;
    }

    MultiPoly<Rat> out = MultiPoly<Rat>::zero(vars);
    for (long k = 0; k <= dmin; ++k) {
        if (coeffs[(std::size_t)k].is_zero()) continue;
        UniPoly<Rat> n = exact_div(coeffs[(std::size_t)k], content);
        for (int j = 0; j <= n.deg(); ++j) {
            if (n.coeff(j) == Rat(0)) continue;
            Exp e((std::size_t)vars->names.size(), 0);
            e[(std::size_t)main_var] = (std::uint16_t)k;
            e[(std::size_t)param_var] = (std::uint16_t)j;
            out += MultiPoly<Rat>::monomial(vars, e, n.coeff(j));
        }
    }
    out = primitive_part(out);

    MultiPoly<Rat>* no_quotient = nullptr;
    for (const auto& p : polys)
        if (!try_exact_div(p, out, no_quotient))
            throw std::runtime_error("interpolated_gcd: candidate fails trial division");
    return out;
}

// ---------------------------------------------------------------------------
// degree-bounded Buchberger over F_p
// ---------------------------------------------------------------------------
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (std::uint64_t)((unsigned __int128)a * b % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    long long t = 0, nt = 1;
    long long r = (long long)p, nr = (long long)(a % p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    if (t < 0) t += (long long)p;
    return (std::uint64_t)t;
}

struct GTerm {
    Exp e;
    long d; // weighted degree, cached
    std::uint64_t c;
};
using GPoly = std::vector<GTerm>; // strictly descending in the order

struct OrdView {
    const VarTable* vars;
    const std::vector<int>* prec;

    long wdeg(const Exp& e) const { return weighted_degree(e, *vars); }
    // compare with cached degrees
    int compare(const Exp& a, long da, const Exp& b, long db) const {
        if (da != db) return da < db ? -1 : 1;
        for (auto it = prec->rbegin(); it != prec->rend(); ++it) {
            std::uint16_t ea = a[(std::size_t)*it], eb = b[(std::size_t)*it];
            if (ea != eb) return ea > eb ? -1 : 1;
        }
        return 0;
    }
};

GPoly to_gpoly(const MultiPoly<Fp>& f, const OrdView& ov) {
    GPoly g;
    for (const auto& [e, c] : f.terms()) g.push_back({e, ov.wdeg(e), c.value()});
    std::sort(g.begin(), g.end(), [&](const GTerm& x, const GTerm& y) {
        return ov.compare(x.e, x.d, y.e, y.d) > 0;
    });
    return g;
}

MultiPoly<Fp> from_gpoly(const GPoly& g, const VarTablePtr& vars, std::uint64_t p) {
    MultiPoly<Fp> f(vars);
    for (const auto& t : g) f.add_term(t.e, Fp(t.c, p));
    return f;
}

// r = f - c * x^shift * g  (g monic)
GPoly subtract_shifted(const GPoly& f, std::uint64_t c, const Exp& shift, long shift_deg,
                       const GPoly& g, const OrdView& ov, std::uint64_t p) {
    GPoly r;
    r.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
        if (j == g.size()) {
            r.push_back(f[i++]);
            continue;
        }
        Exp ge = exp_mul(g[j].e, shift);
        long gd = g[j].d + shift_deg;
        int cmp = i == f.size() ? -1 : ov.compare(f[i].e, f[i].d, ge, gd);
        if (cmp > 0) {
            r.push_back(f[i++]);
        } else if (cmp < 0) {
            std::uint64_t v = p - mulmod(c, g[j].c, p);
            if (v != p) r.push_back({std::move(ge), gd, v});
            ++j;
        } else {
            std::uint64_t sub = mulmod(c, g[j].c, p);
            std::uint64_t v = f[i].c >= sub ? f[i].c - sub : f[i].c + (p - sub);
            if (v != 0) r.push_back({f[i].e, f[i].d, v});
            ++i;
            ++j;
        }
    }
    return r;
}

struct GbEngine {
    OrdView ov;
    VarTablePtr vars;
    std::uint64_t p = 0;
    long bound = 0;
    std::vector<GPoly> basis; // all monic
    // pending S-pairs keyed by the weighted degree of the lcm
    struct Pair {
        long deg;
        std::size_t i, j;
        bool operator>(const Pair& o) const {
            return std::tie(deg, i, j) > std::tie(o.deg, o.i, o.j);
        }
    };
    std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> pairs;

    GPoly normal_form(GPoly f) const {
        GPoly out;
        while (!f.empty()) {
            bool reduced = false;
            for (const auto& b : basis) {
                if (!exp_divides(b[0].e, f[0].e)) continue;
                Exp shift = exp_div(f[0].e, b[0].e);
                f = subtract_shifted(f, f[0].c, shift, f[0].d - b[0].d, b, ov, p);
                reduced = true;
                break;
            }
            if (!reduced) {
                out.push_back(f[0]);
                f.erase(f.begin());
            }
        }
        return out;
    }

    void make_monic(GPoly& f) const {
        if (f.empty() || f[0].c == 1) return;
        std::uint64_t inv = invmod(f[0].c, p);
        for (auto& t : f) t.c = mulmod(t.c, inv, p);
    }

    void add_element(GPoly h) {
        make_monic(h);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Exp& a = basis[i][0].e;
            const Exp& b = h[0].e;
            Exp l = exp_lcm(a, b);
            long ld = ov.wdeg(l);
            if (ld > bound) continue;
            if (ld == basis[i][0].d + h[0].d) continue; // coprime leading terms
            pairs.push({ld, i, basis.size()});
        }
        basis.push_back(std::move(h));
    }

    void run() {
        while (!pairs.empty()) {
            Pair pr = pairs.top();
            pairs.pop();
            const GPoly& f = basis[pr.i];
            const GPoly& g = basis[pr.j];
            Exp l = exp_lcm(f[0].e, g[0].e);
            long ld = ov.wdeg(l);
            GPoly s = subtract_shifted(
                // (l / lt f) * f  -  (l / lt g) * g, both monic
                [&] {
                    GPoly a;
                    a.reserve(f.size());
                    Exp sh = exp_div(l, f[0].e);
                    for (const auto& t : f) a.push_back({exp_mul(t.e, sh), t.d + ld - f[0].d, t.c});
                    return a;
                }(),
                1, exp_div(l, g[0].e), ld - g[0].d, g, ov, p);
            GPoly h = normal_form(std::move(s));
            if (!h.empty()) add_element(std::move(h));
        }
    }
};

} // namespace

BoundedBasis buchberger_bounded(const GradedIdeal& ideal) {
    if (ideal.degree_bound < 0)
        throw std::invalid_argument("buchberger_bounded: negative degree bound");
    if (!ideal.order.vars)
        throw std::invalid_argument("buchberger_bounded: order has no variable table");
    if (ideal.order.precedence.size() != ideal.order.vars->size())
        throw std::invalid_argument("buchberger_bounded: order precedence incomplete");

    std::uint64_t p = 0;
    std::vector<MultiPoly<Fp>> gens;
    for (const auto& g : ideal.generators) {
        if (g.is_zero()) continue;
        if (!g.is_weighted_homogeneous())
            throw std::invalid_argument("buchberger_bounded: generator not weighted-homogeneous");
        std::uint64_t gp = g.terms().begin()->second.modulus();
        if (p == 0) p = gp;
        if (gp != p) throw modulus_mismatch("buchberger_bounded: generators mix moduli");
        if (g.vars()->names != ideal.order.vars->names ||
            g.vars()->weights != ideal.order.vars->weights)
            throw std::invalid_argument("buchberger_bounded: generator variable table mismatch");
        // homogeneous generators above the bound cannot influence the
        // truncated computation
        if (g.wdeg() <= ideal.degree_bound) gens.push_back(g);
    }
    if (!gens.empty() && !is_prime_u64(p))
        throw std::invalid_argument("buchberger_bounded: modulus not prime");

    GbEngine eng;
    eng.ov = OrdView{ideal.order.vars.get(), &ideal.order.precedence};
    eng.vars = ideal.order.vars;
    eng.p = p;
    eng.bound = ideal.degree_bound;

    std::vector<GPoly> start;
    for (const auto& g : gens) start.push_back(to_gpoly(g, eng.ov));
    std::sort(start.begin(), start.end(),
              [](const GPoly& a, const GPoly& b) { return a[0].d < b[0].d; });
    for (auto& g : start) {
        GPoly h = eng.normal_form(std::move(g));
        if (!h.empty()) eng.add_element(std::move(h));
    }
    eng.run();

    // minimalize: drop elements whose leading term another element's leading
    // term divides, then tail-reduce the survivors
    std::vector<GPoly> kept;
    std::vector<std::size_t> order_idx(eng.basis.size());
    for (std::size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = i;
    std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
        return eng.ov.compare(eng.basis[a][0].e, eng.basis[a][0].d, eng.basis[b][0].e,
                              eng.basis[b][0].d) < 0;
    });
    for (std::size_t idx : order_idx) {
        const GPoly& cand = eng.basis[idx];
        bool redundant = false;
        for (const auto& k : kept)
            if (exp_divides(k[0].e, cand[0].e)) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(cand);
    }
    GbEngine reducer = eng;
    reducer.basis = kept;
    for (auto& k : reducer.basis) {
        // tail-reduce in place; by homogeneity an element's own leading term
        // cannot divide any of its tail terms, so keeping k in the basis
        // (shrunk to its leading term) during the reduction is safe
        GPoly tail(k.begin() + 1, k.end());
        k.resize(1);
        GPoly red = reducer.normal_form(std::move(tail));
        k.insert(k.end(), red.begin(), red.end());
    }

    BoundedBasis out;
    out.order = ideal.order;
    out.degree_bound = ideal.degree_bound;
    for (const auto& k : reducer.basis) {
        out.basis.push_back(from_gpoly(k, ideal.order.vars, p));
        out.basis_by_degree[k[0].d] += 1;
    }

    // quotient dimensions: count monomials of each weighted degree not
    // divisible by any leading term
    std::vector<Exp> lts;
    for (const auto& k : reducer.basis) lts.push_back(k[0].e);
    std::size_t n = ideal.order.vars->size();
    const auto& weights = ideal.order.vars->weights;
    for (long d = 0; d <= ideal.degree_bound; ++d) out.quotient_dims[d] = 0;
    Exp cur(n, 0);
    // depth-first enumeration of all monomials of weighted degree <= bound
    auto rec = [&](auto&& self, std::size_t var, long deg_left) -> void {
        if (var == n) {
            long d = ideal.degree_bound - deg_left;
            bool standard = true;
            for (const auto& lt : lts)
                if (exp_divides(lt, cur)) {
                    standard = false;
                    break;
                }
            if (standard) out.quotient_dims[d] += 1;
            return;
        }
        long w = weights[var];
        for (long k = 0;; ++k) {
            long used = k * w;
            if (used > deg_left) break;
            cur[var] = (std::uint16_t)k;
            self(self, var + 1, deg_left - used);
        }
        cur[var] = 0;
    };
    rec(rec, 0, ideal.degree_bound);
    return out;
}

MultiPoly<Fp> normal_form(const MultiPoly<Fp>& f, const std::vector<MultiPoly<Fp>>& basis,
                          const MonomialOrder& order) {
    if (f.is_zero()) return f;
    std::uint64_t p = f.terms().begin()->second.modulus();
    GbEngine eng;
    eng.ov = OrdView{order.vars.get(), &order.precedence};
    eng.vars = order.vars;
    eng.p = p;
    eng.bound = 0;
    for (const auto& b : basis) {
        if (b.is_zero()) continue;
        GPoly g = to_gpoly(b, eng.ov);
        eng.make_monic(g);
        eng.basis.push_back(std::move(g));
    }
    return from_gpoly(eng.normal_form(to_gpoly(f, eng.ov)), f.vars(), p);
}

std::map<long, long> free_ring_dims(const VarTablePtr& vars, long bound) {
    std::vector<long> dims((std::size_t)bound + 1, 0);
    dims[0] = 1;
    for (std::size_t v = 0; v < vars->size(); ++v) {
        long w = vars->weights[v];
        if (w <= 0) throw std::invalid_argument("free_ring_dims: weights must be positive");
        for (long d = w; d <= bound; ++d) dims[(std::size_t)d] += dims[(std::size_t)(d - w)];
    }
    std::map<long, long> out;
    for (long d = 0; d <= bound; ++d) out[d] = dims[(std::size_t)d];
    return out;
}

std::string hilbert_table(const BoundedBasis& basis, long from_deg, long to_deg) {
    if (to_deg > basis.degree_bound) to_deg = basis.degree_bound;
    auto free_dims = free_ring_dims(basis.order.vars, to_deg);
    std::ostringstream os;
    os << "degree      free     basis  quotient\n";
    long cumulative = 0;
    std::map<long, long> by_deg = basis.basis_by_degree;
    for (long d = 0; d <= to_deg; ++d) {
        auto it = by_deg.find(d);
        if (it != by_deg.end()) cumulative += it->second;
        if (d < from_deg) continue;
        char line[96];
        std::snprintf(line, sizeof line, "%6ld  %8ld  %8ld  %8ld\n", d, free_dims[d], cumulative,
                      basis.quotient_dims.count(d) ? basis.quotient_dims.at(d) : 0L);
        os << line;
    }
    return os.str();
}

std::vector<MultiPoly<Fp>> detect_divisible(const std::vector<MultiPoly<Fp>>& basis,
                                            const MonomialOrder& order,
                                            const MultiPoly<Fp>& factor) {
    if (factor.is_zero()) throw std::invalid_argument("detect_divisible: zero factor");
    Exp flt = order_leading_exp(factor, order);
    std::vector<MultiPoly<Fp>> out;
    for (const auto& b : basis) {
        if (b.is_zero()) continue;
        if (!exp_divides(flt, order_leading_exp(b, order))) continue;
        MultiPoly<Fp> q(b.vars());
        if (!try_exact_div(b, factor, &q))
            throw std::runtime_error(
                "detect_divisible: leading term divisible but polynomial is not; "
                "the order lacks the divisibility property for this factor");
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace ramcov
