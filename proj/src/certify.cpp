#include "ramcov/certify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ramcov/elimination.hpp"
#include "ramcov/expr.hpp"

namespace ramcov {

namespace {

using KPoly = UniPoly<QElem>;

KPoly assembled(const std::vector<std::pair<KPoly, long>>& factors, const QElem& one) {
    KPoly acc{one};
    for (const auto& [f, m] : factors) {
        if (m <= 0) throw std::domain_error("covering: factor multiplicity must be positive");
        if (f.is_zero()) throw std::domain_error("covering: zero factor");
        acc = acc * f.pow((unsigned long)m);
    }
    return acc;
}

long valuation_at_zero(const KPoly& p) {
    if (p.is_zero()) throw std::logic_error("valuation_at_zero: zero polynomial");
    long v = 0;
    while (kis_zero(p.coeff((int)v))) ++v;
    return v;
}

KPoly shifted_down(const KPoly& p, long e) {
    const auto& cs = p.coeffs();
    return KPoly::from_coeffs(std::vector<QElem>(cs.begin() + (std::ptrdiff_t)e, cs.end()));
}

// Monicity, squarefreeness, and pairwise coprimality of every stored factor,
// established by gcds rather than assumed from the input.
void certify_factor_shape(const Covering& c) {
    std::vector<const KPoly*> all;
    for (const auto& [f, m] : c.num) {
        (void)m;
        all.push_back(&f);
    }
    for (const auto& [g, k] : c.den) {
        (void)k;
        all.push_back(&g);
    }
    QElem one = field_model(c);
    for (const KPoly* f : all) {
        if (f->deg() < 1) throw std::domain_error("covering: factor is constant");
        if (f->lc() != one) throw std::domain_error("covering: factor is not monic");
        if (gcd(*f, f->derivative()).deg() > 0)
            throw std::domain_error("covering: factor is not squarefree");
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (gcd(*all[i], *all[j]).deg() > 0)
                throw std::domain_error("covering: two factors share a root");
}

std::string partition_str(const std::vector<long>& parts) {
    if (parts.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "+";
        out += std::to_string(parts[i]);
    }
    return out;
}

std::vector<long> sorted_desc(std::vector<long> v) {
    std::sort(v.begin(), v.end(), std::greater<long>());
    return v;
}

bool compare_fiber(const std::vector<long>& computed, const std::vector<long>& declared,
                   const std::string& where, const std::string& tag,
                   std::vector<std::string>& notes) {
    if (sorted_desc(computed) == sorted_desc(declared)) return true;
    notes.push_back(tag + "fiber over " + where + ": computed " + partition_str(computed) +
                    ", declared " + partition_str(declared));
    return false;
}

bool compare_branches(const BranchData& d, const RamPattern& declared, const std::string& tag,
                      std::vector<std::string>& notes) {
    bool ok = true;
    if (d.degree != declared.degree) {
        notes.push_back(tag + "degree: computed " + std::to_string(d.degree) + ", declared " +
                        std::to_string(declared.degree));
        ok = false;
    }
    long declared_ram = 0;
    for (const auto* p : {&declared.p0, &declared.p1, &declared.pinf})
        for (long m : *p) declared_ram += m - 1;
    long expected_extra = declared.almost_belyi ? 1 : 0;
    if (declared_ram + expected_extra != 2 * declared.degree - 2) {
        notes.push_back(tag + "declared pattern fails the ramification count");
        ok = false;
    }
    ok &= compare_fiber(d.p0, declared.p0, "0", tag, notes);
    ok &= compare_fiber(d.p1, declared.p1, "1", tag, notes);
    ok &= compare_fiber(d.pinf, declared.pinf, "infinity", tag, notes);
    if (d.extra.deg() != expected_extra) {
        notes.push_back(tag + "extra critical points: computed " + std::to_string(d.extra.deg()) +
                        ", declared " + std::to_string(expected_extra));
        ok = false;
    }
    if (d.total_ramification != 2 * d.degree - 2) {
        notes.push_back(tag + "total ramification " + std::to_string(d.total_ramification) +
                        " misses " + std::to_string(2 * d.degree - 2) +
                        " (a critical point escaped to infinity)");
        ok = false;
    }
    return ok;
}

void fill_report(CertReport& rep, const BranchData& d) {
    rep.computed_p0 = d.p0;
    rep.computed_p1 = d.p1;
    rep.computed_pinf = d.pinf;
    rep.extra_present = d.extra.deg() >= 1;
    rep.extra_simple = d.extra.deg() == 1;
    rep.extra_location = d.extra_location;
}

// Everything in Q[t] whose vanishing collapses the family at a specific t,
// each piece labeled for error reporting.
std::vector<std::pair<std::string, UniPoly<Rat>>> degeneracy_pieces(const Covering& c) {
    std::vector<std::pair<std::string, UniPoly<Rat>>> out;
    auto add_qt = [&out](const Qt& q, const std::string& label) {
        if (q.is_zero()) throw std::domain_error("degeneracy_locus: " + label + " vanishes identically");
        if (q.num().deg() > 0) out.emplace_back(label, q.num().monic());
        if (q.den().deg() > 0) out.emplace_back(label + " (denominator)", q.den().monic());
    };
    auto add_elem = [&add_qt](const QElem& e, const std::string& label) {
        if (e.is_rational()) add_qt(e.rational_part(), label);
        else add_qt(e.norm(), label); // the norm vanishes exactly where e or its conjugate does
    };
    if (c.constant) add_elem(*c.constant, "the constant");
    if (c.field.kind == FieldKind::quadratic) add_qt(c.field.radicand, "the radicand");

    std::vector<std::pair<std::string, const KPoly*>> labeled;
    for (std::size_t i = 0; i < c.num.size(); ++i)
        labeled.emplace_back("numerator factor " + std::to_string(i + 1), &c.num[i].first);
    for (std::size_t j = 0; j < c.den.size(); ++j)
        labeled.emplace_back("denominator factor " + std::to_string(j + 1), &c.den[j].first);

    for (const auto& [label, f] : labeled) {
        for (const QElem& e : f->coeffs()) {
            if (e.rational_part().den().deg() > 0)
                out.emplace_back("a coefficient of " + label + " (denominator)",
                                 e.rational_part().den());
            if (e.w_part().den().deg() > 0)
                out.emplace_back("a coefficient of " + label + " (denominator)", e.w_part().den());
        }
        if (f->deg() >= 2) add_elem(resultant(*f, f->derivative()), "the discriminant of " + label);
    }
    for (std::size_t i = 0; i < labeled.size(); ++i)
        for (std::size_t j = i + 1; j < labeled.size(); ++j)
            add_elem(resultant(*labeled[i].second, *labeled[j].second),
                     "the resultant of " + labeled[i].first + " and " + labeled[j].first);
    return out;
}

// Specialize the family at t = v.  Quadratic coefficients keep their w-part;
// the radicand specializes along.
Covering specialize(const Covering& c, const Rat& v) {
    Qt vq{v};
    Covering s;
    if (c.field.kind == FieldKind::quadratic) {
        Qt rv = c.field.radicand.subst(vq);
        s.field = CoverField{FieldKind::quadratic, rv};
        s.ctx = make_quad_ctx(rv, c.ctx ? c.ctx->wname : "w");
    } else {
        s.field = CoverField{FieldKind::rationals, Qt()};
    }
    auto map_elem = [&vq, &s](const QElem& e) {
        return QElem(e.rational_part().subst(vq), e.w_part().subst(vq), s.ctx);
    };
    if (c.constant) s.constant = map_elem(*c.constant);
    auto map_list = [&map_elem](const std::vector<std::pair<KPoly, long>>& in) {
        std::vector<std::pair<KPoly, long>> out;
        for (const auto& [f, m] : in) {
            std::vector<QElem> cs;
            cs.reserve(f.coeffs().size());
            for (const QElem& e : f.coeffs()) cs.push_back(map_elem(e));
            out.emplace_back(KPoly::from_coeffs(std::move(cs)), m);
        }
        return out;
    };
    s.num = map_list(c.num);
    s.den = map_list(c.den);
    return s;
}

// Factor lists of the composite before re-canonicalization: outer factors
// lifted through the inner map, with absorbed leading coefficients collected
// into `absorbed`.
std::vector<std::pair<KPoly, long>> canonical_factors(std::vector<std::pair<KPoly, long>> in,
                                                      QElem& absorbed) {
    std::vector<std::pair<KPoly, long>> work;
    for (auto& [f, m] : in) {
        if (f.is_zero()) throw std::logic_error("canonical_factors: zero factor");
        absorbed = absorbed * f.lc().pow(m);
        KPoly g = f.monic();
        if (g.deg() == 0) continue;
        for (const auto& [q, mu] : squarefree_decomposition(g))
            work.emplace_back(q, (long)mu * m);
    }
    // Split pairs with a common part until everything is pairwise coprime;
    // each split strictly lowers the total degree, so this terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
                KPoly g = gcd(work[i].first, work[j].first);
                if (g.deg() == 0) continue;
                KPoly fi = exact_div(work[i].first, g);
                KPoly fj = exact_div(work[j].first, g);
                long mi = work[i].second, mj = work[j].second;
                std::vector<std::pair<KPoly, long>> next;
                for (std::size_t r = 0; r < work.size(); ++r)
                    if (r != i && r != j) next.push_back(work[r]);
                if (fi.deg() > 0) next.emplace_back(fi, mi);
                if (fj.deg() > 0) next.emplace_back(fj, mj);
                next.emplace_back(g, mi + mj);
                work = std::move(next);
                changed = true;
            }
    }
    return work;
}

void cross_cancel(std::vector<std::pair<KPoly, long>>& num,
                  std::vector<std::pair<KPoly, long>>& den) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < num.size() && !changed; ++i)
            for (std::size_t j = 0; j < den.size() && !changed; ++j) {
                KPoly g = gcd(num[i].first, den[j].first);
                if (g.deg() == 0) continue;
                long m = num[i].second, k = den[j].second, d = std::min(m, k);
                KPoly fn = exact_div(num[i].first, g);
                KPoly fd = exact_div(den[j].first, g);
                std::vector<std::pair<KPoly, long>> nn, nd;
                for (std::size_t r = 0; r < num.size(); ++r)
                    if (r != i) nn.push_back(num[r]);
                for (std::size_t r = 0; r < den.size(); ++r)
                    if (r != j) nd.push_back(den[r]);
                if (fn.deg() > 0) nn.emplace_back(fn, m);
                if (fd.deg() > 0) nd.emplace_back(fd, k);
                if (m > d) nn.emplace_back(g, m - d);
                if (k > d) nd.emplace_back(g, k - d);
                num = std::move(nn);
                den = std::move(nd);
                changed = true;
            }
    }
}

} // namespace

long Covering::degree() const {
    long a = 0, b = 0;
    for (const auto& [f, m] : num) a += (long)f.deg() * m;
    for (const auto& [g, k] : den) b += (long)g.deg() * k;
    return std::max(a, b);
}

QElem field_model(const Covering& c) { return QElem(Qt(Rat(1)), Qt(), c.ctx); }

UniPoly<QElem> covering_numerator(const Covering& c) { return assembled(c.num, field_model(c)); }

UniPoly<QElem> covering_denominator(const Covering& c) { return assembled(c.den, field_model(c)); }

BranchData branch_points(const Covering& c) {
    if (!c.constant) throw std::domain_error("branch_points: covering constant required");
    if (c.constant->is_zero()) throw std::domain_error("branch_points: covering constant is zero");
    certify_factor_shape(c);
    QElem one = field_model(c);
    KPoly a = covering_numerator(c);
    KPoly b = covering_denominator(c);
    long n = std::max(a.deg(), b.deg());
    if (n < 1) throw std::domain_error("branch_points: covering has degree zero");

    BranchData d;
    d.degree = n;
    for (const auto& [f, m] : c.num) d.p0.insert(d.p0.end(), (std::size_t)f.deg(), m);
    if (b.deg() > a.deg()) d.p0.push_back(b.deg() - a.deg());
    for (const auto& [g, k] : c.den) d.pinf.insert(d.pinf.end(), (std::size_t)g.deg(), k);
    if (a.deg() > b.deg()) d.pinf.push_back(a.deg() - b.deg());

    KPoly nom = a * (*c.constant) - b;
    if (nom.is_zero()) throw std::domain_error("branch_points: map is identically 1");
    d.one_fiber = squarefree_decomposition(nom);
    for (const auto& [q, mu] : d.one_fiber) d.p1.insert(d.p1.end(), (std::size_t)q.deg(), mu);
    if (nom.deg() < n) d.p1.push_back(n - nom.deg());

    for (auto* p : {&d.p0, &d.p1, &d.pinf}) {
        std::sort(p->begin(), p->end(), std::greater<long>());
        long sum = 0;
        for (long m : *p) sum += m;
        if (sum != n) throw std::logic_error("branch_points: fiber does not sum to the degree");
    }

    // Critical points of the map: the numerator of the derivative carries
    // each stored factor to the power multiplicity - 1, each fiber-above-1
    // piece likewise (the identity constant*w0 = nom'*b - nom*b' forces it),
    // and whatever is left is genuinely new: at a point of multiplicity m in
    // any fiber the derivative numerator vanishes to order exactly m - 1.
    KPoly w0 = a.derivative() * b - a * b.derivative();
    if (w0.is_zero()) throw std::domain_error("branch_points: derivative vanishes identically");
    KPoly forced{one};
    for (const auto& [f, m] : c.num) forced = forced * f.pow((unsigned long)(m - 1));
    for (const auto& [g, k] : c.den) forced = forced * g.pow((unsigned long)(k - 1));
    for (const auto& [q, mu] : d.one_fiber) forced = forced * q.pow((unsigned long)(mu - 1));
    auto [extra, rem] = divrem(w0, forced);
    if (!rem.is_zero())
        throw std::domain_error(
            "branch_points: derivative numerator is not divisible by the forced critical factors");
    if (extra.deg() > 1)
        throw std::domain_error("branch_points: derivative numerator has unexpected degree");
    d.extra = extra.monic();
    if (d.extra.deg() == 1) d.extra_location = -d.extra.coeff(0);

    d.total_ramification = d.extra.deg();
    for (const auto* p : {&d.p0, &d.p1, &d.pinf})
        for (long m : *p) d.total_ramification += m - 1;
    return d;
}

UniPoly<Rat> degeneracy_locus(const Covering& c) {
    UniPoly<Rat> acc{Rat(1)};
    for (const auto& [label, p] : degeneracy_pieces(c)) {
        (void)label;
        acc = acc * p;
    }
    if (acc.deg() <= 0) return UniPoly<Rat>{Rat(1)};
    return squarefree_part(acc);
}

CertReport certify_pattern(const Covering& c, const RamPattern& declared, CertMode mode,
                           int samples, unsigned long seed) {
    if (mode == CertMode::symbolic || c.field.kind == FieldKind::rationals) {
        CertReport rep;
        rep.declared = declared;
        rep.degeneracy = degeneracy_locus(c);
        if (mode == CertMode::sampled)
            rep.notes.push_back("coefficients are constant; sampled mode reduces to the symbolic check");
        BranchData d = branch_points(c);
        fill_report(rep, d);
        rep.pass = compare_branches(d, declared, "", rep.notes);
        return rep;
    }
    if (samples < 1) throw std::invalid_argument("certify_pattern: sample count must be positive");
    UniPoly<Rat> locus = degeneracy_locus(c);
    std::mt19937_64 rng(seed);
    std::vector<Rat> picked;
    long guard = 0;
    while ((long)picked.size() < samples) {
        if (++guard > 1000L * samples + 1000)
            throw std::runtime_error("certify_pattern: could not find enough nondegenerate samples");
        long nv = (long)(rng() % 61) - 30;
        long dv = (long)(rng() % 4) + 1;
        Rat v = make_rat(nv, dv);
        if (std::find(picked.begin(), picked.end(), v) != picked.end()) continue;
        if (sgn(locus.eval(v)) == 0) continue;
        if (c.field.kind == FieldKind::quadratic) {
            auto rv = c.field.radicand.eval(v);
            if (!rv || sgn(*rv) == 0 || rat_sqrt_exact(*rv)) continue;
        }
        picked.push_back(v);
    }
    return certify_at_points(c, declared, picked);
}

CertReport certify_at_points(const Covering& c, const RamPattern& declared,
                             const std::vector<Rat>& points) {
    if (points.empty()) throw std::invalid_argument("certify_at_points: no sample points");
    CertReport rep;
    rep.declared = declared;
    rep.degeneracy = degeneracy_locus(c);
    auto pieces = degeneracy_pieces(c);
    bool all_ok = true;
    bool first = true;
    for (const Rat& v : points) {
        for (const auto& [label, p] : pieces)
            if (sgn(p.eval(v)) == 0)
                throw std::domain_error("certify_pattern: sample t = " + rat_str(v) +
                                        " is degenerate: " + label + " vanishes");
        if (c.field.kind == FieldKind::quadratic) {
            auto rv = c.field.radicand.eval(v);
            if (!rv)
                throw std::domain_error("certify_pattern: sample t = " + rat_str(v) +
                                        " is degenerate: the radicand has a pole");
            if (sgn(*rv) == 0 || rat_sqrt_exact(*rv))
                throw std::domain_error("certify_pattern: sample t = " + rat_str(v) +
                                        " collapses the quadratic field to a rational square");
        }
        BranchData d = branch_points(specialize(c, v));
        if (first) {
            fill_report(rep, d);
            first = false;
        }
        std::string tag = "t = " + rat_str(v) + ": ";
        if (compare_branches(d, declared, tag, rep.notes))
            rep.notes.push_back(tag + "branching matches");
        else
            all_ok = false;
    }
    rep.pass = all_ok;
    return rep;
}

ComplementResult derive_complement(const Covering& c) {
    certify_factor_shape(c);
    QElem one = field_model(c);
    KPoly a = covering_numerator(c);
    KPoly b = covering_denominator(c);
    ComplementResult res;

    if (c.constant) {
        if (c.constant->is_zero())
            throw std::domain_error("derive_complement: covering constant is zero");
        KPoly nom = a * (*c.constant) - b;
        if (nom.is_zero()) throw std::domain_error("derive_complement: map is identically 1");
        res.x_exponent = valuation_at_zero(nom);
        res.scalar = nom.lc();
        KPoly m = shifted_down(nom / res.scalar, res.x_exponent);
        if (m.deg() == 0) {
            res.complement = KPoly{one};
            res.power = 1;
        } else {
            auto dec = squarefree_decomposition(m);
            if (dec.size() != 1)
                throw std::domain_error(
                    "derive_complement: numerator is not a power of a single squarefree factor");
            res.power = dec[0].second;
            res.complement = exact_poly_root(m, res.power);
        }
        if ((res.complement.pow((unsigned long)res.power) * res.scalar)
                .shifted((int)res.x_exponent) != nom)
            throw std::logic_error("derive_complement: extracted root fails to reproduce the numerator");
        res.constant = *c.constant;
        res.constant_derived = false;
        return res;
    }

    // Constant unknown: the complement must be a plain square.  The critical
    // points of the derivative outside the forced factors are the complement
    // roots plus at most one extra point; its location and 1/constant come
    // out of the two top coefficients of constant*(num - P^2) = den.
    if (a.deg() < b.deg() + 2)
        throw std::domain_error(
            "derive_complement: constant derivation requires the numerator to dominate");
    if (a.deg() % 2 != 0)
        throw std::domain_error("derive_complement: square complement needs even degree");
    KPoly w0 = a.derivative() * b - a * b.derivative();
    KPoly forced{one};
    for (const auto& [f, m] : c.num) forced = forced * f.pow((unsigned long)(m - 1));
    for (const auto& [g, k] : c.den) forced = forced * g.pow((unsigned long)(k - 1));
    auto [t, rem] = divrem(w0, forced);
    if (!rem.is_zero())
        throw std::domain_error(
            "derive_complement: derivative numerator is not divisible by the forced factors");
    t = t.monic();
    long half = a.deg() / 2;
    KPoly p;
    if (t.deg() == half) {
        p = t;
    } else if (t.deg() == half + 1) {
        QElem two = kfrom_int_like(2, one);
        QElem x0 = a.coeff(a.deg() - 1) / two - t.coeff(t.deg() - 1);
        KPoly lin = KPoly::from_coeffs({-x0, one});
        auto [q, r2] = divrem(t, lin);
        if (!r2.is_zero())
            throw std::domain_error("derive_complement: extra-point location is inconsistent");
        p = q;
    } else {
        throw std::domain_error("derive_complement: critical factor has unexpected degree");
    }
    KPoly diff = a - p.pow(2);
    if (diff.is_zero() || diff.deg() != b.deg())
        throw std::domain_error(
            "derive_complement: complement square does not reduce the numerator to the denominator");
    QElem c0 = b.lc() / diff.lc();
    if (diff * c0 != b)
        throw std::domain_error("derive_complement: derived constant fails the full identity");
    res.complement = p;
    res.scalar = c0;
    res.x_exponent = 0;
    res.power = 2;
    res.constant = c0;
    res.constant_derived = true;
    return res;
}

Covering compose_coverings(const Covering& outer, const Covering& inner) {
    if (!outer.constant || !inner.constant)
        throw std::domain_error("compose_coverings: both constants are required");
    certify_factor_shape(outer);
    certify_factor_shape(inner);
    QuadCtxPtr ctx;
    if (outer.ctx && inner.ctx) {
        if (!(outer.ctx->radicand == inner.ctx->radicand))
            throw std::domain_error("compose_coverings: mixing distinct quadratic extensions");
        ctx = outer.ctx;
    } else {
        ctx = outer.ctx ? outer.ctx : inner.ctx;
    }
    Covering r;
    r.ctx = ctx;
    if (ctx)
        r.field = CoverField{FieldKind::quadratic, ctx->radicand};
    else if (outer.field.kind == FieldKind::rational_functions ||
             inner.field.kind == FieldKind::rational_functions)
        r.field = CoverField{FieldKind::rational_functions, Qt()};
    else
        r.field = CoverField{FieldKind::rationals, Qt()};
    QElem one = field_model(r);

    KPoly inner_num = covering_numerator(inner) * (*inner.constant);
    KPoly inner_den = covering_denominator(inner);
    QElem constant = *outer.constant;
    std::vector<std::pair<KPoly, long>> num, den;
    long balance = 0; // net power of the inner denominator
    for (const auto& [f, m] : outer.num) {
        num.emplace_back(homogeneous_eval(f, inner_num, inner_den, f.deg()), m);
        balance -= m * f.deg();
    }
    for (const auto& [g, k] : outer.den) {
        den.emplace_back(homogeneous_eval(g, inner_num, inner_den, g.deg()), k);
        balance += k * g.deg();
    }
    if (balance > 0)
        for (const auto& [q, mu] : inner.den) num.emplace_back(q, mu * balance);
    if (balance < 0)
        for (const auto& [q, mu] : inner.den) den.emplace_back(q, mu * (-balance));

    QElem absorbed_num = one, absorbed_den = one;
    r.num = canonical_factors(std::move(num), absorbed_num);
    r.den = canonical_factors(std::move(den), absorbed_den);
    cross_cancel(r.num, r.den);
    r.constant = constant * absorbed_num / absorbed_den;
    if (r.degree() != outer.degree() * inner.degree())
        throw std::logic_error("compose_coverings: composite degree is not the product");
    return r;
}

bool check_hpg_transformation(const Covering& c, int order, const Rat& exponent) {
    if (order < 1) throw std::invalid_argument("check_hpg_transformation: order must be positive");
    if (c.field.kind != FieldKind::quadratic || !(c.field.radicand == Qt(Rat(-15))))
        throw std::domain_error("check_hpg_transformation: covering must live over w^2 = -15");
    if (!c.constant) throw std::domain_error("check_hpg_transformation: covering constant required");
    QElem one = field_model(c);
    KPoly nom = covering_numerator(c) * (*c.constant);
    KPoly den = covering_denominator(c);
    if (!kis_zero(den.coeff(0)))
        throw std::domain_error("check_hpg_transformation: 1/phi does not vanish at x = 0");
    if (kis_zero(nom.coeff(0)))
        throw std::domain_error("check_hpg_transformation: phi is indeterminate at x = 0");
    std::size_t ord = (std::size_t)order + 1;
    Series<QElem> recip = Series<QElem>::from_poly(den, ord, one) *
                          Series<QElem>::from_poly(nom, ord, one).inverse();
    Series<QElem> lhs = hpg_series(Rat(1, 4), make_rat(-1, 12), Rat(2, 3), ord, one);
    QElem alpha(Qt(make_rat(7, 128)), Qt(make_rat(-33, 128)), c.ctx);
    Series<QElem> rhs = binomial_series(alpha, exponent, ord) *
                        hpg_series(Rat(11, 60), make_rat(-1, 60), Rat(2, 3), ord, one).compose(recip);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Plain-text format.
// ---------------------------------------------------------------------------

namespace {

std::string strip_all_ws(const std::string& s) {
    std::string out;
    for (char ch : s)
        if (ch != ' ' && ch != '\t' && ch != '\r') out += ch;
    return out;
}

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!strip_all_ws(line).empty()) out.push_back(line);
    return out;
}

Qt parse_radicand(const std::string& text) {
    ExprEnv<Qt> env;
    env.from_int = [](const Int& n) { return Qt(Rat(n)); };
    env.div = [](const Qt& x, const Qt& y) { return x / y; };
    env.vars.emplace("t", Qt::t());
    return parse_expr(text, env);
}

ExprEnv<UniPoly<QElem>> coef_env(const QuadCtxPtr& ctx) {
    ExprEnv<UniPoly<QElem>> env;
    env.from_int = [](const Int& n) { return UniPoly<QElem>(QElem(Qt(Rat(n)))); };
    env.div = [](const UniPoly<QElem>& x, const UniPoly<QElem>& y) {
        if (y.is_zero()) throw parse_error("covering parse: division by zero");
        if (y.deg() != 0) throw parse_error("covering parse: division by a nonconstant polynomial");
        return x / y.coeff(0);
    };
    env.vars.emplace("x", UniPoly<QElem>::monomial(QElem(Qt(Rat(1))), 1));
    env.vars.emplace("t", UniPoly<QElem>(QElem(Qt::t())));
    if (ctx) env.vars.emplace(ctx->wname, UniPoly<QElem>(QElem::w(ctx)));
    return env;
}

// Integer-cleared numerator/denominator pair of a reduced rational function:
// both polynomials get integer coefficients with joint content 1; the
// denominator keeps a positive leading coefficient.
std::pair<UniPoly<Rat>, UniPoly<Rat>> int_cleared(const Qt& q) {
    Int lam(1);
    for (const Rat& c : q.num().coeffs()) lam = lcm(lam, Int(c.get_den()));
    for (const Rat& c : q.den().coeffs()) lam = lcm(lam, Int(c.get_den()));
    Rat scale{lam};
    UniPoly<Rat> n = q.num() * scale;
    UniPoly<Rat> d = q.den() * scale;
    Int g(0);
    for (const Rat& c : n.coeffs()) g = gcd(g, Int(c.get_num()));
    for (const Rat& c : d.coeffs()) g = gcd(g, Int(c.get_num()));
    if (g != 0) {
        Rat gs{g};
        n = n / gs;
        d = d / gs;
    }
    return {n, d};
}

std::string int_poly_str(const UniPoly<Rat>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.deg(); i >= 0; --i) {
        Rat c = p.coeff(i);
        if (sgn(c) == 0) continue;
        bool neg = sgn(c) < 0;
        Rat mag = neg ? Rat(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        bool unit = mag == Rat(1);
        if (i == 0 || !unit) out += rat_str(mag);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string qt_coef_str(const Qt& q) {
    auto [n, d] = int_cleared(q);
    bool nconst = n.deg() <= 0;
    bool dconst = d.deg() <= 0;
    if (dconst && d.coeff(0) == Rat(1))
        return nconst ? rat_str(n.is_zero() ? Rat(0) : n.coeff(0)) : "(" + int_poly_str(n, "t") + ")";
    if (nconst && dconst) return rat_str(n.coeff(0)) + "/" + rat_str(d.coeff(0));
    return "(" + int_poly_str(n, "t") + ")/(" + int_poly_str(d, "t") + ")";
}

// The coefficient string, with sum_form set when it contains a top-level '+'
// and so needs parentheses in front of a power of x.
std::string qelem_coef_str(const QElem& e, const std::string& wname, bool& sum_form) {
    if (e.is_rational()) {
        sum_form = false;
        return qt_coef_str(e.rational_part());
    }
    std::string wpart = qt_coef_str(e.w_part()) + "*" + wname;
    if (e.rational_part().is_zero()) {
        sum_form = false;
        return wpart;
    }
    sum_form = true;
    return qt_coef_str(e.rational_part()) + " + " + wpart;
}

std::string kpoly_str(const UniPoly<QElem>& f, const std::string& wname) {
    if (f.is_zero()) return "0";
    QElem one = kone_like(f.lc());
    std::string out;
    for (int i = f.deg(); i >= 0; --i) {
        QElem c = f.coeff(i);
        if (kis_zero(c)) continue;
        std::string xpart;
        if (i == 1) xpart = "x";
        if (i > 1) xpart = "x^" + std::to_string(i);
        if (i > 0 && c == one) {
            if (!out.empty()) out += " + ";
            out += xpart;
            continue;
        }
        bool sum_form = false;
        std::string cs = qelem_coef_str(c, wname, sum_form);
        if (sum_form) cs = "(" + cs + ")";
        if (!out.empty()) {
            if (cs.front() == '-') {
                out += " - ";
                cs.erase(cs.begin());
            } else {
                out += " + ";
            }
        }
        out += cs;
        if (i > 0) out += "*" + xpart;
    }
    return out;
}

} // namespace

Covering parse_covering(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.size() < 3) throw parse_error("covering parse: too few lines");
    if (strip_all_ws(lines[0]) != "coveringv1")
        throw parse_error("covering parse: expected header 'covering v1'");

    Covering c;
    std::string field = strip_all_ws(lines[1]);
    const std::string quad_prefix = "fieldQ(t)[w]w2=";
    if (field == "fieldQ") {
        c.field = CoverField{FieldKind::rationals, Qt()};
    } else if (field == "fieldQ(t)") {
        c.field = CoverField{FieldKind::rational_functions, Qt()};
    } else if (field.rfind(quad_prefix, 0) == 0) {
        Qt radicand = parse_radicand(field.substr(quad_prefix.size()));
        if (radicand.is_zero()) throw parse_error("covering parse: zero radicand");
        c.field = CoverField{FieldKind::quadratic, radicand};
        c.ctx = make_quad_ctx(radicand, "w");
    } else {
        throw parse_error("covering parse: unrecognized field line");
    }

    ExprEnv<UniPoly<QElem>> env = coef_env(c.ctx);
    auto parse_keyword_rest = [](const std::string& line, std::string& keyword) {
        std::istringstream in(line);
        in >> keyword;
        std::string rest;
        std::getline(in, rest);
        return rest;
    };

    std::string keyword;
    std::string rest = parse_keyword_rest(lines[2], keyword);
    if (keyword != "constant") throw parse_error("covering parse: expected a constant line");
    UniPoly<QElem> cpoly = parse_expr(rest, env);
    if (cpoly.deg() > 0) throw parse_error("covering parse: constant must not involve x");
    if (cpoly.is_zero()) throw parse_error("covering parse: constant is zero");
    QElem constant = cpoly.coeff(0);

    for (std::size_t i = 3; i < lines.size(); ++i) {
        std::istringstream in(lines[i]);
        std::string kw;
        long mult = 0;
        char colon = 0;
        in >> kw >> mult >> colon;
        if ((kw != "num" && kw != "den") || colon != ':' || mult < 1)
            throw parse_error("covering parse: expected 'num <mult> : <poly>' or 'den <mult> : <poly>'");
        std::string body;
        std::getline(in, body);
        UniPoly<QElem> f = parse_expr(body, env);
        if (f.deg() < 1) throw parse_error("covering parse: factor must involve x");
        QElem lead = f.lc();
        if (lead != kone_like(lead)) {
            constant = kw == "num" ? constant * lead.pow(mult) : constant / lead.pow(mult);
            f = f.monic();
        }
        (kw == "num" ? c.num : c.den).emplace_back(std::move(f), mult);
    }
    c.constant = constant;
    return c;
}

std::string serialize_covering(const Covering& c) {
    if (!c.constant)
        throw std::domain_error("serialize_covering: constant required; derive it first");
    // The file format fixes the extension symbol to "w"; an in-memory wname
    // is display metadata only.
    std::string wname = "w";
    std::string out = "covering v1\n";
    switch (c.field.kind) {
    case FieldKind::rationals:
        out += "field Q\n";
        break;
    case FieldKind::rational_functions:
        out += "field Q(t)\n";
        break;
    case FieldKind::quadratic:
        out += "field Q(t)[w] w2 = " + qt_coef_str(c.field.radicand) + "\n";
        break;
    }
    bool sum_form = false;
    out += "constant " + qelem_coef_str(*c.constant, wname, sum_form) + "\n";
    for (const auto& [f, m] : c.num)
        out += "num " + std::to_string(m) + " : " + kpoly_str(f, wname) + "\n";
    for (const auto& [g, k] : c.den)
        out += "den " + std::to_string(k) + " : " + kpoly_str(g, wname) + "\n";
    return out;
}

} // namespace ramcov
