#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "ramcov/elimination.hpp"
#include "ramcov/expr.hpp"
#include "ramcov/lifting.hpp"

using namespace ramcov;

namespace {

UniPoly<Rat> P(std::initializer_list<long> asc) {
    std::vector<Rat> c;
    for (long v : asc) c.emplace_back(v);
    return UniPoly<Rat>::from_coeffs(std::move(c));
}

MultiPoly<Rat> mp(const VarTablePtr& tab, const std::string& s) {
    ExprEnv<MultiPoly<Rat>> env;
    env.from_int = [tab](const Int& n) { return MultiPoly<Rat>::constant(tab, Rat(n)); };
    env.div = [](const MultiPoly<Rat>& a, const MultiPoly<Rat>& b) { return exact_div(a, b); };
    for (std::size_t i = 0; i < tab->size(); ++i)
        env.vars[tab->names[i]] = MultiPoly<Rat>::variable(tab, (int)i, Rat(1));
    return parse_expr(s, env);
}

MultiPoly<Fp> mpf(const VarTablePtr& tab, const std::string& s, std::uint64_t p) {
    return reduce_mod_p(mp(tab, s), p);
}

bool contains_poly(const std::vector<MultiPoly<Fp>>& v, const MultiPoly<Fp>& p) {
    return std::any_of(v.begin(), v.end(), [&](const MultiPoly<Fp>& q) { return q == p; });
}

} // namespace

TEST_CASE("sylvester resultants of univariate polynomials") {
    CHECK(resultant(P({-2, 1}), P({-5, 1})) == Rat(-3));
    CHECK(resultant(P({-5, 1}), P({-2, 1})) == Rat(3));

    // product formula: res(f,g) = lc(f)^deg g * prod g over the roots of f
    UniPoly<Rat> f = P({-2, 1}) * P({-3, 1});
    UniPoly<Rat> g = P({-5, 1}) * P({-7, 1});
    CHECK(resultant(f, g) == Rat(120)); // g(2)*g(3) = 15*8
    CHECK(resultant(g, f) == Rat(120));

    CHECK(resultant(f, f) == Rat(0));
    CHECK(resultant(P({1, 0, 1}), P({1, 0, 1}) * P({4, 1})) == Rat(0));

    // degenerate degrees: res(c, g) = c^deg g
    CHECK(resultant(P({3}), P({1, 7, 1})) == Rat(9));
    CHECK_THROWS_AS(resultant(P({3}), P({5})), std::invalid_argument);
    CHECK_THROWS_AS(resultant(UniPoly<Rat>(), P({1, 1})), std::invalid_argument);

    // vanishing iff common factor, on small planted pairs
    for (long r = -3; r <= 3; ++r) {
        UniPoly<Rat> common = P({-r, 1});
        UniPoly<Rat> a = common * P({1, 3, 1});
        UniPoly<Rat> b = common * P({-2, 5});
        CHECK(resultant(a, b) == Rat(0));
        UniPoly<Rat> c = P({1, 3, 1}) * P({7, 0, 0, 1}) + P({1});
        if (!gcd(c, b).is_zero() && gcd(c, b).deg() == 0) CHECK(resultant(c, b) != Rat(0));
    }

    // over a rational function field
    Qt t = Qt::t();
    UniPoly<Qt> fq = UniPoly<Qt>::from_coeffs({-t, Qt(Rat(0)), Qt(Rat(1))}); // x^2 - t
    UniPoly<Qt> gq = UniPoly<Qt>::from_coeffs({Qt(Rat(-3)), Qt(Rat(1))});    // x - 3
    CHECK(resultant(fq, gq) == Qt(Rat(9)) - t);
}

TEST_CASE("resultants with respect to one variable of multivariate polynomials") {
    auto tab = make_var_table({"x", "y"}, {1, 1});
    int x = 0;

    MultiPoly<Rat> r1 = resultant_in_var(mp(tab, "x - y"), mp(tab, "x + y"), x);
    CHECK(r1 == mp(tab, "2*y"));

    // planted common factor (x - y)
    CHECK(resultant_in_var(mp(tab, "(x - y)*(x + 1)"), mp(tab, "(x - y)*(x + 2)"), x).is_zero());

    // res_x(f, x + y) = f(-y) up to the leading-coefficient convention
    MultiPoly<Rat> r2 = resultant_in_var(mp(tab, "x^2 + y*x + 1"), mp(tab, "x + y"), x);
    CHECK(r2 == mp(tab, "1"));

    // evaluation compatibility: specializing y before or after agrees
    MultiPoly<Rat> f = mp(tab, "x^2 + 3*y*x - y + 2");
    MultiPoly<Rat> g = mp(tab, "2*x^2 - y^2*x + 5");
    MultiPoly<Rat> res = resultant_in_var(f, g, x);
    for (long yv = -2; yv <= 2; ++yv) {
        auto at_y = [&](const MultiPoly<Rat>& p) {
            std::vector<UniPoly<Rat>> vals = {UniPoly<Rat>::monomial(Rat(1), 1),
                                              UniPoly<Rat>(Rat(yv))};
            return p.eval_full<UniPoly<Rat>>(
                vals, [](const Rat& c) { return UniPoly<Rat>(c); }, UniPoly<Rat>());
        };
        UniPoly<Rat> ry = at_y(res);
        CHECK(ry.deg() <= 0);
        Rat expect = ry.is_zero() ? Rat(0) : ry.coeff(0);
        CHECK(resultant(at_y(f), at_y(g)) == expect);
    }
}

TEST_CASE("linear elimination with combination certificates") {
    auto tab = make_var_table({"x", "y"}, {1, 1});
    std::vector<MultiPoly<Rat>> eqs = {mp(tab, "x + y - 1"), mp(tab, "x - y")};
    LinearEliminationResult r = linear_eliminate(eqs, {0});
    REQUIRE(r.eliminants.size() == 1);
    CHECK(r.eliminants[0].eliminant == mp(tab, "2*y - 1"));
    CHECK(check_linear_certificate(eqs, r.eliminants[0]));
    CHECK(r.pivot_vars == std::vector<int>{0});

    CHECK_THROWS_AS(linear_eliminate({mp(tab, "x^2 + y")}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_eliminate({mp(tab, "x*y + 1")}, std::vector<int>{0, 1}),
                    std::invalid_argument);
}

TEST_CASE("linear elimination on a planted parametric system") {
    // three unknowns X,Y,Z over parameters s,u; rhs built from a planted
    // solution, so the four equations are consistent identically in (s,u)
    auto tab = make_var_table({"X", "Y", "Z", "s", "u"}, {1, 1, 1, 1, 1});
    std::vector<std::string> matrix_rows[4] = {
        {"s + 1", "u", "2"},
        {"3", "s - u", "u^2"},
        {"u + 2", "1", "s"},
        {"s", "s + u", "1"},
    };
    std::vector<std::string> plant = {"s", "u^2", "s + u"};
    std::vector<MultiPoly<Rat>> eqs;
    for (auto& row : matrix_rows) {
        MultiPoly<Rat> eq = MultiPoly<Rat>::zero(tab);
        const char* unknowns[3] = {"X", "Y", "Z"};
        for (int j = 0; j < 3; ++j) {
            eq += mp(tab, row[(std::size_t)j]) * mp(tab, unknowns[j]);
            eq -= mp(tab, row[(std::size_t)j]) * mp(tab, plant[(std::size_t)j]);
        }
        eqs.push_back(eq);
    }
    LinearEliminationResult consistent = linear_eliminate(eqs, {0, 1, 2});
    CHECK(consistent.eliminants.empty());
    CHECK(consistent.pivot_vars.size() == 3);

    // perturbing one right-hand side creates exactly one eliminant, equal to
    // the certificate weight of the perturbed equation times the perturbation
    MultiPoly<Rat> h = mp(tab, "(s - 3)*(u + 2)");
    std::vector<MultiPoly<Rat>> bad = eqs;
    bad[3] += h;
    LinearEliminationResult r = linear_eliminate(bad, {0, 1, 2});
    REQUIRE(r.eliminants.size() == 1);
    const LinearEliminant& el = r.eliminants[0];
    CHECK(check_linear_certificate(bad, el));
    CHECK(el.eliminant * el.content == el.certificate[3] * h);
    for (int v : {0, 1, 2}) CHECK(el.eliminant.degree_in(v) == 0);
    // the eliminant vanishes on the planted consistency locus s=3
    MultiPoly<Rat> at3 = el.eliminant.subst_var(3, MultiPoly<Rat>::constant(tab, Rat(3)));
    CHECK(at3.is_zero());
    CHECK(exact_div(el.eliminant, mp(tab, "s - 3")) * mp(tab, "s - 3") == el.eliminant);
}

TEST_CASE("degeneracy factor stripping") {
    auto tab = make_var_table({"c1", "c2"}, {1, 2});
    MultiPoly<Rat> g = mp(tab, "c1^2 + c2");
    MultiPoly<Rat> p = mp(tab, "c2^2*(1 - 4*c2)*(c1^2 + c2)") * make_rat(3, 7);
    FactorStrip fs = strip_factors(p, {mp(tab, "c2"), mp(tab, "1 - 4*c2")});
    CHECK(fs.stripped == g);
    REQUIRE(fs.removed.size() == 2);
    CHECK(fs.removed[0].second == 2);
    CHECK(fs.removed[1].second == 1);
}

TEST_CASE("interpolated bivariate gcd") {
    auto tab = make_var_table({"a", "s"}, {1, 1});
    auto prop = [](const MultiPoly<Rat>& p, const MultiPoly<Rat>& q) {
        auto [qe, qc] = q.lex_leading();
        auto it = p.terms().find(qe);
        return it != p.terms().end() && p * qc == q * it->second;
    };

    SUBCASE("planted common factor with repeated components") {
        MultiPoly<Rat> shared = mp(tab, "(a^2 - s^3 - 2) * (a - s + 1)^2");
        MultiPoly<Rat> f = shared * mp(tab, "(3*s + 1)*a^3 + s^2 - 7");
        MultiPoly<Rat> g = shared * mp(tab, "(3*s + 1)*a^2 - 5*a + s^4");
        MultiPoly<Rat> got = interpolated_gcd({f, g}, 0, 1);
        CHECK(prop(got, shared));
    }

    SUBCASE("leading coefficients sharing a parameter factor") {
        // Both leading coefficients vanish at s = 2; those sample points
        // must be skipped, not interpolated through.
        MultiPoly<Rat> shared = mp(tab, "a^2 + s*a - 1");
        MultiPoly<Rat> f = shared * mp(tab, "(s - 2)*a + s");
        MultiPoly<Rat> g = shared * mp(tab, "(s - 2)*a - 1");
        CHECK(prop(interpolated_gcd({f, g}, 0, 1), shared));
    }

    SUBCASE("coprime inputs give one") {
        MultiPoly<Rat> f = mp(tab, "a^2 + s");
        MultiPoly<Rat> g = mp(tab, "a + s^2 + 3");
        MultiPoly<Rat> got = interpolated_gcd({f, g}, 0, 1);
        CHECK(got == mp(tab, "1"));
    }

    SUBCASE("parameter-only common factors are content, not part of the gcd") {
        MultiPoly<Rat> f = mp(tab, "(s - 1) * (a + s)");
        MultiPoly<Rat> g = mp(tab, "(s - 1) * (a - 3)");
        CHECK(interpolated_gcd({f, g}, 0, 1) == mp(tab, "1"));
    }

    SUBCASE("three inputs") {
        MultiPoly<Rat> shared = mp(tab, "2*a - s^2 + s");
        MultiPoly<Rat> f = shared * mp(tab, "a + 1");
        MultiPoly<Rat> g = shared * mp(tab, "a - s");
        MultiPoly<Rat> h = shared * mp(tab, "a^2 + 5");
        CHECK(prop(interpolated_gcd({f, g, h}, 0, 1), shared));
    }
}

TEST_CASE("lagrange interpolation") {
    UniPoly<Rat> p = P({3, -2, 0, 5, 7}); // 7x^4 + 5x^3 - 2x + 3
    std::vector<Rat> xs, ys;
    for (long v : {-2, -1, 0, 1, 3}) {
        xs.emplace_back(v);
        ys.push_back(p.eval(Rat(v)));
    }
    CHECK(lagrange_interpolate(xs, ys) == p);
    std::vector<Rat> dup = {Rat(1), Rat(1)};
    std::vector<Rat> vals = {Rat(0), Rat(1)};
    CHECK_THROWS_AS(lagrange_interpolate(dup, vals), std::invalid_argument);
}

TEST_CASE("bounded buchberger on the two textbook fixtures") {
    const std::uint64_t p = 32003;
    auto tab = make_var_table({"x", "y"}, {1, 1});
    MonomialOrder ord = make_order(tab, {"x", "y"});

    GradedIdeal triv{{mpf(tab, "x", p), mpf(tab, "y", p)}, ord, 3};
    BoundedBasis b1 = buchberger_bounded(triv);
    CHECK(b1.basis.size() == 2);
    CHECK(contains_poly(b1.basis, mpf(tab, "x", p)));
    CHECK(contains_poly(b1.basis, mpf(tab, "y", p)));
    CHECK(b1.quotient_dims.at(0) == 1);
    CHECK(b1.quotient_dims.at(1) == 0);
    CHECK(b1.quotient_dims.at(2) == 0);
    CHECK(b1.quotient_dims.at(3) == 0);
    CHECK(b1.basis_by_degree.at(1) == 2);

    GradedIdeal circ{{mpf(tab, "x^2 + y^2", p), mpf(tab, "x*y", p)}, ord, 4};
    BoundedBasis b2 = buchberger_bounded(circ);
    REQUIRE(b2.basis.size() == 3);
    CHECK(contains_poly(b2.basis, mpf(tab, "x*y", p)));
    CHECK(contains_poly(b2.basis, mpf(tab, "x^2 + y^2", p)));
    CHECK(contains_poly(b2.basis, mpf(tab, "y^3", p)));
    CHECK(b2.quotient_dims.at(0) == 1);
    CHECK(b2.quotient_dims.at(1) == 2);
    CHECK(b2.quotient_dims.at(2) == 1); // y^2 is the only standard monomial of degree 2
    CHECK(b2.quotient_dims.at(3) == 0);
    CHECK(b2.quotient_dims.at(4) == 0);

    // every generator reduces to zero, leading terms pairwise non-divisible
    for (const auto& g : circ.generators) CHECK(normal_form(g, b2.basis, ord).is_zero());
    for (std::size_t i = 0; i < b2.basis.size(); ++i)
        for (std::size_t j = 0; j < b2.basis.size(); ++j) {
            if (i == j) continue;
            CHECK(!exp_divides(order_leading_exp(b2.basis[i], ord),
                               order_leading_exp(b2.basis[j], ord)));
        }

    std::string table = hilbert_table(b2, 0, 4);
    CHECK(table.find("degree") != std::string::npos);
    CHECK(std::count(table.begin(), table.end(), '\n') == 6);

    CHECK_THROWS_AS(
        buchberger_bounded(GradedIdeal{{mpf(tab, "x + x^2", p)}, ord, 3}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        buchberger_bounded(GradedIdeal{{mpf(tab, "x", 32004)}, ord, 3}),
        std::invalid_argument);
}

TEST_CASE("free ring dimension counts") {
    auto plain = make_var_table({"x", "y"}, {1, 1});
    auto dims = free_ring_dims(plain, 5);
    for (long d = 0; d <= 5; ++d) CHECK(dims.at(d) == d + 1);

    auto weighted = make_var_table({"a", "Z"}, {1, 3});
    auto wd = free_ring_dims(weighted, 6);
    CHECK(wd.at(0) == 1);
    CHECK(wd.at(1) == 1);
    CHECK(wd.at(2) == 1);
    CHECK(wd.at(3) == 2); // a^3, Z
    CHECK(wd.at(6) == 3); // a^6, a^3 Z, Z^2
}

TEST_CASE("least-precedence variable divisibility property") {
    const std::uint64_t p = 31991;
    auto tab = make_var_table({"x", "y", "z"}, {1, 1, 1});
    MonomialOrder ord = make_order(tab, {"x", "y", "z"});
    MultiPoly<Fp> zpoly = mpf(tab, "z", p);

    GradedIdeal ideal{{mpf(tab, "x*z + y*z", p), mpf(tab, "x^2 + y^2 + z^2", p)}, ord, 5};
    BoundedBasis b = buchberger_bounded(ideal);
    Exp ze = Exp(tab->size(), 0);
    ze[2] = 1;
    int divisible_count = 0;
    for (const auto& g : b.basis) {
        bool lt_div = exp_divides(ze, order_leading_exp(g, ord));
        MultiPoly<Fp> q(tab);
        bool poly_div = try_exact_div(g, zpoly, &q);
        CHECK(lt_div == poly_div);
        if (lt_div) ++divisible_count;
    }
    std::vector<MultiPoly<Fp>> quotients = detect_divisible(b.basis, ord, zpoly);
    CHECK((int)quotients.size() == divisible_count);
    for (const auto& q : quotients) CHECK(contains_poly(b.basis, q * zpoly));
}

TEST_CASE("detect divisible fixtures and misuse error") {
    const std::uint64_t p = 32003;
    auto tab = make_var_table({"c1", "z"}, {1, 1});
    MonomialOrder ord = make_order(tab, {"c1", "z"});
    std::vector<MultiPoly<Fp>> basis = {mpf(tab, "z*c1^2", p), mpf(tab, "c1^3", p)};
    auto quotients = detect_divisible(basis, ord, mpf(tab, "z", p));
    REQUIRE(quotients.size() == 1);
    CHECK(quotients[0] == mpf(tab, "c1^2", p));

    CHECK(detect_divisible({mpf(tab, "c1^3", p)}, ord, mpf(tab, "z", p)).empty());

    // x is not the least-precedence variable, so the leading term of x*y + z^2
    // is divisible by x while the polynomial is not
    auto tab3 = make_var_table({"x", "y", "z"}, {1, 1, 1});
    MonomialOrder ord3 = make_order(tab3, {"x", "y", "z"});
    std::vector<MultiPoly<Fp>> bad = {mpf(tab3, "x*y + z^2", p)};
    CHECK_THROWS_AS(detect_divisible(bad, ord3, mpf(tab3, "x", p)), std::runtime_error);
}

TEST_CASE("syzygy solving in degree windows") {
    Qt one(Rat(1));
    auto upq = [&](std::initializer_list<long> asc) {
        std::vector<Qt> c;
        for (long v : asc) c.emplace_back(Rat(v));
        return UniPoly<Qt>::from_coeffs(std::move(c));
    };
    UniPoly<Qt> x = upq({0, 1});

    // A = B = C = x with an explicit window override; (1,-1,0) is a solution
    Syzygy toy = syzygy_solve(x, x, x, 0, 4);
    CHECK(toy.Delta == 4);
    CHECK(toy.nullity >= 2);
    CHECK((toy.A * toy.U2 + toy.B * toy.V2 + toy.C * toy.W2).is_zero());
    CHECK(toy.U2.deg() <= 1);
    CHECK(toy.V2.deg() <= 1);
    CHECK(toy.W2.deg() <= 0);
    CHECK((x * upq({1}) + x * upq({-1}) + x * UniPoly<Qt>()).is_zero());
    // default Delta would be odd here
    CHECK_THROWS_AS(syzygy_solve(x, x, x, 0), std::invalid_argument);

    // planted: (x^2-1, x^2+x, x+1) carries the syzygy (1, -1, 1)
    UniPoly<Qt> A = upq({-1, 0, 1}), B = upq({0, 1, 1}), C = upq({1, 1});
    Syzygy s = syzygy_solve(A, B, C, 1);
    CHECK(s.Delta == 6);
    CHECK(s.U2.deg() <= 0);
    CHECK(s.V2.deg() <= 0);
    CHECK(s.W2.deg() <= 1);
    CHECK((A * s.U2 + B * s.V2 + C * s.W2).is_zero());
    CHECK(s.nullity == 2);
    // normalization: lowest-index nonzero component is monic
    const UniPoly<Qt>* lead = nullptr;
    for (const UniPoly<Qt>* q : {&s.U2, &s.V2, &s.W2})
        if (!q->is_zero()) {
            lead = q;
            break;
        }
    REQUIRE(lead != nullptr);
    CHECK(lead->coeff(lead->deg()) == one);

    // under the default windows a syzygy always exists (one more unknown than
    // equations); narrowing Delta forces W2 = 0, and a coprime pair A, B then
    // admits no nonzero solution
    CHECK_THROWS_AS(syzygy_solve(upq({1, 0, 1}), upq({2, 0, 1}), upq({3, 0, 1}), 0, 4),
                    std::runtime_error);

    // function-field coefficients: A = x - t, B = x - 1, C = (x-t)(x-1)
    Qt t = Qt::t();
    UniPoly<Qt> At = UniPoly<Qt>::from_coeffs({-t, one});
    UniPoly<Qt> Bt = upq({-1, 1});
    UniPoly<Qt> Ct = At * Bt;
    Syzygy st = syzygy_solve(At, Bt, Ct, 2);
    CHECK((At * st.U2 + Bt * st.V2 + Ct * st.W2).is_zero());
    CHECK(st.U2.deg() <= 2);
    CHECK(st.V2.deg() <= 2);
    CHECK(st.W2.deg() <= 0);
    CHECK(st.nullity >= 2);
}
