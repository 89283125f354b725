#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ramcov/expr.hpp"
#include "ramcov/multipoly.hpp"
#include "ramcov/quadext.hpp"
#include "ramcov/ratfunc.hpp"
#include "ramcov/series.hpp"
#include "ramcov/unipoly.hpp"

using namespace ramcov;

namespace {

UniPoly<Rat> P(std::initializer_list<long> asc) {
    std::vector<Rat> c;
    for (long v : asc) c.emplace_back(v);
    return UniPoly<Rat>::from_coeffs(std::move(c));
}

ExprEnv<UniPoly<Rat>> tpoly_env() {
    ExprEnv<UniPoly<Rat>> env;
    env.from_int = [](const Int& n) { return UniPoly<Rat>(Rat(n)); };
    env.div = [](const UniPoly<Rat>& a, const UniPoly<Rat>& b) { return exact_div(a, b); };
    env.vars["t"] = UniPoly<Rat>::monomial(Rat(1), 1);
    env.vars["x"] = UniPoly<Rat>::monomial(Rat(1), 1);
    return env;
}

UniPoly<Rat> tp(const std::string& s) {
    static const ExprEnv<UniPoly<Rat>> env = tpoly_env();
    return parse_expr(s, env);
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(rat_str(make_rat(6, -4)) == "-3/2");
    CHECK(rat_str(make_rat(-8, -2)) == "4");
    CHECK(parse_rat("22/7") == make_rat(22, 7));
    CHECK(parse_rat("-5") == Rat(-5));
    CHECK(parse_rat("0") == Rat(0));
    CHECK_THROWS_AS(parse_rat("4/6", true), parse_error);
    CHECK_THROWS_AS(parse_rat("3/1", true), parse_error);
    CHECK_THROWS_AS(parse_rat("03", false), parse_error);
    CHECK_THROWS_AS(parse_rat("1/0", false), parse_error);
    CHECK_THROWS_AS(parse_rat("", false), parse_error);
    CHECK_THROWS_AS(parse_rat("2.5", false), parse_error);
    CHECK(parse_rat("4/6", false) == make_rat(2, 3));
}

TEST_CASE("rational and integer powers and square roots") {
    CHECK(rat_pow(make_rat(2, 3), 3) == make_rat(8, 27));
    CHECK(rat_pow(make_rat(2, 3), -2) == make_rat(9, 4));
    CHECK(rat_pow(Rat(0), 0) == Rat(1));
    CHECK(int_sqrt_exact(Int(144)).value() == 12);
    CHECK(!int_sqrt_exact(Int(145)).has_value());
    CHECK(!int_sqrt_exact(Int(-4)).has_value());
    CHECK(rat_sqrt_exact(make_rat(49, 64)).value() == make_rat(7, 8));
    CHECK(!rat_sqrt_exact(make_rat(2, 1)).has_value());
}

TEST_CASE("prime field arithmetic") {
    const std::uint64_t p = 32003;
    Fp a(12345, p), b(31999, p);
    CHECK((a + b).value() == (12345ull + 31999ull) % p);
    CHECK((a - b).value() == (12345ull + p - 31999ull) % p);
    CHECK((a * b).value() == (12345ull * 31999ull) % p);
    CHECK((a / b * b) == a);
    CHECK(a.pow(p - 1).value() == 1); // Fermat
    for (std::uint64_t v = 1; v < 50; ++v) {
        Fp x(v, p);
        CHECK((x * x.inverse()).value() == 1);
    }
    CHECK_THROWS_AS(Fp(1, p) + Fp(1, 32009), modulus_mismatch);
    CHECK_THROWS_AS(Fp(0, p).inverse(), std::domain_error);
    CHECK(Fp::from_int(Int(-1), p).value() == p - 1);
    CHECK(Fp::from_rat(make_rat(1, 2), p) * Fp(2, p) == Fp(1, p));
    CHECK_THROWS_AS(Fp::from_rat(make_rat(1, (long)p), p), std::domain_error);
}

TEST_CASE("primality utilities") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(32003));
    CHECK(is_prime_u64(2305843009213693951ull)); // 2^61 - 1
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(561));    // Carmichael
    CHECK(!is_prime_u64(323323));
    CHECK(next_prime_u64(32003) == 32009);
    auto ps = probe_primes(3);
    CHECK(ps.size() == 3);
    for (auto q : ps) {
        CHECK(q > (1ull << 62));
        CHECK(is_prime_u64(q));
    }
    CHECK(ps[0] < ps[1]);
}

TEST_CASE("univariate polynomial ring operations") {
    auto f = P({1, 2, 3});  // 3x^2+2x+1
    auto g = P({-1, 1});    // x-1
    CHECK(f.deg() == 2);
    CHECK((f * g).deg() == 3);
    CHECK((f + (-f)).is_zero());
    CHECK(UniPoly<Rat>::from_coeffs({Rat(1), Rat(0), Rat(0)}).deg() == 0);
    CHECK(f.eval(Rat(2)) == Rat(17));
    // evaluation is a ring morphism
    Rat x0 = make_rat(5, 7);
    CHECK((f * g).eval(x0) == f.eval(x0) * g.eval(x0));
    CHECK((f + g).eval(x0) == f.eval(x0) + g.eval(x0));
    // product rule
    auto lhs = (f * g).derivative();
    auto rhs = f.derivative() * g + f * g.derivative();
    CHECK(lhs == rhs);
    CHECK(f.shifted(2) == f * P({0, 0, 1}));
    CHECK(f.pow(3) == f * f * f);
    CHECK(f.monic().lc() == Rat(1));
}

TEST_CASE("division with remainder") {
    auto a = tp("x^5 - 3*x^3 + 7*x - 2");
    auto b = tp("2*x^2 + x - 1");
    auto [q, r] = divrem(a, b);
    CHECK(a == q * b + r);
    CHECK(r.deg() < b.deg());
    CHECK(exact_div(a * b, b) == a);
    CHECK_THROWS_AS(exact_div(tp("x^2+1"), tp("x+1")), std::domain_error);
    CHECK(divides(b, a * b));
    CHECK(!divides(b, a * b + UniPoly<Rat>(Rat(1))));
}

TEST_CASE("rational gcd agrees with known factorizations") {
    auto f = tp("(x+1)^2 * (x-3) * (2*x+5)");
    auto g = tp("(x+1) * (x+5) * (2*x+5)^2");
    auto h = gcd(f, g);
    CHECK(h == tp("(x+1)*(x+5/2)")); // monic normalization
    CHECK(divides(h, f));
    CHECK(divides(h, g));
    // coprime pair
    CHECK(gcd(tp("x^7-2"), tp("x^4+x+1")).deg() == 0);
    // common factor with large coefficients
    auto common = tp("123456789*x^3 - 987654321*x + 1000000007");
    auto A = common * tp("x^4 + 17");
    auto B = common * tp("x^5 - 9*x + 3");
    auto G = gcd(A, B);
    CHECK(G == common.monic());
    // zero handling
    CHECK(gcd(UniPoly<Rat>(), f) == f.monic());
}

TEST_CASE("integer polynomial layer") {
    ZPoly a = {Int(2), Int(4), Int(6)};
    CHECK(zp_content(a) == 2);
    CHECK(zp_deg(a) == 2);
    ZPoly d = {Int(-1), Int(1)};                      // x-1
    ZPoly prod = zp_mul(d, {Int(3), Int(0), Int(5)}); // (x-1)(5x^2+3)
    ZPoly q;
    CHECK(zp_divides(d, prod, &q));
    CHECK(q == ZPoly({Int(3), Int(0), Int(5)}));
    CHECK(!zp_divides({Int(1), Int(1)}, prod, nullptr));
    // gcd with content: gcd(6(x-1)(x+2), 4(x-1)(x+3)) = 2(x-1)
    ZPoly f = zp_mul({Int(-6), Int(6)}, {Int(2), Int(1)});
    ZPoly g = zp_mul({Int(-4), Int(4)}, {Int(3), Int(1)});
    CHECK(zp_gcd(f, g) == ZPoly({Int(-2), Int(2)}));
    auto pr = probe_primes(1)[0];
    CHECK(zp_coprime_probe({Int(1), Int(0), Int(1)}, {Int(-1), Int(1)}, pr));
    CHECK(!zp_coprime_probe(f, g, pr));
}

TEST_CASE("squarefree decomposition reassembles the input") {
    auto f = tp("(x+1) * (x+2)^2 * (x+3)^3");
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].first == tp("x+1"));
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == tp("x+2"));
    CHECK(parts[1].second == 2);
    CHECK(parts[2].first == tp("x+3"));
    CHECK(parts[2].second == 3);
    UniPoly<Rat> re(Rat(1));
    for (auto& [piece, mult] : parts) re = re * piece.pow((unsigned long)mult);
    CHECK(re == f.monic());
    CHECK(squarefree_part(f) == tp("(x+1)*(x+2)*(x+3)"));
}

TEST_CASE("rational function field Q(t)") {
    Qt t = Qt::t();
    Qt one(Rat(1));
    Qt f = (t * t + one) / t; // (t^2+1)/t
    CHECK(f.num() == tp("t^2+1"));
    CHECK(f.den() == tp("t"));
    // reduction: (t^2-1)/(t-1) = t+1
    Qt g = Qt(tp("t^2-1"), tp("t-1"));
    CHECK(g.num() == tp("t+1"));
    CHECK(g.is_polynomial());
    // field axioms spot checks
    Qt h = Qt(tp("3*t+2"), tp("t^2+t+1"));
    CHECK((f + h) - h == f);
    CHECK((f * h) / h == f);
    CHECK((f / f) == one);
    // derivative via quotient rule oracle: (n/d)' * d^2 == n'd - nd'
    Qt df = f.derivative();
    Qt d2(f.den() * f.den());
    CHECK(df * d2 == Qt(f.num().derivative() * f.den() - f.num() * f.den().derivative()));
    // substitution: f(t -> t+1) = ((t+1)^2 + 1)/(t+1)
    Qt sub = f.subst(Qt(tp("t+1")));
    CHECK(sub == Qt(tp("(t+1)^2+1"), tp("t+1")));
    // substitution by a genuine rational function, checked by evaluation
    Qt v = Qt(tp("t-3"), tp("2*t+1"));
    Qt fs = f.subst(v);
    Rat t0 = make_rat(4, 3);
    Rat v0 = v.eval(t0).value();
    CHECK(fs.eval(t0).value() == f.eval(v0).value());
    CHECK(!(one / (t - Qt(Rat(2)))).eval(Rat(2)).has_value());
    CHECK(f.pow(-2) * f.pow(2) == one);
}

TEST_CASE("quadratic extension elements") {
    // w^2 = r with r = t^3 - t + 1
    auto ctx = make_quad_ctx(Qt(tp("t^3 - t + 1")));
    QElem w = QElem::w(ctx);
    Qt r = ctx->radicand;
    CHECK((w * w) == QElem(r, Qt(), ctx));
    QElem z(Qt(tp("t+2")), Qt(tp("t")), ctx); // (t+2) + t*w
    CHECK((z * z.inverse()) == kone_like(z));
    CHECK(z.conj() * z == QElem(z.norm(), Qt(), ctx));
    CHECK((z + z.conj()) == QElem(Qt(tp("2*t+4")), Qt(), ctx));
    // derivative is a derivation: (z^2)' == 2 z z'
    QElem lhs = (z * z).derivative();
    QElem rhs = kfrom_int_like(2, z) * z * z.derivative();
    CHECK(lhs == rhs);
    // (w^2)' = r' as rational elements
    CHECK((w * w).derivative() == QElem(r.derivative(), Qt(), ctx));
    // promotion of plain rationals into the extension
    QElem plain(Qt(tp("t")));
    CHECK((plain + w) - w == QElem(Qt(tp("t")), Qt(), ctx));
    auto other = make_quad_ctx(Qt(tp("t+5")));
    CHECK_THROWS_AS(w + QElem::w(other), std::logic_error);
    // substitution moves the radicand along
    QElem zs = z.subst(Qt(tp("t^2")));
    CHECK(zs.ctx()->radicand == Qt(tp("t^6 - t^2 + 1")));
    CHECK(zs.rational_part() == Qt(tp("t^2+2")));
}

TEST_CASE("series arithmetic and composition") {
    const std::size_t N = 12;
    Rat model(1);
    auto xpoly = UniPoly<Rat>::monomial(Rat(1), 1);
    auto sx = Series<Rat>::from_poly(xpoly, N, model);
    // geometric series: 1/(1-x)
    auto one_minus_x = Series<Rat>::from_poly(tp("1-x"), N, model);
    auto geo = one_minus_x.inverse();
    for (std::size_t k = 0; k < N; ++k) CHECK(geo.coeff(k) == Rat(1));
    CHECK((geo * one_minus_x) == Series<Rat>::constant(Rat(1), N));
    // composition: 1/(1-x) at x -> x/(1+x) gives 1+x
    auto inner = Series<Rat>::from_poly(xpoly, N, model) *
                 Series<Rat>::from_poly(tp("1+x"), N, model).inverse();
    auto composed = geo.compose(inner);
    CHECK(composed.coeff(0) == Rat(1));
    CHECK(composed.coeff(1) == Rat(1));
    for (std::size_t k = 2; k < N; ++k) CHECK(composed.coeff(k) == Rat(0));
}

TEST_CASE("binomial series") {
    const std::size_t N = 10;
    // integer exponent agrees with polynomial powers
    auto s = binomial_series(Rat(3), Rat(4), N);
    auto p = tp("(1+3*x)^4");
    for (std::size_t k = 0; k < N; ++k) CHECK(s.coeff(k) == p.coeff((int)k));
    // (1+x)^(1/2) squared
    auto half = binomial_series(Rat(1), make_rat(1, 2), N);
    auto sq = half * half;
    CHECK(sq.coeff(0) == Rat(1));
    CHECK(sq.coeff(1) == Rat(1));
    for (std::size_t k = 2; k < N; ++k) CHECK(sq.coeff(k) == Rat(0));
}

TEST_CASE("hypergeometric series against closed forms") {
    const std::size_t N = 12;
    Rat model(1);
    // 2F1(1,1;2;x) = -log(1-x)/x: coefficients 1/(k+1)
    auto f = hpg_series<Rat>(Rat(1), Rat(1), Rat(2), N, model);
    for (std::size_t k = 0; k < N; ++k) CHECK(f.coeff(k) == make_rat(1, (long)k + 1));
    // 2F1(a,b;b;x) = (1-x)^(-a)
    Rat a = make_rat(3, 7), b = make_rat(2, 5);
    auto g = hpg_series<Rat>(a, b, b, N, model);
    auto bin = binomial_series(Rat(-1), -a, N);
    CHECK(g == bin);
    // Euler transformation: 2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a,c-b;c;x)
    Rat c = make_rat(4, 3);
    auto lhsS = hpg_series<Rat>(a, b, c, N, model);
    auto rhsS = binomial_series(Rat(-1), c - a - b, N) * hpg_series<Rat>(c - a, c - b, c, N, model);
    CHECK(lhsS == rhsS);
}

TEST_CASE("multivariate polynomials") {
    auto vars = make_var_table({"x", "y"}, {1, 2});
    auto X = MultiPoly<Rat>::variable(vars, 0, Rat(1));
    auto Y = MultiPoly<Rat>::variable(vars, 1, Rat(1));
    auto f = (X + Y).pow(3);
    CHECK(f.num_terms() == 4);
    CHECK(exact_div(f, X + Y) == (X + Y).pow(2));
    MultiPoly<Rat> q;
    CHECK(!try_exact_div(f + MultiPoly<Rat>::constant(vars, Rat(1)), X + Y, &q));
    // weighted degree: y has weight 2
    CHECK(f.wdeg() == 6);
    CHECK(f.is_weighted_homogeneous() == false); // x^3 has wdeg 3, y^3 has wdeg 6
    CHECK((X * X * Y).wdeg() == 4);
    CHECK((X + Y).subst_var(0, Y) == Y * MultiPoly<Rat>::constant(vars, Rat(2)));
    // collect in x: (x+y)^2 = x^2 + 2xy + y^2
    auto sq = (X + Y).pow(2);
    auto by_x = sq.collect_in(0);
    CHECK(by_x.size() == 3);
    CHECK(by_x[2] == MultiPoly<Rat>::constant(vars, Rat(1)));
    CHECK(by_x[1] == Y * MultiPoly<Rat>::constant(vars, Rat(2)));
    CHECK(by_x[0] == Y * Y);
    // evaluation morphism into Rat
    std::vector<Rat> vals = {make_rat(2, 3), make_rat(-1, 4)};
    Rat direct = f.eval_full<Rat>(vals, [](const Rat& v) { return v; }, Rat(0));
    Rat expect = rat_pow(vals[0] + vals[1], 3);
    CHECK(direct == expect);
    // derivative
    CHECK(f.derivative(0) == (X + Y).pow(2) * MultiPoly<Rat>::constant(vars, Rat(3)));
    // content
    auto g = X * MultiPoly<Rat>::constant(vars, make_rat(4, 3)) +
             Y * MultiPoly<Rat>::constant(vars, make_rat(2, 9));
    CHECK(content_rat(g) == make_rat(2, 9));
    CHECK(primitive_part(g) == X * MultiPoly<Rat>::constant(vars, Rat(6)) + Y);
}

TEST_CASE("expression parser") {
    CHECK(tp("(t+1)^2 - t^2 - 2*t - 1").is_zero());
    CHECK(tp("-(3*t - 1)*(t + 2)") == tp("-3*t^2 - 5*t + 2"));
    ExprEnv<Rat> renv;
    renv.from_int = [](const Int& n) { return Rat(n); };
    renv.div = [](const Rat& a, const Rat& b) { return a / b; };
    CHECK(parse_expr<Rat>("3/4 - 1/4 + 1/2", renv) == Rat(1));
    CHECK(parse_expr<Rat>("2^10", renv) == Rat(1024));
    CHECK_THROWS_AS(parse_expr<Rat>("nope + 1", renv), parse_error);
    CHECK_THROWS_AS(tp("t + "), parse_error);
    CHECK_THROWS_AS(tp("(t"), parse_error);
}
