#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ramcov/certify.hpp"
#include "ramcov/ramification.hpp"

#include <stdexcept>
#include <string>

using namespace ramcov;

namespace {

// Rational-coefficient polynomial over QElem, ascending coefficients.
UniPoly<QElem> qp(std::initializer_list<long> asc) {
    std::vector<QElem> c;
    for (long v : asc) c.emplace_back(v);
    return UniPoly<QElem>::from_coeffs(std::move(c));
}

QElem qrat(long n, long d) { return QElem(Qt(make_rat(n, d))); }

// The degree-5 Belyi map over Q(sqrt(-15)) used by the hypergeometric
// transformation: constant (5-3w)/250, zeros at -(7+33w)/128 (order 5),
// poles at 0 and (781+171w)/1024 (order 3) and infinity.
const char* quintic_text =
    "covering v1\n"
    "field Q(t)[w] w2 = -15\n"
    "constant (5 - 3*w)/250\n"
    "num 5 : x + (7 + 33*w)/128\n"
    "den 1 : x\n"
    "den 3 : x - (781 + 171*w)/1024\n";

Covering square_map() {
    return parse_covering("covering v1\nfield Q\nconstant 1\nnum 2 : x\n");
}

// -27/4 x^2 (x-1): the classical degree-3 Belyi map 2+1|2+1|3.
Covering cubic_belyi() {
    return parse_covering(
        "covering v1\nfield Q\nconstant -27/4\nnum 2 : x\nnum 1 : x - 1\n");
}

// (t^2+1)/(3t) * (x-t)^2 / x: a family with a moving double zero, one
// moving extra critical point at x = -t, and a nontrivial degeneracy locus.
Covering moving_family() {
    return parse_covering(
        "covering v1\n"
        "field Q(t)\n"
        "constant (t^2 + 1)/(3*t)\n"
        "num 2 : x - t\n"
        "den 1 : x\n");
}

}  // namespace

TEST_CASE("branch data of the squaring map") {
    Covering c = square_map();
    CHECK(c.degree() == 2);
    BranchData d = branch_points(c);
    CHECK(d.degree == 2);
    CHECK(d.p0 == std::vector<long>{2});
    CHECK(d.p1 == std::vector<long>{1, 1});
    CHECK(d.pinf == std::vector<long>{2});
    CHECK(d.extra.deg() == 0);
    CHECK(!d.extra_location.has_value());
    CHECK(d.total_ramification == 2);

    // The fiber above 1 is x^2 - 1, squarefree in one piece.
    REQUIRE(d.one_fiber.size() == 1);
    CHECK(d.one_fiber[0].second == 1);
    CHECK(d.one_fiber[0].first == qp({-1, 0, 1}));

    CertReport rep = certify_pattern(c, parse_pattern("R3:2|1+1|2"));
    CHECK(rep.pass);
    CHECK(!rep.extra_present);
    CHECK(rep.degeneracy.deg() == 0);

    // A wrong declaration is rejected with an explanation, not an exception.
    CertReport bad = certify_pattern(c, parse_pattern("R3:2|2|2"));
    CHECK(!bad.pass);
    CHECK(!bad.notes.empty());
}

TEST_CASE("branch data rejects degenerate factorizations") {
    // Factor with a repeated root.
    CHECK_THROWS_AS(
        branch_points(parse_covering(
            "covering v1\nfield Q\nconstant 1\nnum 1 : x^2\n")),
        std::domain_error);
    // Numerator and denominator sharing a root.
    CHECK_THROWS_AS(
        branch_points(parse_covering(
            "covering v1\nfield Q\nconstant 1\nnum 1 : x\nden 1 : x\n")),
        std::domain_error);
    // x(x^2-3) ramifies at two finite points outside the three fibers, so
    // the leftover factor of the derivative has degree 2: not a covering of
    // the shape this certifier accepts.
    CHECK_THROWS_AS(
        branch_points(parse_covering(
            "covering v1\nfield Q\nconstant 1\nnum 1 : x\nnum 1 : x^2 - 3\n")),
        std::domain_error);
    // Missing constant.
    Covering c = square_map();
    c.constant.reset();
    CHECK_THROWS_AS(branch_points(c), std::domain_error);
}

TEST_CASE("cubic Belyi map certifies and has no square complement") {
    Covering c = cubic_belyi();
    CertReport rep = certify_pattern(c, parse_pattern("R3:2+1|2+1|3"));
    CHECK(rep.pass);
    CHECK(rep.computed_p1 == std::vector<long>{2, 1});
    // -27/4 x^2(x-1) - 1 = -27/4 (x-2/3)^2 (x+1/3): mixed multiplicities,
    // so there is no P with numerator scalar * x^e * P^k.
    CHECK_THROWS_AS(derive_complement(c), std::domain_error);
}

TEST_CASE("quintic map over a quadratic field") {
    Covering c = parse_covering(quintic_text);
    CHECK(c.field.kind == FieldKind::quadratic);
    CHECK(c.degree() == 5);
    REQUIRE(c.constant.has_value());
    REQUIRE(c.ctx != nullptr);
    CHECK(*c.constant ==
          QElem(Qt(make_rat(1, 50)), Qt(make_rat(-3, 250)), c.ctx));

    CertReport rep = certify_pattern(c, parse_pattern("R3:5|2+2+1|3+1+1"));
    CHECK(rep.pass);
    CHECK(rep.degeneracy.deg() == 0);

    // Sampled mode must agree (the coefficients are constant, so each
    // sample sees the same arithmetic over a fresh copy of the field).
    CertReport srep =
        certify_pattern(c, parse_pattern("R3:5|2+2+1|3+1+1"), CertMode::sampled, 3, 11);
    CHECK(srep.pass);
}

TEST_CASE("complement extraction with a known constant") {
    // phi = -4x(x-1): phi - 1 has numerator -4(x - 1/2)^2.
    Covering c = parse_covering(
        "covering v1\nfield Q\nconstant -4\nnum 1 : x\nnum 1 : x - 1\n");
    ComplementResult r = derive_complement(c);
    CHECK(r.complement == UniPoly<QElem>::from_coeffs({qrat(-1, 2), qrat(1, 1)}));
    CHECK(r.scalar == qrat(-4, 1));
    CHECK(r.x_exponent == 0);
    CHECK(r.power == 2);
    CHECK(!r.constant_derived);
    CHECK(r.constant == qrat(-4, 1));

    // phi = x^3 - 4x^2 + 4x + 1: phi - 1 = x(x-2)^2, a simple point of the
    // fiber above 1 pinned at the origin.
    Covering p = parse_covering(
        "covering v1\nfield Q\nconstant 1\nnum 1 : x^3 - 4*x^2 + 4*x + 1\n");
    ComplementResult rp = derive_complement(p);
    CHECK(rp.x_exponent == 1);
    CHECK(rp.power == 2);
    CHECK(rp.scalar == qrat(1, 1));
    CHECK(rp.complement == qp({-2, 1}));
    // And the same map certifies as almost Belyi.
    CertReport rep = certify_pattern(p, parse_pattern("R4:1+1+1|2+1|3"));
    CHECK(rep.pass);
    CHECK(rep.extra_present);
    CHECK(rep.extra_simple);
}

TEST_CASE("complement derivation recovers a missing constant") {
    // phi = C (x^4 - 4x^2 + 13/3) with C unknown.  The numerator of phi'
    // is 4x(x^2-2); no factor is forced, so P(x-x0) = x(x^2-2) up to scale,
    // and matching the two top coefficients of C(A - P^2) = 1 gives x0 = 0
    // and C = 3.  Then phi - 1 = 3(x^2-2)^2.
    Covering c;
    c.field.kind = FieldKind::rationals;
    c.num.emplace_back(UniPoly<QElem>::from_coeffs(
                           {qrat(13, 3), qrat(0, 1), qrat(-4, 1), qrat(0, 1), qrat(1, 1)}),
                       1);
    ComplementResult r = derive_complement(c);
    CHECK(r.constant_derived);
    CHECK(r.constant == qrat(3, 1));
    CHECK(r.complement == qp({-2, 0, 1}));
    CHECK(r.scalar == qrat(3, 1));
    CHECK(r.x_exponent == 0);

    // With the derived constant installed the covering certifies, and the
    // extra critical point sits where the derivation put it.
    c.constant = r.constant;
    CertReport rep = certify_pattern(c, parse_pattern("R4:1+1+1+1|2+2|4"));
    CHECK(rep.pass);
    REQUIRE(rep.extra_location.has_value());
    CHECK(*rep.extra_location == qrat(0, 1));

    // The same route refuses a numerator that fails to dominate: for
    // (x-t)^2/x the denominator is only one degree down.
    Covering m = moving_family();
    m.constant.reset();
    CHECK_THROWS_AS(derive_complement(m), std::domain_error);

    // Route with the constant present refuses mixed multiplicities: that is
    // covered by the cubic Belyi case above; here check the route agrees
    // with the known-constant route on the same covering.
    Covering known = c;
    ComplementResult rk = derive_complement(known);
    CHECK(!rk.constant_derived);
    CHECK(rk.complement == r.complement);
    CHECK(rk.scalar == r.scalar);
}

TEST_CASE("family with a moving double point") {
    Covering c = moving_family();
    CHECK(c.field.kind == FieldKind::rational_functions);

    BranchData d = branch_points(c);
    CHECK(d.p0 == std::vector<long>{2});
    CHECK(d.p1 == std::vector<long>{1, 1});
    CHECK(d.pinf == std::vector<long>{1, 1});
    CHECK(d.extra.deg() == 1);
    REQUIRE(d.extra_location.has_value());
    CHECK(*d.extra_location == QElem(Qt() - Qt::t()));
    CHECK(d.total_ramification == 2);

    CertReport rep = certify_pattern(c, parse_pattern("R4:2|1+1|1+1"));
    CHECK(rep.pass);

    // Degeneracy locus: t from the resultant of (x-t) and x, again t from
    // the constant's denominator, t^2+1 from its numerator.
    UniPoly<Rat> locus = degeneracy_locus(c);
    CHECK(locus == UniPoly<Rat>::from_coeffs({Rat(0), Rat(1), Rat(0), Rat(1)}));

    // Sampled certification avoids the locus on its own.
    CertReport srep =
        certify_pattern(c, parse_pattern("R4:2|1+1|1+1"), CertMode::sampled, 4, 7);
    CHECK(srep.pass);
    CHECK(srep.notes.size() >= 4);

    // A caller-chosen good point works and says so.
    CertReport at = certify_at_points(c, parse_pattern("R4:2|1+1|1+1"), {Rat(2)});
    CHECK(at.pass);
    REQUIRE(!at.notes.empty());
    CHECK(at.notes.front().find("branching matches") != std::string::npos);

    // A degenerate point is an error naming the vanishing piece.
    try {
        certify_at_points(c, parse_pattern("R4:2|1+1|1+1"), {Rat(0)});
        FAIL("expected a degenerate-sample error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("degenerate") != std::string::npos);
    }
}

TEST_CASE("sampled mode over plain Q falls back to the symbolic check") {
    CertReport rep =
        certify_pattern(square_map(), parse_pattern("R3:2|1+1|2"), CertMode::sampled);
    CHECK(rep.pass);
    REQUIRE(!rep.notes.empty());
    CHECK(rep.notes.front().find("symbolic") != std::string::npos);
}

TEST_CASE("composition of coverings") {
    Covering sq = square_map();
    Covering quartic = compose_coverings(sq, sq);
    CHECK(quartic.degree() == 4);
    REQUIRE(quartic.constant.has_value());
    CHECK(*quartic.constant == qrat(1, 1));
    REQUIRE(quartic.num.size() == 1);
    CHECK(quartic.num[0].second == 4);
    CHECK(certify_pattern(quartic, parse_pattern("R3:4|1+1+1+1|4")).pass);

    // Degree-3 Belyi map after the squaring map: -27/4 x^4 (x^2 - 1).
    Covering comp = compose_coverings(cubic_belyi(), sq);
    CHECK(comp.degree() == 6);
    CHECK(*comp.constant == qrat(-27, 4));
    CertReport rep = certify_pattern(comp, parse_pattern("R3:4+1+1|2+2+1+1|6"));
    CHECK(rep.pass);

    Covering noconst = square_map();
    noconst.constant.reset();
    CHECK_THROWS_AS(compose_coverings(noconst, sq), std::domain_error);
    CHECK_THROWS_AS(compose_coverings(sq, noconst), std::domain_error);
}

TEST_CASE("hypergeometric pullback through the quintic map") {
    Covering c = parse_covering(quintic_text);
    REQUIRE(c.ctx != nullptr);

    // Order-1 oracle, computed without any series machinery.  With
    // u = 1/phi = x (x - beta)^3 / (C (x + gamma)^5),
    // the first coefficient is u1 = -beta^3 / (C gamma^5), and matching
    // x^1 in 2F1(1/4,-1/12;2/3;x) = (1+alpha x)^(1/12) 2F1(11/60,-1/60;2/3;u)
    // requires -1/32 = alpha/12 - (11/2400) u1.
    QElem beta = QElem(Qt(make_rat(781, 1024)), Qt(make_rat(171, 1024)), c.ctx);
    QElem gamma = QElem(Qt(make_rat(7, 128)), Qt(make_rat(33, 128)), c.ctx);
    QElem alpha = QElem(Qt(make_rat(7, 128)), Qt(make_rat(-33, 128)), c.ctx);
    QElem u1 = QElem(Qt(Rat(0))) - beta.pow(3) / (*c.constant * gamma.pow(5));
    QElem lhs1 = qrat(-1, 32);
    QElem rhs1 = alpha * qrat(1, 12) + u1 * qrat(-11, 2400);
    CHECK(lhs1 == rhs1);

    CHECK(check_hpg_transformation(c, 1));
    CHECK(check_hpg_transformation(c, 12));
    // A corrupted exponent must not survive even a short expansion; the
    // sign-flipped variant is the classic mistake and dies at order 1.
    CHECK(!check_hpg_transformation(c, 3, make_rat(-1, 11)));
    CHECK(!check_hpg_transformation(c, 1, make_rat(-1, 12)));

    // Gates: the identity only makes sense over w^2 = -15 and for a map
    // whose reciprocal vanishes at the origin.
    CHECK_THROWS_AS(check_hpg_transformation(square_map(), 2), std::domain_error);
    Covering nv = parse_covering(
        "covering v1\nfield Q(t)[w] w2 = -15\nconstant 1\n"
        "num 1 : x + 1\nden 1 : x + 2\n");
    CHECK_THROWS_AS(check_hpg_transformation(nv, 2), std::domain_error);
}

TEST_CASE("covering serialization round trips and is canonical") {
    Covering c = parse_covering(quintic_text);
    std::string s1 = serialize_covering(c);
    Covering c2 = parse_covering(s1);
    std::string s2 = serialize_covering(c2);
    CHECK(s1 == s2);
    CHECK(*c2.constant == *c.constant);
    CHECK(c2.degree() == 5);

    // Rational-function constants survive the trip too.
    Covering m = moving_family();
    std::string ms1 = serialize_covering(m);
    CHECK(serialize_covering(parse_covering(ms1)) == ms1);

    // Whitespace does not matter.
    Covering dense = parse_covering(
        "covering v1\nfield Q\nconstant -27/4\nnum 2:x\nnum 1:x-1\n");
    Covering spaced = parse_covering(
        "covering   v1\n field Q\nconstant   -27 / 4\nnum 2  :  x\nnum 1 : x  -  1\n");
    CHECK(serialize_covering(dense) == serialize_covering(cubic_belyi()));
    CHECK(serialize_covering(spaced) == serialize_covering(cubic_belyi()));

    // Non-monic factors are normalized into the constant.
    Covering nm = parse_covering(
        "covering v1\nfield Q\nconstant 1\nnum 1 : 2*x - 1\n");
    CHECK(*nm.constant == qrat(2, 1));
    std::string ns = serialize_covering(nm);
    CHECK(ns.find("constant 2\n") != std::string::npos);
    CHECK(ns.find("num 1 : x - 1/2\n") != std::string::npos);

    Covering bare = square_map();
    bare.constant.reset();
    CHECK_THROWS_AS(serialize_covering(bare), std::domain_error);
}

TEST_CASE("covering parser rejects malformed input") {
    CHECK_THROWS_AS(parse_covering("nonsense"), parse_error);
    CHECK_THROWS_AS(parse_covering("field Q\nconstant 1\nnum 2 : x\n"), parse_error);
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield R\nconstant 1\nnum 2 : x\n"),
        parse_error);
    // Constant must be present, x-free, and nonzero.
    CHECK_THROWS_AS(parse_covering("covering v1\nfield Q\nnum 2 : x\n"),
                    parse_error);
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield Q\nconstant x\nnum 2 : x\n"),
        parse_error);
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield Q\nconstant 0\nnum 2 : x\n"),
        parse_error);
    // Factor lines: positive multiplicity, polynomial involving x, no
    // division by anything of positive degree.
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield Q\nconstant 1\nnum 0 : x\n"),
        parse_error);
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield Q\nconstant 1\nnum 1 : 5\n"),
        parse_error);
    CHECK_THROWS_AS(
        parse_covering(
            "covering v1\nfield Q\nconstant 1\nnum 1 : x + 1/(x)\n"),
        parse_error);
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield Q\nconstant 1\nfoo 1 : x\n"),
        parse_error);
    // w only exists over the quadratic field.
    CHECK_THROWS_AS(
        parse_covering("covering v1\nfield Q(t)\nconstant 1\nnum 1 : x - w\n"),
        parse_error);
}

TEST_CASE("exact polynomial roots") {
    UniPoly<Rat> p = UniPoly<Rat>::from_coeffs({Rat(-1), Rat(3), Rat(1)});
    CHECK(exact_poly_root(p.pow(3), 3) == p);
    UniPoly<Rat> lin = UniPoly<Rat>::from_coeffs({Rat(1), Rat(1)});
    CHECK(exact_poly_root(lin.pow(5), 5) == lin);
    CHECK(exact_poly_root(p, 1) == p);

    UniPoly<Rat> off = p.pow(3) + UniPoly<Rat>(Rat(1));
    CHECK_THROWS_AS(exact_poly_root(off, 3), std::domain_error);
    UniPoly<Rat> nonmonic = UniPoly<Rat>::from_coeffs({Rat(1), Rat(4), Rat(4)});
    CHECK_THROWS_AS(exact_poly_root(nonmonic, 2), std::domain_error);
    CHECK_THROWS_AS(exact_poly_root(p, 2), std::domain_error);
    CHECK_THROWS_AS(exact_poly_root(p, 0), std::invalid_argument);
}
