#pragma once

#include "ramcov/quadext.hpp"
#include "ramcov/ramification.hpp"
#include "ramcov/series.hpp"
#include "ramcov/unipoly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramcov {

// ---------------------------------------------------------------------------
// Coverings of P^1 in factored form, and exact certification of their
// branching patterns.  Nothing here ever trusts the declared structure:
// squarefreeness and pairwise coprimality are established by gcds at
// certification time, fiber multiplicities are read off the certified
// factorization, and every derived identity is re-verified by expanding it.
// ---------------------------------------------------------------------------

// Coefficient field: Q, the rational function field Q(t), or a quadratic
// extension Q(t)[w]/(w^2 - radicand) (the radicand may be constant, giving a
// quadratic number field).
enum class FieldKind { rationals, rational_functions, quadratic };

struct CoverField {
    FieldKind kind = FieldKind::rationals;
    Qt radicand; // meaningful only when kind == quadratic
};

// phi(x) = constant * prod num_i^{m_i} / prod den_j^{k_j} with monic
// nonconstant factors over the coefficient field.  The constant may be
// absent for coverings assembled from coefficient tables; derive_complement
// can then recover it from the fiber structure.
struct Covering {
    CoverField field;
    QuadCtxPtr ctx; // shared quadratic context; null unless field is quadratic
    std::optional<QElem> constant;
    std::vector<std::pair<UniPoly<QElem>, long>> num;
    std::vector<std::pair<UniPoly<QElem>, long>> den;

    long degree() const; // max(deg numerator, deg denominator)
};

// A coefficient-field element with the covering's context attached, for
// kzero_like / kone_like style construction.
QElem field_model(const Covering& c);

// Assembled products (monic): prod num_i^{m_i} and prod den_j^{k_j}.
UniPoly<QElem> covering_numerator(const Covering& c);
UniPoly<QElem> covering_denominator(const Covering& c);

// ---------------------------------------------------------------------------
// Branch data.  branch_points certifies that every factor is squarefree,
// that factors are pairwise coprime (including across numerator and
// denominator), and that the derivative numerator has exactly the forced
// shape; it throws std::domain_error otherwise.  Requires the constant.
// ---------------------------------------------------------------------------
struct BranchData {
    long degree = 0;
    std::vector<long> p0, p1, pinf; // computed partitions, descending
    // Squarefree decomposition of constant*num - den: the fiber above 1.
    std::vector<std::pair<UniPoly<QElem>, int>> one_fiber;
    // Monic product of the extra critical points of phi' (those not forced
    // by the three special fibers).  Degree 0: none (a Belyi map); degree 1:
    // the single simple extra point of an almost Belyi map.
    UniPoly<QElem> extra;
    std::optional<QElem> extra_location; // root of extra when it is linear
    // Total ramification: sum over the three fibers of (multiplicity - 1)
    // plus the number of extra simple points; equals 2*degree - 2 for a
    // genuine covering (checked by certify_pattern, reported here).
    long total_ramification = 0;
};

BranchData branch_points(const Covering& c);

// ---------------------------------------------------------------------------
// Pattern certification.
// ---------------------------------------------------------------------------
enum class CertMode { symbolic, sampled };

struct CertReport {
    RamPattern declared;
    std::vector<long> computed_p0, computed_p1, computed_pinf;
    bool extra_present = false;
    bool extra_simple = false;
    std::optional<QElem> extra_location;
    UniPoly<Rat> degeneracy; // squarefree locus in t (constant 1 when trivial)
    std::vector<std::string> notes; // samples used, mismatch descriptions
    bool pass = false;
};

// Verifies that the covering branches exactly as declared.  symbolic mode
// certifies identically over the coefficient field; sampled mode specializes
// t at `samples` rational points chosen from `seed`, each checked against
// the degeneracy locus first (a degenerate sample is an error, not a skip
// of the check: the point is reported together with the vanishing factor).
CertReport certify_pattern(const Covering& c, const RamPattern& declared,
                           CertMode mode = CertMode::symbolic, int samples = 5,
                           unsigned long seed = 1);

// Certification at caller-chosen values of t.  A point on the degeneracy
// locus (or one that collapses a quadratic field to a rational square) is an
// error reported with the vanishing piece, never a silently skipped check.
CertReport certify_at_points(const Covering& c, const RamPattern& declared,
                             const std::vector<Rat>& points);

// ---------------------------------------------------------------------------
// Complement derivation: the numerator N = constant*num - den of phi - 1
// is forced by an almost Belyi pattern into the shape
//     N = scalar * x^e * P^k,
// with e simple points of the fiber above 1 pinned at the origin.  The
// complement P is extracted by an exact polynomial k-th root and the result
// certified by expanding scalar * x^e * P^k again.  When the constant is
// absent (coefficient-table data, square complement): the critical points
// of phi' outside the forced factors give P times the extra point, whose
// location together with 1/constant is solved linearly from the two top
// coefficients of constant*(num - P^2) = den; the full identity is then
// expanded and checked.  That route needs deg num >= deg den + 2.  Throws
// std::domain_error when the numerator does not have the forced shape.
// ---------------------------------------------------------------------------
struct ComplementResult {
    UniPoly<QElem> complement; // P, monic
    QElem scalar;              // leading scale of N
    long x_exponent = 0;       // e
    long power = 2;            // k
    QElem constant;            // the covering's constant, given or derived
    bool constant_derived = false;
};

ComplementResult derive_complement(const Covering& c);

// ---------------------------------------------------------------------------
// Degeneracy locus of a covering family over Q(t): the squarefree part of
// the product of everything whose vanishing collapses the family at a
// specific t: factor discriminants, pairwise resultants across factors,
// leading and constant-term denominators of all coefficients, the constant's
// numerator and denominator, and (for quadratic fields) the radicand's
// numerator.  Quadratic-valued pieces contribute through their norms.
// Returns the constant polynomial 1 when nothing varies.
// ---------------------------------------------------------------------------
UniPoly<Rat> degeneracy_locus(const Covering& c);

// ---------------------------------------------------------------------------
// Composition (outer o inner) in factored form: outer factors are lifted
// through the inner map by homogenized evaluation, the inner denominator
// power is balanced, and the factor lists are re-canonicalized (squarefree,
// pairwise coprime, monic) by gcd refinement.  Both constants are required.
// ---------------------------------------------------------------------------
Covering compose_coverings(const Covering& outer, const Covering& inner);

// ---------------------------------------------------------------------------
// Hypergeometric pullback check: expands both sides of
//   2F1(1/4, -1/12; 2/3; x)
//     = (1 + ((7 - 33 w)/128) x)^e * 2F1(11/60, -1/60; 2/3; 1/phi(x))
// with w^2 = -15 as exact power series through x^order and compares them
// coefficient by coefficient.  The prefactor exponent e is +1/12: the base
// vanishes at the order-5 zero of phi (note (7-33w)(7+33w) = 2^14), where
// the inner series carries local exponents {11/12, -1/12}, so only
// e = +1/12 makes the right side regular there; the identity is sometimes
// quoted with e = -1/12, which already fails at order 1.  The exponent is
// exposed so corrupted variants can be shown to fail.  The covering must
// be quadratic with radicand -15 and 1/phi must vanish at x = 0.
// ---------------------------------------------------------------------------
bool check_hpg_transformation(const Covering& c, int order,
                              const Rat& exponent = Rat(1, 12));

// ---------------------------------------------------------------------------
// Plain-text format, version 1:
//   covering v1
//   field Q | field Q(t) | field Q(t)[w] w2 = <int-poly-in-t>
//   constant <coef>
//   num <mult> : <poly>
//   den <mult> : <poly>
// <poly> is x-descending with terms "c*x^k" joined by "+"; a coefficient is
// an integer, a ratio of integers, or a parenthesized ratio of integer
// polynomials in t; over a quadratic field a coefficient may add a "*w"
// part.  Whitespace is insignificant; exponents are nonnegative integers;
// no floating point anywhere.  serialize_covering emits a canonical form
// that reparses bit-identically.
// ---------------------------------------------------------------------------
Covering parse_covering(const std::string& text);
std::string serialize_covering(const Covering& c);

} // namespace ramcov
