#pragma once

#include "ramcov/multipoly.hpp"
#include "ramcov/elimination.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramcov {

// Ramification pattern of a covering of P^1 branched over 0, 1, infinity,
// plus (for the almost Belyi case) a fourth point whose fiber is the
// implied 2+1+...+1.
struct RamPattern {
    long degree = 0;
    std::vector<long> p0;    // partition over z = 0, descending
    std::vector<long> p1;    // partition over z = 1, descending
    std::vector<long> pinf;  // partition over z = infinity, descending
    bool almost_belyi = true;
};

// Accepts "3+3+3+1+1+1|2+2+2+2+2+2|5+5+2" with an optional "R4:"/"R3:"
// prefix.  Without a prefix the map is taken to be almost Belyi unless the
// point count comes out exactly n+2 (the Belyi count).
RamPattern parse_pattern(const std::string& text);
std::string pattern_str(const RamPattern& p);

struct HurwitzCount {
    long points = 0;    // |p0| + |p1| + |pinf|
    long expected = 0;  // n+3 (almost Belyi) or n+2 (Belyi)
    bool valid = false;
};

// Throws std::invalid_argument if a partition does not sum to the degree
// or contains a part < 1.
HurwitzCount hurwitz_count(const RamPattern& p);

enum class FiberRef { above_zero, above_one, above_infinity, extra_point };

// A specific point of the pattern: one part of the named fiber's partition.
// For extra_point the order field is ignored (the extra point is simple).
struct PointPin {
    FiberRef fiber = FiberRef::above_infinity;
    long order = 0;
};

// Which points of the pattern are pinned to x = infinity / 0 / 1.  The pin
// at infinity is mandatory and must come from the fiber above z = infinity;
// the other two are optional.
struct NormalizationChoice {
    std::optional<PointPin> at_infinity;
    std::optional<PointPin> at_zero;
    std::optional<PointPin> at_one;
};

// Pin points whose ramification order appears exactly once in its fiber
// (keeps the Hurwitz curve genus low).  Falls back to the extra point for
// x = 0 / x = 1 when no isolated order remains.
NormalizationChoice isolated_orders_normalization(const RamPattern& p);

// Pin the two highest orders above z = infinity to x = infinity and x = 0
// and the extra point to x = 1 (yields lower-degree equations at the cost
// of weighted homogeneity).
NormalizationChoice highest_orders_normalization(const RamPattern& p);

// One monic factor of the fiber product: poly^order divides phi (fiber
// above 0), phi - 1 (fiber above 1) or the common denominator (fiber above
// infinity).  Pinned factors are explicit (x or x - 1); the rest carry
// fresh coefficient unknowns, or a single location unknown when degree 1.
struct FiberFactor {
    FiberRef fiber = FiberRef::above_zero;
    long order = 1;
    long degree = 0;
    bool pinned = false;
    MultiPoly<Rat> poly;
};

struct AnsatzSystem {
    RamPattern pattern;
    NormalizationChoice norm;
    VarTablePtr vars;  // "x" first, then unknowns with weight = coefficient index
    int x = 0;
    std::vector<FiberFactor> zero_factors;
    std::vector<FiberFactor> one_factors;
    std::vector<FiberFactor> inf_factors;
    // Degree-1 factor shared by both logarithmic-derivative numerators:
    // x, x - 1, x - y0 with y0 unknown, or 1 for a genuine Belyi map.
    MultiPoly<Rat> extra_factor;
    long infinity_order = 0;  // ramification order of the point at x = infinity
    // Unknown names in variable-table order, plus "C0" whenever any
    // polynomial unknowns exist.
    std::vector<std::string> unknowns;

    // The equations stay weighted homogeneous exactly when nothing is
    // pinned to the fixed abscissa x = 1.
    bool expects_homogeneous() const { return !norm.at_one.has_value(); }
};

AnsatzSystem build_ansatz(const RamPattern& p, const NormalizationChoice& norm);

// Cleared-denominator identity: lhs == rhs in Q[unknowns][x].  lhs is the
// known zero structure (constant * extra point factor * other-fiber
// factors with powers diminished by one), rhs the logarithmic-derivative
// numerator sum e_i * f_i' * prod_{j != i} f_j.
struct LogderIdentity {
    MultiPoly<Rat> lhs;
    MultiPoly<Rat> rhs;
    long constant = 0;  // equals the ramification order at x = infinity
};

// Two identities: one for phi'/phi, one for (phi-1)'/(phi-1).
std::vector<LogderIdentity> logder_identities(const AnsatzSystem& a);

// Returns (S, D) with C0 * S == D for any solution, where S is the
// difference of the two numerator products and D the denominator product;
// evaluating at any non-root rational x solves for C0.
std::pair<MultiPoly<Rat>, MultiPoly<Rat>> fiber_sum_identity(const AnsatzSystem& a);

struct ExpandedEquation {
    MultiPoly<Rat> poly;  // coefficient of x^x_power in lhs - rhs
    int identity = 0;
    long x_power = 0;
};

// One equation per power of x with a nonzero coefficient, identity by
// identity, descending in the power.
std::vector<ExpandedEquation> expand_to_equations(const std::vector<LogderIdentity>& ids);
std::vector<MultiPoly<Rat>> equation_polys(const std::vector<ExpandedEquation>& eqs);

struct SolvedVar {
    std::string name;
    MultiPoly<Rat> value;
};

// For each listed variable in order: find an equation in which it appears
// in exactly one term, alone and to the first power with a rational
// coefficient, solve for it and substitute everywhere.  Identically zero
// equations are dropped.  Throws std::runtime_error when no equation
// isolates a variable.
std::vector<MultiPoly<Rat>> eliminate_isolated(std::vector<MultiPoly<Rat>> eqs,
                                               const VarTablePtr& vars,
                                               const std::vector<std::string>& order,
                                               std::vector<SolvedVar>* solved = nullptr);

// Variable elimination schedule for reducing an expanded system to a plane
// curve.  Isolated substitutions run first, then bordered-determinant
// elimination of the jointly linear unknowns, then pairwise resultants in
// the last unknown.
struct EliminationStrategy {
    std::vector<std::string> isolated;       // e.g. a1, p1..p6
    std::vector<std::string> linear;         // e.g. b1..b3
    std::string resultant_var;               // e.g. a3
    std::vector<std::string> degenerate;     // factors to strip, e.g. a3, c2, c1^2-4c2
};

EliminationStrategy degree12_strategy();

struct Degree12Derivation {
    AnsatzSystem ansatz;
    std::vector<ExpandedEquation> equations;       // raw expanded system
    std::vector<SolvedVar> substitutions;          // a1 and the p_i
    std::vector<MultiPoly<Rat>> reduced;           // system linear in the b_i
    LinearEliminationResult elimination;           // certificates included
    std::vector<MultiPoly<Rat>> eliminants;        // stripped, in c1, c2, a2, a3
    std::vector<MultiPoly<Rat>> resultants;        // independent pairs, stripped
    MultiPoly<Rat> common;                         // common factor of the resultants;
                                                   // curve times degenerate components
    MultiPoly<Rat> curve;                          // multiplicity-one part of common:
                                                   // the locus of genuine coverings,
                                                   // weighted homogeneous in c1, c2, a2
};

// Runs the full degree-12 derivation from the ansatz down to the plane
// model of the Hurwitz curve.  Verifies internally that the returned curve
// divides every resultant exactly.
Degree12Derivation derive_degree12_curve(const EliminationStrategy& strategy = degree12_strategy());

}  // namespace ramcov
