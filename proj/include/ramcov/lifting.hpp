#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramcov/fp.hpp"
#include "ramcov/int_rat.hpp"
#include "ramcov/multipoly.hpp"

namespace ramcov {

// Residues of one integer modulo several primes.
struct ResidueSet {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> residues; // (prime, residue)
};

struct CrtResult {
    Int residue; // 0 <= residue < modulus
    Int modulus;
};

// Chinese remaindering over pairwise distinct primes. A prime listed twice
// with agreeing residues is merged; disagreeing duplicates are an error.
CrtResult crt_combine(const ResidueSet& rs);

// Half-extended Euclid reconstruction of n/d from residue mod M with
// |n| <= bound and 0 < d <= bound; unique when 2*bound^2 < M. Returns
// nullopt when no such fraction exists.
std::optional<Rat> rational_reconstruct(const Int& residue, const Int& M, const Int& bound);
// Default bound floor(sqrt(M/2)), balancing numerator and denominator.
std::optional<Rat> rational_reconstruct(const Int& residue, const Int& M);

using IntVec = std::vector<Int>;

struct IntLatticeBasis {
    std::vector<IntVec> rows;
};

struct LllResult {
    IntLatticeBasis reduced;
    std::vector<IntVec> transform; // reduced.rows = transform * input rows
    bool transform_unimodular;     // det(transform) == +-1, verified
};

// Exact-arithmetic LLL reduction with Lovasz parameter 3/4. Deterministic;
// throws std::invalid_argument when the rows are linearly dependent.
LllResult lll_reduce(const IntLatticeBasis& basis);

Rat dot_product(const IntVec& a, const IntVec& b);
Int det_int(std::vector<IntVec> m); // fraction-free determinant

// Lattice for lifting a coefficient vector from its images mod M: the row
// of residues with one extra zero component, plus one row per coefficient
// carrying M there and 1 at the extra component (keeps rows independent).
IntLatticeBasis lift_lattice(const std::vector<Int>& residues, const Int& M);

enum class LiftPath { direct, lll };

struct PolyLift {
    bool ok = false;
    MultiPoly<Rat> value;
    LiftPath path = LiftPath::direct;
    std::size_t prime_count = 0;
    std::string diagnostic;
};

// Lift per-prime polynomial images to Q: coefficient-wise CRT plus rational
// reconstruction, falling back to the LLL lattice above when reconstruction
// fails. The result is verified by re-reduction modulo every source prime.
// Images may have different supports; missing monomials count as zero.
PolyLift lift_polynomial(const std::vector<MultiPoly<Fp>>& images);

// Reduce a rational polynomial mod p (fails if any denominator vanishes).
MultiPoly<Fp> reduce_mod_p(const MultiPoly<Rat>& poly, std::uint64_t p);

} // namespace ramcov
