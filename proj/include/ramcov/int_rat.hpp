#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ramcov {

using Int = mpz_class;
using Rat = mpq_class;

// Construct a canonical rational (reduced, positive denominator).
Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

inline const Int& rat_num(const Rat& q) { return q.get_num(); }
inline const Int& rat_den(const Rat& q) { return q.get_den(); }
inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// "n" when the denominator is 1, otherwise "n/d" with d > 0.
std::string rat_str(const Rat& q);

// Accepts "n" or "n/d" with optional sign on n. When strict_reduced is set,
// rejects inputs that are not in lowest terms or have d <= 0 (the covering
// file format wants canonical text).
Rat parse_rat(std::string_view s, bool strict_reduced = false);

Int int_pow(const Int& base, unsigned long e);
Rat rat_pow(const Rat& base, long e);

// Exact integer square root: returns the root only if n is a perfect square.
std::optional<Int> int_sqrt_exact(const Int& n);
// Exact rational square root of a canonical rational.
std::optional<Rat> rat_sqrt_exact(const Rat& q);

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ramcov
