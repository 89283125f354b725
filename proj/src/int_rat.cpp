#include "ramcov/int_rat.hpp"

namespace ramcov {

Rat make_rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(long num, long den) {
    return make_rat(Int(num), Int(den));
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(std::string_view s, bool strict_reduced) {
    auto fail = [&](const char* why) {
        throw parse_error(std::string("parse_rat: ") + why + " in \"" + std::string(s) + "\"");
    };
    if (s.empty()) fail("empty input");
    auto slash = s.find('/');
    auto check_int = [&](std::string_view t) {
        if (t.empty()) fail("empty integer");
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) fail("sign without digits");
        if (t[i] == '0' && t.size() > i + 1) fail("leading zero");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') fail("invalid digit");
    };
    if (slash == std::string_view::npos) {
        check_int(s);
        return Rat(Int(std::string(s)));
    }
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    check_int(ns);
    check_int(ds);
    Int n{std::string(ns)}, d{std::string(ds)};
    if (sgn(d) == 0) fail("zero denominator");
    if (strict_reduced) {
        if (sgn(d) < 0) fail("negative denominator");
        if (d == 1) fail("denominator 1 must be written as a plain integer");
        Int g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (g != 1) fail("fraction not in lowest terms");
    }
    return make_rat(n, d);
}

Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (sgn(base) == 0) throw std::domain_error("rat_pow: zero to negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), (unsigned long)e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), (unsigned long)e);
    return r; // powers of a canonical rational stay canonical
}

std::optional<Int> int_sqrt_exact(const Int& n) {
    if (sgn(n) < 0) return std::nullopt;
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (sgn(rem) != 0) return std::nullopt;
    return r;
}

std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    auto n = int_sqrt_exact(q.get_num());
    if (!n) return std::nullopt;
    auto d = int_sqrt_exact(q.get_den());
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

} // namespace ramcov
