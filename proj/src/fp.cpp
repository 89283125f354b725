#include "ramcov/fp.hpp"

namespace ramcov {

Fp Fp::from_int(const Int& n, std::uint64_t p) {
    Int r = n % Int(p);
    if (sgn(r) < 0) r += Int(p);
    return Fp(r.get_ui(), p);
}

Fp Fp::from_rat(const Rat& q, std::uint64_t p) {
    Fp den = from_int(q.get_den(), p);
    if (den.is_zero())
        throw std::domain_error("Fp::from_rat: denominator divisible by modulus");
    return from_int(q.get_num(), p) / den;
}

Fp Fp::inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid on (p, v)
    std::int64_t t = 0, newt = 1;
    std::uint64_t r = p_, newr = v_;
    while (newr != 0) {
        std::uint64_t q = r / newr;
        std::int64_t tt = t - (std::int64_t)q * newt;
        t = newt;
        newt = tt;
        std::uint64_t rr = r - q * newr;
        r = newr;
        newr = rr;
    }
    if (r != 1) throw std::domain_error("Fp: non-invertible element (composite modulus?)");
    std::int64_t res = t % (std::int64_t)p_;
    if (res < 0) res += (std::int64_t)p_;
    return Fp((std::uint64_t)res, p_);
}

Fp Fp::pow(unsigned long e) const {
    Fp acc(1, p_);
    Fp base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (std::uint64_t)((unsigned __int128)a * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) acc = mulmod_u64(acc, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return acc;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for the full 64-bit range
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t next_prime_u64(std::uint64_t n) {
    std::uint64_t c = n + 1;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

std::vector<std::uint64_t> probe_primes(std::size_t count, std::uint64_t start) {
    std::vector<std::uint64_t> out;
    std::uint64_t p = start;
    while (out.size() < count) {
        p = next_prime_u64(p);
        out.push_back(p);
    }
    return out;
}

} // namespace ramcov
