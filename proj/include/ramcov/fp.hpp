#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramcov/int_rat.hpp"

namespace ramcov {

struct modulus_mismatch : std::logic_error {
    using std::logic_error::logic_error;
};

// Element of Z/p for a word-sized prime p. Every element carries its modulus
// and mixed-modulus arithmetic throws rather than producing garbage.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t value, std::uint64_t p) : v_(p ? value % p : 0), p_(p) {
        if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    }
    static Fp from_int(const Int& n, std::uint64_t p);
    static Fp from_rat(const Rat& q, std::uint64_t p); // fails if p | den

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp operator+(const Fp& o) const {
        match(o);
        std::uint64_t s = v_ + o.v_;
        if (s >= p_ || s < v_) s -= p_;
        return raw(s, p_);
    }
    Fp operator-(const Fp& o) const {
        match(o);
        return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_), p_);
    }
    Fp operator*(const Fp& o) const {
        match(o);
        return raw((std::uint64_t)((unsigned __int128)v_ * o.v_ % p_), p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool operator==(const Fp& o) const {
        if (p_ != o.p_) return false;
        return v_ == o.v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inverse() const;
    Fp pow(unsigned long e) const;

    std::string str() const { return std::to_string(v_); }

private:
    static Fp raw(std::uint64_t v, std::uint64_t p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }
    void match(const Fp& o) const {
        if (p_ != o.p_)
            throw modulus_mismatch("Fp: mixing moduli " + std::to_string(p_) + " and " +
                                   std::to_string(o.p_));
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);
// Next prime strictly above n (deterministic Miller-Rabin for 64-bit range).
std::uint64_t next_prime_u64(std::uint64_t n);

// A fixed supply of ~62-bit primes for modular interludes.
std::vector<std::uint64_t> probe_primes(std::size_t count, std::uint64_t start = (1ull << 62));

} // namespace ramcov
