#pragma once

#include <cstdint>

#include "derange/error.hpp"

namespace derange {

// Residues mod p are stored as plain uint32_t in [0, p). All arithmetic goes
// through an Fp context so the modulus travels with the data that owns it.
using fel = uint32_t;

bool is_prime(uint64_t n);

class Fp {
  public:
    Fp() : p_(2) {}
    explicit Fp(uint32_t p) : p_(p) {
        require(p >= 2 && is_prime(p), "modulus must be a prime >= 2");
        require(p < (1u << 31), "modulus must fit in 31 bits");
    }

    uint32_t modulus() const { return p_; }

    fel reduce(int64_t x) const {
        int64_t r = x % static_cast<int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<fel>(r);
    }
    fel add(fel a, fel b) const {
        uint64_t s = static_cast<uint64_t>(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<fel>(s);
    }
    fel sub(fel a, fel b) const { return a >= b ? a - b : static_cast<fel>(a + p_ - b); }
    fel neg(fel a) const { return a == 0 ? 0 : p_ - a; }
    fel mul(fel a, fel b) const {
        return static_cast<fel>(static_cast<uint64_t>(a) * b % p_);
    }
    fel pow(fel a, uint64_t e) const {
        fel r = 1 % p_;
        fel base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // p is prime, so a^(p-2) inverts any nonzero a.
    fel inv(fel a) const {
        ensure(a != 0, "division by zero in F_p");
        return pow(a, p_ - 2);
    }

    bool operator==(const Fp& o) const { return p_ == o.p_; }

  private:
    uint32_t p_;
};

} // namespace derange
