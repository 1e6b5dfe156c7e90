#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace netcrypt {

// Deterministic seedable random source. Every operation that needs
// randomness takes one of these explicitly; there is no ambient RNG,
// so runs replay bit-exactly from a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(gmp_randinit_mt) {
        state_.seed(mpz_class(static_cast<unsigned long>(seed)));
    }

    // Uniform integer in [0, 2^count).
    mpz_class bits(mp_bitcnt_t count) { return state_.get_z_bits(count); }

    // Uniform integer in [0, bound).
    mpz_class below(const mpz_class& bound) { return state_.get_z_range(bound); }

    // Uniform unit of Z_n: nonzero and coprime to n.
    mpz_class coprime_below(const mpz_class& n) {
        mpz_class r;
        do {
            r = below(n);
        } while (r == 0 || gcd(r, n) != 1);
        return r;
    }

    std::uint64_t next_u64() { return mpz_get_ui(bits(64).get_mpz_t()); }

private:
    gmp_randclass state_;
};

}  // namespace netcrypt
