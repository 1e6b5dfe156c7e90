#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "netcrypt/rng.hpp"

namespace netcrypt {

// Stable identity tag derived from a key's modulus, used to detect
// ciphertext/key mismatches before any arithmetic happens.
std::uint64_t key_id_of(const mpz_class& modulus);

// Miller-Rabin with `rounds` random bases drawn from rng.
bool is_probable_prime(const mpz_class& n, int rounds, Rng& rng);

// Random prime with exactly `bits` bits and the top two bits set.
mpz_class generate_prime(unsigned bits, Rng& rng);

// ---------------------------------------------------------------------------
// Paillier
// ---------------------------------------------------------------------------

struct PaillierPublicKey {
    mpz_class n;    // modulus n_P, product of two distinct primes
    mpz_class n2;   // n_P^2
    mpz_class g;    // generator, fixed to n_P + 1
    unsigned bits = 0;
    std::uint64_t key_id = 0;
};

struct PaillierPrivateKey {
    mpz_class n;
    mpz_class n2;
    mpz_class lambda;  // lcm(p-1, q-1)
    mpz_class mu;      // (L(g^lambda mod n^2))^-1 mod n
    unsigned bits = 0;
    std::uint64_t key_id = 0;
};

struct PaillierCiphertext {
    mpz_class value;  // in Z*_{n_P^2}
    std::uint64_t key_id = 0;
};

struct PaillierKeypair {
    PaillierPublicKey pub;
    PaillierPrivateKey priv;
};

// Key generation; requires bits >= 16.
PaillierKeypair paillier_keygen(unsigned bits, Rng& rng);

// Test hook: build a keypair from forced primes.
PaillierKeypair paillier_from_primes(const mpz_class& p, const mpz_class& q);

// c = g^m r^{n} mod n^2 with explicit randomness r (coprime to n).
PaillierCiphertext paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m,
                                    const mpz_class& r);
// Same, drawing r uniformly from the units of Z_n.
PaillierCiphertext paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m, Rng& rng);

mpz_class paillier_decrypt(const PaillierPrivateKey& sk, const PaillierCiphertext& c);

// Ciphertext of the modular sum of the two plaintexts.
PaillierCiphertext paillier_add(const PaillierPublicKey& pk, const PaillierCiphertext& c1,
                                const PaillierCiphertext& c2);

// Ciphertext of k*m for k >= 0; k = 0 yields the trivial encryption 1.
PaillierCiphertext paillier_scale(const PaillierPublicKey& pk, const PaillierCiphertext& c,
                                  const mpz_class& k);

// Multiply fresh randomness into an existing ciphertext.
PaillierCiphertext paillier_rerandomize(const PaillierPublicKey& pk, const PaillierCiphertext& c,
                                        Rng& rng);

// ---------------------------------------------------------------------------
// Textbook RSA (unpadded, exactly the map Z_{n_R} -> Z_{n_R}).
//
// Deliberately not semantically secure: identical plaintexts produce
// identical ciphertexts, and m = 0, 1 are fixed points. The role of this
// layer is access control via key possession, not indistinguishability.
// ---------------------------------------------------------------------------

struct RsaPublicKey {
    mpz_class n;  // modulus n_R
    mpz_class e;
    unsigned bits = 0;
    std::uint64_t key_id = 0;
};

struct RsaKeypair {
    RsaPublicKey pub;
    mpz_class d;
};

RsaKeypair rsa_keygen(unsigned bits, Rng& rng);

// Test hook: build a keypair from forced primes and public exponent.
RsaKeypair rsa_from_primes(const mpz_class& p, const mpz_class& q, const mpz_class& e);

mpz_class rsa_encrypt(const RsaPublicKey& pk, const mpz_class& m);
mpz_class rsa_decrypt(const RsaKeypair& kp, const mpz_class& c);

// ---------------------------------------------------------------------------
// Key serialization: structured text with hex-encoded big integers and a
// version field.
// ---------------------------------------------------------------------------

std::string serialize_key(const PaillierPublicKey& k);
std::string serialize_key(const PaillierPrivateKey& k);
std::string serialize_key(const RsaPublicKey& k);
std::string serialize_key(const RsaKeypair& k);

PaillierPublicKey parse_paillier_public(const std::string& text);
PaillierPrivateKey parse_paillier_private(const std::string& text);
RsaPublicKey parse_rsa_public(const std::string& text);
RsaKeypair parse_rsa_keypair(const std::string& text);

}  // namespace netcrypt
