#include "netcrypt/crypto.hpp"

#include <nlohmann/json.hpp>

#include "netcrypt/errors.hpp"

namespace netcrypt {

namespace {

using nlohmann::json;

constexpr int kPrimalityRounds = 40;

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

mpz_class invert(const mpz_class& a, const mpz_class& mod) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw Error("modular inverse does not exist");
    return r;
}

std::string to_hex(const mpz_class& v) { return v.get_str(16); }

mpz_class from_hex(const std::string& s) { return mpz_class(s, 16); }

json parse_with_kind(const std::string& text, const char* kind) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("malformed key file (not valid JSON)");
    if (j.value("version", 0) != 1) throw ConfigError("unsupported key file version");
    if (j.value("kind", "") != kind)
        throw ConfigError("key file kind mismatch: expected " + std::string(kind));
    return j;
}

}  // namespace

std::uint64_t key_id_of(const mpz_class& modulus) {
    // FNV-1a over the hex digits; only needs to be stable and collision-poor.
    std::uint64_t h = 1469598103934665603ull;
    for (char c : modulus.get_str(16)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

bool is_probable_prime(const mpz_class& n, int rounds, Rng& rng) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // n - 1 = d * 2^s with d odd
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    const mpz_class n1 = n - 1;
    for (int i = 0; i < rounds; ++i) {
        mpz_class a = rng.below(n - 3) + 2;  // a in [2, n-2]
        mpz_class x = powm(a, d, n);
        if (x == 1 || x == n1) continue;
        bool composite = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

mpz_class generate_prime(unsigned bits, Rng& rng) {
    if (bits < 8) throw ProvisionError("prime bit length too small");
    for (;;) {
        mpz_class c = rng.bits(bits);
        mpz_setbit(c.get_mpz_t(), bits - 1);
        mpz_setbit(c.get_mpz_t(), bits - 2);
        mpz_setbit(c.get_mpz_t(), 0);
        if (is_probable_prime(c, kPrimalityRounds, rng)) return c;
    }
}

// ---------------------------------------------------------------------------
// Paillier
// ---------------------------------------------------------------------------

PaillierKeypair paillier_from_primes(const mpz_class& p, const mpz_class& q) {
    if (p == q) throw ProvisionError("paillier primes must be distinct");
    mpz_class n = p * q;
    mpz_class lambda = lcm(p - 1, q - 1);
    if (gcd(lambda, n) != 1)
        throw ProvisionError("degenerate paillier primes: lcm(p-1,q-1) shares a factor with n");

    PaillierKeypair kp;
    kp.pub.n = n;
    kp.pub.n2 = n * n;
    kp.pub.g = n + 1;
    kp.pub.bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    kp.pub.key_id = key_id_of(n);

    kp.priv.n = n;
    kp.priv.n2 = kp.pub.n2;
    kp.priv.lambda = lambda;
    // With g = n + 1: L(g^lambda mod n^2) = lambda mod n.
    kp.priv.mu = invert(lambda % n, n);
    kp.priv.bits = kp.pub.bits;
    kp.priv.key_id = kp.pub.key_id;
    return kp;
}

PaillierKeypair paillier_keygen(unsigned bits, Rng& rng) {
    if (bits < 16) throw ProvisionError("paillier modulus must be at least 16 bits");
    unsigned pb = bits / 2 + bits % 2;
    unsigned qb = bits / 2;
    for (;;) {
        mpz_class p = generate_prime(pb, rng);
        mpz_class q = generate_prime(qb, rng);
        if (p == q) continue;
        mpz_class n = p * q;
        if (mpz_sizeinbase(n.get_mpz_t(), 2) != bits) continue;
        if (gcd(lcm(p - 1, q - 1), n) != 1) continue;
        return paillier_from_primes(p, q);
    }
}

PaillierCiphertext paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m,
                                    const mpz_class& r) {
    if (m < 0 || m >= pk.n) throw OverflowError("paillier plaintext outside Z_{n_P}");
    if (r <= 0 || r >= pk.n || gcd(r, pk.n) != 1)
        throw Error("paillier randomness must be a unit of Z_{n_P}");
    // g = n + 1 makes g^m mod n^2 = 1 + m n.
    mpz_class c = (1 + m * pk.n) % pk.n2 * powm(r, pk.n, pk.n2) % pk.n2;
    return {c, pk.key_id};
}

PaillierCiphertext paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m, Rng& rng) {
    return paillier_encrypt(pk, m, rng.coprime_below(pk.n));
}

mpz_class paillier_decrypt(const PaillierPrivateKey& sk, const PaillierCiphertext& c) {
    if (c.key_id != sk.key_id) throw KeyMismatchError("paillier ciphertext under a different key");
    mpz_class u = powm(c.value, sk.lambda, sk.n2);
    mpz_class l = (u - 1) / sk.n;
    return l * sk.mu % sk.n;
}

PaillierCiphertext paillier_add(const PaillierPublicKey& pk, const PaillierCiphertext& c1,
                                const PaillierCiphertext& c2) {
    if (c1.key_id != pk.key_id || c2.key_id != pk.key_id)
        throw KeyMismatchError("paillier_add: ciphertexts under a different key");
    return {c1.value * c2.value % pk.n2, pk.key_id};
}

PaillierCiphertext paillier_scale(const PaillierPublicKey& pk, const PaillierCiphertext& c,
                                  const mpz_class& k) {
    if (c.key_id != pk.key_id) throw KeyMismatchError("paillier_scale: ciphertext under a different key");
    if (k < 0) throw Error("paillier_scale: exponent must be non-negative");
    return {powm(c.value, k, pk.n2), pk.key_id};
}

PaillierCiphertext paillier_rerandomize(const PaillierPublicKey& pk, const PaillierCiphertext& c,
                                        Rng& rng) {
    if (c.key_id != pk.key_id) throw KeyMismatchError("rerandomize: ciphertext under a different key");
    mpz_class r = rng.coprime_below(pk.n);
    return {c.value * powm(r, pk.n, pk.n2) % pk.n2, pk.key_id};
}

// ---------------------------------------------------------------------------
// RSA
// ---------------------------------------------------------------------------

RsaKeypair rsa_from_primes(const mpz_class& p, const mpz_class& q, const mpz_class& e) {
    if (p == q) throw ProvisionError("rsa primes must be distinct");
    mpz_class n = p * q;
    mpz_class lambda = lcm(p - 1, q - 1);
    if (gcd(e, lambda) != 1) throw ProvisionError("rsa exponent not invertible mod lcm(p-1,q-1)");
    RsaKeypair kp;
    kp.pub.n = n;
    kp.pub.e = e;
    kp.pub.bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    kp.pub.key_id = key_id_of(n);
    kp.d = invert(e, lambda);
    return kp;
}

RsaKeypair rsa_keygen(unsigned bits, Rng& rng) {
    if (bits < 16) throw ProvisionError("rsa modulus must be at least 16 bits");
    unsigned pb = bits / 2 + bits % 2;
    unsigned qb = bits / 2;
    for (;;) {
        mpz_class p = generate_prime(pb, rng);
        mpz_class q = generate_prime(qb, rng);
        if (p == q) continue;
        mpz_class n = p * q;
        if (mpz_sizeinbase(n.get_mpz_t(), 2) != bits) continue;
        mpz_class lambda = lcm(p - 1, q - 1);
        for (unsigned long e : {65537ul, 257ul, 17ul, 5ul, 3ul}) {
            if (e < lambda && gcd(mpz_class(e), lambda) == 1)
                return rsa_from_primes(p, q, mpz_class(e));
        }
    }
}

mpz_class rsa_encrypt(const RsaPublicKey& pk, const mpz_class& m) {
    if (m < 0 || m >= pk.n) throw OverflowError("rsa plaintext outside Z_{n_R}");
    return powm(m, pk.e, pk.n);
}

mpz_class rsa_decrypt(const RsaKeypair& kp, const mpz_class& c) {
    if (c < 0 || c >= kp.pub.n) throw OverflowError("rsa ciphertext outside Z_{n_R}");
    return powm(c, kp.d, kp.pub.n);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string serialize_key(const PaillierPublicKey& k) {
    json j{{"version", 1},
           {"kind", "paillier-public"},
           {"bits", k.bits},
           {"modulus", to_hex(k.n)},
           {"generator", to_hex(k.g)}};
    return j.dump(2) + "\n";
}

std::string serialize_key(const PaillierPrivateKey& k) {
    json j{{"version", 1},
           {"kind", "paillier-private"},
           {"bits", k.bits},
           {"modulus", to_hex(k.n)},
           {"lambda", to_hex(k.lambda)},
           {"mu", to_hex(k.mu)}};
    return j.dump(2) + "\n";
}

std::string serialize_key(const RsaPublicKey& k) {
    json j{{"version", 1},
           {"kind", "rsa-public"},
           {"bits", k.bits},
           {"modulus", to_hex(k.n)},
           {"public_exponent", to_hex(k.e)}};
    return j.dump(2) + "\n";
}

std::string serialize_key(const RsaKeypair& k) {
    json j{{"version", 1},
           {"kind", "rsa-keypair"},
           {"bits", k.pub.bits},
           {"modulus", to_hex(k.pub.n)},
           {"public_exponent", to_hex(k.pub.e)},
           {"private_exponent", to_hex(k.d)}};
    return j.dump(2) + "\n";
}

PaillierPublicKey parse_paillier_public(const std::string& text) {
    json j = parse_with_kind(text, "paillier-public");
    PaillierPublicKey k;
    k.n = from_hex(j.at("modulus"));
    k.n2 = k.n * k.n;
    k.g = from_hex(j.at("generator"));
    k.bits = j.at("bits");
    k.key_id = key_id_of(k.n);
    return k;
}

PaillierPrivateKey parse_paillier_private(const std::string& text) {
    json j = parse_with_kind(text, "paillier-private");
    PaillierPrivateKey k;
    k.n = from_hex(j.at("modulus"));
    k.n2 = k.n * k.n;
    k.lambda = from_hex(j.at("lambda"));
    k.mu = from_hex(j.at("mu"));
    k.bits = j.at("bits");
    k.key_id = key_id_of(k.n);
    return k;
}

RsaPublicKey parse_rsa_public(const std::string& text) {
    json j = parse_with_kind(text, "rsa-public");
    RsaPublicKey k;
    k.n = from_hex(j.at("modulus"));
    k.e = from_hex(j.at("public_exponent"));
    k.bits = j.at("bits");
    k.key_id = key_id_of(k.n);
    return k;
}

RsaKeypair parse_rsa_keypair(const std::string& text) {
    json j = parse_with_kind(text, "rsa-keypair");
    RsaKeypair k;
    k.pub.n = from_hex(j.at("modulus"));
    k.pub.e = from_hex(j.at("public_exponent"));
    k.pub.bits = j.at("bits");
    k.pub.key_id = key_id_of(k.pub.n);
    k.d = from_hex(j.at("private_exponent"));
    return k;
}

}  // namespace netcrypt
