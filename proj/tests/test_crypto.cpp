#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netcrypt/crypto.hpp"
#include "netcrypt/errors.hpp"

using namespace netcrypt;

TEST_CASE("paillier keypair from forced primes p=5, q=7") {
    PaillierKeypair kp = paillier_from_primes(5, 7);
    CHECK(kp.pub.n == 35);
    CHECK(kp.pub.n2 == 1225);
    CHECK(kp.pub.g == 36);
    CHECK(kp.priv.lambda == 12);
    CHECK(kp.priv.mu == 3);
    CHECK(kp.pub.key_id == kp.priv.key_id);

    SUBCASE("encryption with pinned randomness") {
        CHECK(paillier_encrypt(kp.pub, 3, mpz_class(2)).value == 683);
        CHECK(paillier_encrypt(kp.pub, 34, mpz_class(11)).value == 891);
    }

    SUBCASE("decryption inverts encryption for every residue") {
        Rng rng(7);
        for (int m = 0; m < 35; ++m) {
            auto c = paillier_encrypt(kp.pub, m, rng);
            CHECK(paillier_decrypt(kp.priv, c) == m);
        }
    }

    SUBCASE("additive homomorphism wraps mod n") {
        auto c1 = paillier_encrypt(kp.pub, 12, mpz_class(3));
        auto c2 = paillier_encrypt(kp.pub, 30, mpz_class(4));
        CHECK(c1.value == 747);
        CHECK(c2.value == 1199);
        CHECK(paillier_decrypt(kp.priv, paillier_add(kp.pub, c1, c2)) == 7);
    }

    SUBCASE("scalar homomorphism") {
        auto c = paillier_encrypt(kp.pub, 12, mpz_class(3));
        CHECK(paillier_decrypt(kp.priv, paillier_scale(kp.pub, c, 3)) == 1);  // 36 mod 35
        auto trivial = paillier_scale(kp.pub, c, 0);
        CHECK(trivial.value == 1);
        CHECK(paillier_decrypt(kp.priv, trivial) == 0);
    }

    SUBCASE("rerandomization changes the ciphertext, not the plaintext") {
        Rng rng(11);
        auto c = paillier_encrypt(kp.pub, 19, mpz_class(2));
        auto c2 = paillier_rerandomize(kp.pub, c, rng);
        CHECK(c.value != c2.value);
        CHECK(paillier_decrypt(kp.priv, c2) == 19);
    }

    SUBCASE("ciphertext under a different key is rejected") {
        PaillierKeypair other = paillier_from_primes(11, 13);
        auto c = paillier_encrypt(kp.pub, 3, mpz_class(2));
        CHECK_THROWS_AS(paillier_decrypt(other.priv, c), KeyMismatchError);
        auto c2 = paillier_encrypt(other.pub, 3, mpz_class(2));
        CHECK_THROWS_AS(paillier_add(kp.pub, c, c2), KeyMismatchError);
    }
}

TEST_CASE("generated paillier keys round-trip random plaintexts") {
    Rng rng(42);
    for (unsigned bits : {32u, 64u}) {
        PaillierKeypair kp = paillier_keygen(bits, rng);
        CHECK(mpz_sizeinbase(kp.pub.n.get_mpz_t(), 2) == bits);
        for (int t = 0; t < 50; ++t) {
            mpz_class m = rng.below(kp.pub.n);
            CHECK(paillier_decrypt(kp.priv, paillier_encrypt(kp.pub, m, rng)) == m);
        }
        // homomorphisms at full size
        for (int t = 0; t < 20; ++t) {
            mpz_class a = rng.below(kp.pub.n), b = rng.below(kp.pub.n);
            auto ca = paillier_encrypt(kp.pub, a, rng);
            auto cb = paillier_encrypt(kp.pub, b, rng);
            CHECK(paillier_decrypt(kp.priv, paillier_add(kp.pub, ca, cb)) ==
                  (a + b) % kp.pub.n);
            mpz_class k = rng.below(1000);
            CHECK(paillier_decrypt(kp.priv, paillier_scale(kp.pub, ca, k)) ==
                  (a * k) % kp.pub.n);
        }
    }
}

TEST_CASE("rsa from the classic forced example") {
    RsaKeypair kp = rsa_from_primes(61, 53, 17);
    CHECK(kp.pub.n == 3233);
    CHECK(kp.d == 413);
    CHECK(rsa_encrypt(kp.pub, 65) == 2790);
    CHECK(rsa_decrypt(kp, 2790) == 65);

    SUBCASE("fixed points of the textbook map") {
        CHECK(rsa_encrypt(kp.pub, 0) == 0);
        CHECK(rsa_encrypt(kp.pub, 1) == 1);
    }

    SUBCASE("determinism: same plaintext, same ciphertext") {
        CHECK(rsa_encrypt(kp.pub, 65) == rsa_encrypt(kp.pub, 65));
    }
}

TEST_CASE("generated rsa keys round-trip and reject foreign moduli") {
    Rng rng(99);
    RsaKeypair kp = rsa_keygen(256, rng);
    CHECK(mpz_sizeinbase(kp.pub.n.get_mpz_t(), 2) == 256);
    for (int t = 0; t < 50; ++t) {
        mpz_class m = rng.below(kp.pub.n);
        CHECK(rsa_decrypt(kp, rsa_encrypt(kp.pub, m)) == m);
    }
    CHECK_THROWS_AS(rsa_encrypt(kp.pub, kp.pub.n + 1), OverflowError);
}

TEST_CASE("prime generation: exact size, probable primality") {
    Rng rng(5);
    for (unsigned bits : {16u, 32u, 128u}) {
        mpz_class p = generate_prime(bits, rng);
        CHECK(mpz_sizeinbase(p.get_mpz_t(), 2) == bits);
        CHECK(is_probable_prime(p, 40, rng));
    }
    CHECK_FALSE(is_probable_prime(mpz_class("3215031751"), 40, rng));  // strong pseudoprime base 2..7
    CHECK(is_probable_prime(mpz_class("2147483647"), 40, rng));        // 2^31 - 1
}

TEST_CASE("key serialization round-trips") {
    Rng rng(3);
    PaillierKeypair pk = paillier_keygen(64, rng);
    RsaKeypair rk = rsa_keygen(128, rng);

    PaillierPublicKey pub = parse_paillier_public(serialize_key(pk.pub));
    CHECK(pub.n == pk.pub.n);
    CHECK(pub.g == pk.pub.g);
    CHECK(pub.key_id == pk.pub.key_id);

    PaillierPrivateKey priv = parse_paillier_private(serialize_key(pk.priv));
    CHECK(priv.lambda == pk.priv.lambda);
    CHECK(priv.mu == pk.priv.mu);

    RsaPublicKey rpub = parse_rsa_public(serialize_key(rk.pub));
    CHECK(rpub.n == rk.pub.n);
    CHECK(rpub.e == rk.pub.e);

    RsaKeypair rkp = parse_rsa_keypair(serialize_key(rk));
    CHECK(rkp.d == rk.d);
    CHECK(rkp.pub.n == rk.pub.n);

    CHECK_THROWS_AS(parse_paillier_public("not a key"), ConfigError);
}

TEST_CASE("same seed, same keys; different seed, different keys") {
    Rng a(1234), b(1234), c(4321), d(7);
    CHECK(paillier_keygen(64, a).pub.n == paillier_keygen(64, b).pub.n);
    CHECK(paillier_keygen(64, d).pub.n != paillier_keygen(64, c).pub.n);
}
