#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "netcrypt/keyring.hpp"

using namespace netcrypt;

namespace {

Keyring make_ring(unsigned N, std::uint64_t seed = 77) {
    Rng rng(seed);
    ProvisionParams p;
    p.paillier_bits = 48;
    p.rsa_bits = 128;
    p.grid = GridParams{16, 4};
    return Keyring::provision(N, p, rng);
}

bool has_violation(const AccessReport& r, Party p, SignalRef s, int clause) {
    return std::find(r.violations.begin(), r.violations.end(), Violation{p, s, clause}) !=
           r.violations.end();
}

}  // namespace

TEST_CASE("provisioning follows the intended key distribution") {
    Keyring ring = make_ring(2);
    using K = PrivKeyRef::Kind;
    for (unsigned i = 1; i <= 2; ++i) {
        Party ent{PartyKind::kEntity, i};
        Party cu{PartyKind::kControlUnit, i};
        CHECK(ring.holds(ent, {K::kPaillier, 0}));
        CHECK(ring.holds(ent, {K::kRsaEntity, i}));
        CHECK_FALSE(ring.holds(ent, {K::kRsaController, i}));
        CHECK(ring.holds(cu, {K::kRsaController, i}));
        CHECK_FALSE(ring.holds(cu, {K::kPaillier, 0}));
        CHECK_FALSE(ring.holds(cu, {K::kRsaEntity, i}));
    }
    // entities never hold each other's RSA keys
    CHECK_FALSE(ring.holds({PartyKind::kEntity, 1}, {K::kRsaEntity, 2}));
    CHECK_FALSE(ring.holds({PartyKind::kControlUnit, 1}, {K::kRsaController, 2}));
}

TEST_CASE("provisioning enforces the size rules") {
    Rng rng(1);
    ProvisionParams p;
    p.grid = GridParams{16, 4};

    SUBCASE("Paillier modulus must exceed 2^n") {
        p.paillier_bits = 16;  // n_P < 2^16 is impossible at exactly 16 bits? top bits set -> >= 2^15
        p.rsa_bits = 64;
        CHECK_THROWS_AS(Keyring::provision(1, p, rng), ProvisionError);
    }
    SUBCASE("Paillier modulus must exceed the gain bound") {
        p.paillier_bits = 48;
        p.rsa_bits = 128;
        p.required_np_bound = mpz_class(1) << 60;
        CHECK_THROWS_AS(Keyring::provision(1, p, rng), ProvisionError);
    }
    SUBCASE("RSA modulus must reach n_P^2") {
        p.paillier_bits = 48;
        p.rsa_bits = 64;
        CHECK_THROWS_AS(Keyring::provision(1, p, rng), ProvisionError);
    }
}

TEST_CASE("checked accessors throw AccessDenied with the missing key named") {
    Keyring ring = make_ring(1);
    Party cu{PartyKind::kControlUnit, 1};
    Party ent{PartyKind::kEntity, 1};

    CHECK_THROWS_AS(ring.paillier_private(cu), AccessDenied);
    CHECK_THROWS_AS(ring.rsa_entity_keypair(cu, 1), AccessDenied);
    CHECK_THROWS_AS(ring.rsa_controller_keypair(ent, 1), AccessDenied);
    CHECK(&ring.paillier_private(ent) == &ring.paillier().priv);

    try {
        ring.rsa_entity_keypair(cu, 1);
        FAIL("expected AccessDenied");
    } catch (const AccessDenied& e) {
        CHECK(e.missing_key == "rsa_entity_1_private");
    }
}

TEST_CASE("try_decrypt honors key possession across the layer stack") {
    Keyring ring = make_ring(2);
    Rng rng(9);
    GridParams grid = ring.grid();
    auto v = FixedPointValue::from_raw(-37, grid);

    std::vector<FixedPointValue> vec{v};
    auto duals = inner_encrypt(vec, ring.paillier_public(), rng);
    auto wire_y = outer_encrypt(1, duals, ring.rsa_controller_public(1));
    std::vector<PaillierCiphertext> inner{duals[0].plus};
    auto wire_v = entity_encrypt(1, inner, ring.rsa_entity_public(1), grid);

    Party e1{PartyKind::kEntity, 1}, e2{PartyKind::kEntity, 2};
    Party c1{PartyKind::kControlUnit, 1};

    // wire to the controller: nobody in the default distribution can open it
    // alone (the control unit lacks Paillier, the entities lack the RSA key)
    CHECK(std::holds_alternative<Denial>(ring.try_decrypt(c1, wire_y[0].plus)));
    CHECK(std::holds_alternative<Denial>(ring.try_decrypt(e1, wire_y[0].plus)));

    // wire back to entity 1: only entity 1
    CHECK(std::get<FixedPointValue>(ring.try_decrypt(e1, wire_v[0])) == v);
    auto denied = ring.try_decrypt(e2, wire_v[0]);
    REQUIRE(std::holds_alternative<Denial>(denied));
    CHECK(std::get<Denial>(denied).missing ==
          std::vector<std::string>{"rsa_entity_1_private"});

    // bare inner ciphertext: any Paillier holder
    CHECK(std::get<FixedPointValue>(ring.try_decrypt(e2, duals[0].plus, grid)) == v);
    CHECK(std::holds_alternative<Denial>(ring.try_decrypt(c1, duals[0].plus, grid)));
}

TEST_CASE("audit is clean under the intended distribution") {
    for (unsigned N : {1u, 2u, 3u}) {
        Keyring ring = make_ring(N, 100 + N);
        AccessReport r = audit(ring);
        CHECK(r.violations.empty());
        CHECK(r.entries.size() == 2 * N * 4 * N);  // parties x signals
    }
}

TEST_CASE("audit flags a control unit that obtains the Paillier key") {
    Keyring ring = make_ring(2);
    Party c1{PartyKind::kControlUnit, 1};
    ring.grant(c1, {PrivKeyRef::Kind::kPaillier, 0});
    AccessReport r = audit(ring);

    // it can now read the inner signals of every entity (clause 2) and,
    // holding its own RSA key, the wire y_1 as well (clause 1)
    for (unsigned i = 1; i <= 2; ++i) {
        CHECK(has_violation(r, c1, {SignalRef::Kind::kControllerInnerY, i}, 2));
        CHECK(has_violation(r, c1, {SignalRef::Kind::kControllerV, i}, 2));
    }
    CHECK(has_violation(r, c1, {SignalRef::Kind::kWireY, 1}, 1));
    CHECK_FALSE(has_violation(r, c1, {SignalRef::Kind::kWireY, 2}, 1));
}

TEST_CASE("audit flags an entity that obtains another entity's RSA key") {
    Keyring ring = make_ring(2);
    Party e2{PartyKind::kEntity, 2};
    ring.grant(e2, {PrivKeyRef::Kind::kRsaEntity, 1});
    AccessReport r = audit(ring);
    CHECK(r.violations.size() == 1);
    CHECK(has_violation(r, e2, {SignalRef::Kind::kWireV, 1}, 1));

    SUBCASE("revoking restores a clean audit") {
        ring.revoke(e2, {PrivKeyRef::Kind::kRsaEntity, 1});
        CHECK(audit(ring).violations.empty());
    }
}

TEST_CASE("party key files round-trip and carry only held material") {
    Keyring ring = make_ring(2);
    Party e1{PartyKind::kEntity, 1};
    Party c2{PartyKind::kControlUnit, 2};

    PartyKeyFile ef = import_party_keys(export_party_keys(ring, e1));
    CHECK(ef.party == e1);
    CHECK(ef.paillier_pub.n == ring.paillier_public().n);
    REQUIRE(ef.paillier_priv.has_value());
    CHECK(ef.paillier_priv->lambda == ring.paillier().priv.lambda);
    REQUIRE(ef.rsa_entity.size() == 1);
    CHECK(ef.rsa_entity[0].first == 1);
    CHECK(ef.rsa_controller.empty());

    PartyKeyFile cf = import_party_keys(export_party_keys(ring, c2));
    CHECK_FALSE(cf.paillier_priv.has_value());
    REQUIRE(cf.rsa_controller.size() == 1);
    CHECK(cf.rsa_controller[0].first == 2);
    CHECK(cf.rsa_controller[0].second.pub.n == ring.rsa_controller_public(2).n);
    CHECK(cf.rsa_entity.empty());
}
