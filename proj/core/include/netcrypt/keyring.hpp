#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "netcrypt/codec.hpp"
#include "netcrypt/crypto.hpp"

namespace netcrypt {

enum class PartyKind { kEntity, kControlUnit };

struct Party {
    PartyKind kind;
    unsigned index;  // 1..N
    auto operator<=>(const Party&) const = default;
};

std::string party_name(Party p);

// A private key's role in the scheme, independent of the concrete material.
struct PrivKeyRef {
    enum class Kind { kPaillier, kRsaController, kRsaEntity };
    Kind kind;
    unsigned index = 0;  // unused for kPaillier
    auto operator<=>(const PrivKeyRef&) const = default;
};

std::string priv_key_name(PrivKeyRef k);

// The secret signals of the security definition, per entity index.
struct SignalRef {
    enum class Kind {
        kWireY,            // **y**_i on the entity->controller network
        kWireV,            // **v**_i on the controller->entity network
        kControllerInnerY, // D_i(**y**_i) inside control unit i
        kControllerV,      // v_i inside control unit i
    };
    Kind kind;
    unsigned index;  // 1..N
    auto operator<=>(const SignalRef&) const = default;
};

std::string signal_name(SignalRef s);

// Which private keys suffice to recover the plaintext of a signal.
std::vector<PrivKeyRef> required_private_keys(SignalRef s);

struct ProvisionParams {
    unsigned paillier_bits = 64;
    unsigned rsa_bits = 256;
    GridParams grid;
    // Lower bound on n_P from the gain row sums; 0 when gains are unknown.
    mpz_class required_np_bound = 0;
};

struct Denial {
    std::vector<std::string> missing;  // names of the absent private keys
};

struct AccessEntry {
    Party party;
    SignalRef signal;
    bool can_recover;
    std::vector<PrivKeyRef> required;
    std::vector<PrivKeyRef> missing;
};

struct Violation {
    Party party;
    SignalRef signal;
    int clause;  // 1 or 2, the security definition's property (i)/(ii)
    auto operator<=>(const Violation&) const = default;
};

struct AccessReport {
    std::vector<AccessEntry> entries;
    std::vector<Violation> violations;
};

// Key distribution: one shared Paillier keypair (private side held by every
// entity), one controller-bound RSA keypair per index (private side held by
// control unit i only), one entity-bound RSA keypair per index (private side
// held by entity i only). Provisioning plays the trusted dealer.
class Keyring {
public:
    static Keyring provision(unsigned N, const ProvisionParams& params, Rng& rng);

    unsigned N() const { return n_; }
    GridParams grid() const { return grid_; }

    const PaillierPublicKey& paillier_public() const { return paillier_.pub; }
    const RsaPublicKey& rsa_controller_public(unsigned i) const { return at(rsa_controller_, i).pub; }
    const RsaPublicKey& rsa_entity_public(unsigned i) const { return at(rsa_entity_, i).pub; }

    // Checked accessors: throw AccessDenied unless `holder` holds the key.
    const PaillierPrivateKey& paillier_private(Party holder) const;
    const RsaKeypair& rsa_controller_keypair(Party holder, unsigned i) const;
    const RsaKeypair& rsa_entity_keypair(Party holder, unsigned i) const;

    bool holds(Party p, PrivKeyRef k) const;

    // Mutation hooks for constructing counterexamples in tests.
    void grant(Party p, PrivKeyRef k) { holdings_[p].insert(k); }
    void revoke(Party p, PrivKeyRef k) { holdings_[p].erase(k); }

    // Succeeds iff the party holds every private key the ciphertext's layer
    // stack requires; the denial names the missing keys.
    std::variant<FixedPointValue, Denial> try_decrypt(Party p, const OuterCiphertext& c) const;
    std::variant<FixedPointValue, Denial> try_decrypt(Party p, const PaillierCiphertext& c,
                                                      GridParams grid) const;

    std::vector<Party> parties() const;

    // Dealer-side access to raw material, used by the simulator's plumbing.
    const PaillierKeypair& paillier() const { return paillier_; }
    const RsaKeypair& rsa_controller(unsigned i) const { return at(rsa_controller_, i); }
    const RsaKeypair& rsa_entity(unsigned i) const { return at(rsa_entity_, i); }

private:
    static const RsaKeypair& at(const std::vector<RsaKeypair>& v, unsigned i);

    unsigned n_ = 0;
    GridParams grid_;
    PaillierKeypair paillier_;
    std::vector<RsaKeypair> rsa_controller_;  // index i-1 <-> E_{R,i}
    std::vector<RsaKeypair> rsa_entity_;      // index i-1 <-> Ebar_{R,i}
    std::map<Party, std::set<PrivKeyRef>> holdings_;
};

// Static access-matrix audit over {**y**_i, **v**_i, D_i(**y**_i), v_i} x
// parties; derived purely from key holdings, no trial decryption.
AccessReport audit(const Keyring& ring);

// Per-party key files: each file carries only that party's held private
// keys (plus the public material everyone has).
std::string export_party_keys(const Keyring& ring, Party p);

struct PartyKeyFile {
    Party party;
    PaillierPublicKey paillier_pub;
    std::optional<PaillierPrivateKey> paillier_priv;
    std::vector<std::pair<unsigned, RsaKeypair>> rsa_controller;
    std::vector<std::pair<unsigned, RsaKeypair>> rsa_entity;
};

PartyKeyFile import_party_keys(const std::string& text);

}  // namespace netcrypt
