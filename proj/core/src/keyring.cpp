#include "netcrypt/keyring.hpp"

#include <nlohmann/json.hpp>

#include "netcrypt/errors.hpp"

namespace netcrypt {

using nlohmann::json;

std::string party_name(Party p) {
    return (p.kind == PartyKind::kEntity ? "entity_" : "control_unit_") + std::to_string(p.index);
}

std::string priv_key_name(PrivKeyRef k) {
    switch (k.kind) {
        case PrivKeyRef::Kind::kPaillier:
            return "paillier_private";
        case PrivKeyRef::Kind::kRsaController:
            return "rsa_controller_" + std::to_string(k.index) + "_private";
        case PrivKeyRef::Kind::kRsaEntity:
            return "rsa_entity_" + std::to_string(k.index) + "_private";
    }
    return "?";
}

std::string signal_name(SignalRef s) {
    switch (s.kind) {
        case SignalRef::Kind::kWireY:
            return "wire_y_" + std::to_string(s.index);
        case SignalRef::Kind::kWireV:
            return "wire_v_" + std::to_string(s.index);
        case SignalRef::Kind::kControllerInnerY:
            return "inner_y_" + std::to_string(s.index);
        case SignalRef::Kind::kControllerV:
            return "controller_v_" + std::to_string(s.index);
    }
    return "?";
}

std::vector<PrivKeyRef> required_private_keys(SignalRef s) {
    using K = PrivKeyRef::Kind;
    switch (s.kind) {
        case SignalRef::Kind::kWireY:
            return {{K::kRsaController, s.index}, {K::kPaillier, 0}};
        case SignalRef::Kind::kWireV:
            return {{K::kRsaEntity, s.index}, {K::kPaillier, 0}};
        case SignalRef::Kind::kControllerInnerY:
        case SignalRef::Kind::kControllerV:
            return {{K::kPaillier, 0}};
    }
    return {};
}

const RsaKeypair& Keyring::at(const std::vector<RsaKeypair>& v, unsigned i) {
    if (i < 1 || i > v.size()) throw Error("keyring: party index out of range");
    return v[i - 1];
}

Keyring Keyring::provision(unsigned N, const ProvisionParams& params, Rng& rng) {
    if (N < 1) throw ProvisionError("provision: N must be at least 1");
    params.grid.validate();

    Keyring ring;
    ring.n_ = N;
    ring.grid_ = params.grid;
    ring.paillier_ = paillier_keygen(params.paillier_bits, rng);

    const mpz_class& np = ring.paillier_.pub.n;
    if (np <= params.grid.modulus())
        throw ProvisionError("provision: Paillier modulus must exceed 2^n");
    if (params.required_np_bound > 0 && np <= params.required_np_bound)
        throw ProvisionError(
            "provision: Paillier modulus below the gain-row-sum bound; required n_P > " +
            params.required_np_bound.get_str());

    mpz_class np2 = np * np;
    for (unsigned i = 1; i <= N; ++i) {
        RsaKeypair ctrl = rsa_keygen(params.rsa_bits, rng);
        RsaKeypair ent = rsa_keygen(params.rsa_bits, rng);
        if (ctrl.pub.n < np2 || ent.pub.n < np2)
            throw ProvisionError("provision: RSA modulus below n_P^2");
        ring.rsa_controller_.push_back(std::move(ctrl));
        ring.rsa_entity_.push_back(std::move(ent));
    }

    using K = PrivKeyRef::Kind;
    for (unsigned i = 1; i <= N; ++i) {
        Party ent{PartyKind::kEntity, i};
        ring.holdings_[ent] = {{K::kPaillier, 0}, {K::kRsaEntity, i}};
        Party cu{PartyKind::kControlUnit, i};
        ring.holdings_[cu] = {{K::kRsaController, i}};
    }
    return ring;
}

bool Keyring::holds(Party p, PrivKeyRef k) const {
    auto it = holdings_.find(p);
    return it != holdings_.end() && it->second.count(k) > 0;
}

const PaillierPrivateKey& Keyring::paillier_private(Party holder) const {
    if (!holds(holder, {PrivKeyRef::Kind::kPaillier, 0}))
        throw AccessDenied(party_name(holder) + " does not hold the Paillier private key",
                           "paillier_private");
    return paillier_.priv;
}

const RsaKeypair& Keyring::rsa_controller_keypair(Party holder, unsigned i) const {
    PrivKeyRef k{PrivKeyRef::Kind::kRsaController, i};
    if (!holds(holder, k))
        throw AccessDenied(party_name(holder) + " does not hold " + priv_key_name(k),
                           priv_key_name(k));
    return at(rsa_controller_, i);
}

const RsaKeypair& Keyring::rsa_entity_keypair(Party holder, unsigned i) const {
    PrivKeyRef k{PrivKeyRef::Kind::kRsaEntity, i};
    if (!holds(holder, k))
        throw AccessDenied(party_name(holder) + " does not hold " + priv_key_name(k),
                           priv_key_name(k));
    return at(rsa_entity_, i);
}

std::vector<Party> Keyring::parties() const {
    std::vector<Party> out;
    for (unsigned i = 1; i <= n_; ++i) out.push_back({PartyKind::kEntity, i});
    for (unsigned i = 1; i <= n_; ++i) out.push_back({PartyKind::kControlUnit, i});
    return out;
}

std::variant<FixedPointValue, Denial> Keyring::try_decrypt(Party p,
                                                           const OuterCiphertext& c) const {
    const bool to_controller = c.layer == LayerTag::kToController;
    PrivKeyRef outer_key{to_controller ? PrivKeyRef::Kind::kRsaController
                                       : PrivKeyRef::Kind::kRsaEntity,
                         c.party};
    Denial denial;
    if (!holds(p, outer_key)) denial.missing.push_back(priv_key_name(outer_key));
    if (!holds(p, {PrivKeyRef::Kind::kPaillier, 0}))
        denial.missing.push_back(priv_key_name({PrivKeyRef::Kind::kPaillier, 0}));
    if (!denial.missing.empty()) return denial;

    const RsaKeypair& kp =
        to_controller ? at(rsa_controller_, c.party) : at(rsa_entity_, c.party);
    PaillierCiphertext inner{rsa_decrypt(kp, c.value), c.paillier_key_id};
    return inner_decrypt_one(inner, paillier_.priv, c.grid);
}

std::variant<FixedPointValue, Denial> Keyring::try_decrypt(Party p, const PaillierCiphertext& c,
                                                           GridParams grid) const {
    if (!holds(p, {PrivKeyRef::Kind::kPaillier, 0}))
        return Denial{{priv_key_name({PrivKeyRef::Kind::kPaillier, 0})}};
    return inner_decrypt_one(c, paillier_.priv, grid);
}

AccessReport audit(const Keyring& ring) {
    AccessReport report;
    std::vector<SignalRef> signals;
    for (unsigned i = 1; i <= ring.N(); ++i)
        for (auto kind : {SignalRef::Kind::kWireY, SignalRef::Kind::kWireV,
                          SignalRef::Kind::kControllerInnerY, SignalRef::Kind::kControllerV})
            signals.push_back({kind, i});

    for (Party p : ring.parties()) {
        for (SignalRef s : signals) {
            AccessEntry entry{p, s, true, required_private_keys(s), {}};
            for (PrivKeyRef k : entry.required)
                if (!ring.holds(p, k)) entry.missing.push_back(k);
            entry.can_recover = entry.missing.empty();

            if (entry.can_recover) {
                const bool wire =
                    s.kind == SignalRef::Kind::kWireY || s.kind == SignalRef::Kind::kWireV;
                if (wire && !(p.kind == PartyKind::kEntity && p.index == s.index))
                    report.violations.push_back({p, s, 1});
                if (!wire && p.kind == PartyKind::kControlUnit)
                    report.violations.push_back({p, s, 2});
            }
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

std::string export_party_keys(const Keyring& ring, Party p) {
    json j;
    j["version"] = 1;
    j["party"] = {{"kind", p.kind == PartyKind::kEntity ? "entity" : "control_unit"},
                  {"index", p.index}};
    j["paillier_public"] = json::parse(serialize_key(ring.paillier_public()));
    json held = json::array();
    if (ring.holds(p, {PrivKeyRef::Kind::kPaillier, 0}))
        held.push_back(json::parse(serialize_key(ring.paillier().priv)));
    for (unsigned i = 1; i <= ring.N(); ++i) {
        if (ring.holds(p, {PrivKeyRef::Kind::kRsaController, i})) {
            json k = json::parse(serialize_key(ring.rsa_controller(i)));
            k["index"] = i;
            k["role"] = "controller";
            held.push_back(std::move(k));
        }
        if (ring.holds(p, {PrivKeyRef::Kind::kRsaEntity, i})) {
            json k = json::parse(serialize_key(ring.rsa_entity(i)));
            k["index"] = i;
            k["role"] = "entity";
            held.push_back(std::move(k));
        }
    }
    j["held_private_keys"] = std::move(held);
    return j.dump(2) + "\n";
}

PartyKeyFile import_party_keys(const std::string& text) {
    json j = json::parse(text);
    if (j.value("version", 0) != 1) throw ConfigError("unsupported party key file version");
    PartyKeyFile out;
    std::string kind = j.at("party").at("kind");
    out.party = {kind == "entity" ? PartyKind::kEntity : PartyKind::kControlUnit,
                 j.at("party").at("index").get<unsigned>()};
    out.paillier_pub = parse_paillier_public(j.at("paillier_public").dump());
    for (const auto& k : j.at("held_private_keys")) {
        if (k.at("kind") == "paillier-private") {
            out.paillier_priv = parse_paillier_private(k.dump());
        } else {
            auto kp = parse_rsa_keypair(k.dump());
            unsigned idx = k.at("index");
            if (k.at("role") == "controller")
                out.rsa_controller.emplace_back(idx, std::move(kp));
            else
                out.rsa_entity.emplace_back(idx, std::move(kp));
        }
    }
    return out;
}

}  // namespace netcrypt
