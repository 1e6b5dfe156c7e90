#include "netcrypt/codec.hpp"

#include <cstdio>

#include "netcrypt/errors.hpp"

namespace netcrypt {

namespace {

void require_grid_fits(const GridParams& grid, const PaillierPublicKey& pk) {
    if (grid.modulus() >= pk.n)
        throw ProvisionError("grid does not fit the Paillier plaintext space (2^n >= n_P)");
}

void require_outer_match(const OuterCiphertext& c, unsigned party, LayerTag layer,
                         const RsaKeypair& kp) {
    if (c.layer != layer) throw KeyMismatchError("outer ciphertext carries the wrong layer tag");
    if (c.party != party) throw KeyMismatchError("outer ciphertext bound to a different party");
    if (c.rsa_key_id != kp.pub.key_id)
        throw KeyMismatchError("outer ciphertext under a different RSA key");
}

OuterCiphertext wrap(const PaillierCiphertext& inner, unsigned party, LayerTag layer,
                     const RsaPublicKey& pk, GridParams grid) {
    if (inner.value >= pk.n)
        throw OverflowError("inner ciphertext does not fit the outer modulus (needs n_R >= n_P^2)");
    OuterCiphertext out;
    out.value = rsa_encrypt(pk, inner.value);
    out.party = party;
    out.layer = layer;
    out.rsa_key_id = pk.key_id;
    out.paillier_key_id = inner.key_id;
    out.grid = grid;
    return out;
}

PaillierCiphertext unwrap(const OuterCiphertext& c, const RsaKeypair& kp) {
    return {rsa_decrypt(kp, c.value), c.paillier_key_id};
}

}  // namespace

std::vector<DualCiphertext> inner_encrypt(std::span<const FixedPointValue> v,
                                          const PaillierPublicKey& pk, Rng& rng) {
    std::vector<DualCiphertext> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        require_grid_fits(x.grid(), pk);
        if (x.raw() == x.grid().raw_min())
            throw OverflowError("inner_encrypt: most negative grid value has no negation");
        out.push_back({paillier_encrypt(pk, x.to_integer(), rng),
                       paillier_encrypt(pk, (-x).to_integer(), rng), x.grid()});
    }
    return out;
}

std::vector<OuterDual> outer_encrypt(unsigned party, std::span<const DualCiphertext> v,
                                     const RsaPublicKey& pk) {
    std::vector<OuterDual> out;
    out.reserve(v.size());
    for (const auto& d : v)
        out.push_back({wrap(d.plus, party, LayerTag::kToController, pk, d.grid),
                       wrap(d.minus, party, LayerTag::kToController, pk, d.grid)});
    return out;
}

std::vector<DualCiphertext> outer_decrypt(unsigned party, std::span<const OuterDual> c,
                                          const RsaKeypair& kp) {
    std::vector<DualCiphertext> out;
    out.reserve(c.size());
    for (const auto& d : c) {
        require_outer_match(d.plus, party, LayerTag::kToController, kp);
        require_outer_match(d.minus, party, LayerTag::kToController, kp);
        out.push_back({unwrap(d.plus, kp), unwrap(d.minus, kp), d.plus.grid});
    }
    return out;
}

std::vector<OuterCiphertext> entity_encrypt(unsigned party, std::span<const PaillierCiphertext> v,
                                            const RsaPublicKey& pk, GridParams grid) {
    std::vector<OuterCiphertext> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(wrap(c, party, LayerTag::kToEntity, pk, grid));
    return out;
}

FixedPointValue inner_decrypt_one(const PaillierCiphertext& c, const PaillierPrivateKey& sk,
                                  GridParams grid) {
    mpz_class plain = paillier_decrypt(sk, c) % grid.modulus();
    return FixedPointValue::from_integer(plain, grid);
}

std::vector<FixedPointValue> inner_decrypt(std::span<const PaillierCiphertext> c,
                                           const PaillierPrivateKey& sk, GridParams grid) {
    std::vector<FixedPointValue> out;
    out.reserve(c.size());
    for (const auto& x : c) out.push_back(inner_decrypt_one(x, sk, grid));
    return out;
}

std::vector<FixedPointValue> entity_decrypt(unsigned party, std::span<const OuterCiphertext> c,
                                            const RsaKeypair& kp, const PaillierPrivateKey& sk) {
    std::vector<FixedPointValue> out;
    out.reserve(c.size());
    for (const auto& x : c) {
        require_outer_match(x, party, LayerTag::kToEntity, kp);
        out.push_back(inner_decrypt_one(unwrap(x, kp), sk, x.grid));
    }
    return out;
}

std::string wire_encode(const OuterCiphertext& c) {
    std::string hex = c.value.get_str(16);
    char head[16];
    std::snprintf(head, sizeof(head), "%02x%02x%08zx", static_cast<unsigned>(c.layer),
                  c.party & 0xffu, hex.size());
    return std::string(head) + hex;
}

OuterCiphertext wire_decode(const std::string& line) {
    if (line.size() < 12) throw ConfigError("wire_decode: truncated record");
    auto hexval = [&](std::size_t pos, std::size_t len) {
        return std::stoul(line.substr(pos, len), nullptr, 16);
    };
    OuterCiphertext c;
    unsigned long tag = hexval(0, 2);
    if (tag != 1 && tag != 2) throw ConfigError("wire_decode: unknown layer tag");
    c.layer = static_cast<LayerTag>(tag);
    c.party = static_cast<unsigned>(hexval(2, 2));
    std::size_t len = hexval(4, 8);
    if (line.size() != 12 + len) throw ConfigError("wire_decode: length prefix mismatch");
    c.value = mpz_class(line.substr(12), 16);
    return c;
}

}  // namespace netcrypt
